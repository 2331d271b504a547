//! Odd-type Selberg zeta functions, eta invariants and Zograf's factorization
//! function for Schottky hyperbolic 3-manifolds.
//!
//! The crate is organised bottom-up:
//!
//! * [`moebius`]: SL(2,ℂ) algebra, geodesic invariants, half-space distance.
//! * [`words`]: free-group words, conjugacy classes, Poincaré exponent.
//! * [`kernels`]: ₂F₁, Γ ratios and the explicit ℍ^{d+1} kernel formulas.
//! * [`transport`]: Clifford algebra and closed-form parallel transport.
//! * [`zeta`]: truncated zeta sums, the odd heat trace and three eta routes.
//! * [`zograf`]: Zograf's F(Γ), the η/arg F identity and pluriharmonicity scans.
//!
//! Discreteness of the input group is trusted: no check is made that the
//! generators actually satisfy a Schottky (Jordan curve) configuration.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod kernels;
pub mod moebius;
pub mod quadrature;
pub mod summation;
pub mod transport;
pub mod words;
pub mod zeta;
pub mod zograf;

pub use error::{Error, Result};
pub use moebius::{Classification, GeodesicInvariants, HalfSpacePoint, MoebiusMap, SpherePoint};
pub use words::{ClassRecord, ClassTable, ConjugacyClass, GroupWord, PoincareEstimate};
pub use zeta::{ClassTerm, EtaEstimate, EtaRoute, TermSet, Variant, ZetaEvaluation};
pub use zograf::{IdentityCheck, PluriharmonicityReport, SchottkyPoint};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
