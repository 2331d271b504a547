//! SL(2,ℂ) Möbius maps: classification, fixed points, multipliers and the
//! half-space distance.
//!
//! Matrices are kept in SL(2,ℂ) rather than PSL(2,ℂ): `M` and `-M` are
//! distinct values. Everything projective (fixed points, `q`, `ℓ`, `θ`) is
//! blind to the sign, while [`MoebiusMap::spin_phase`] is not, which is how
//! a spin structure on the quotient enters.

use std::fmt;
use std::ops::{Mul, Neg};

use serde::{Deserialize, Serialize};

use crate::{Error, Result, C64};

/// Tolerance on `|ad - bc - 1|`.
pub const DET_TOLERANCE: f64 = 1e-12;
/// Default tolerance used by [`MoebiusMap::classify`] around `tr² = 4`.
pub const CLASSIFY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MoebiusMap {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Identity,
    Parabolic,
    Elliptic,
    Loxodromic,
}

/// A point of the Riemann sphere ℂ ∪ {∞}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SpherePoint {
    Finite(C64),
    Infinity,
}

impl SpherePoint {
    /// Chordal distance on the unit sphere, ∞ included.
    pub fn chordal_distance(&self, other: &SpherePoint) -> f64 {
        match (self, other) {
            (SpherePoint::Infinity, SpherePoint::Infinity) => 0.0,
            (SpherePoint::Finite(z), SpherePoint::Infinity) | (SpherePoint::Infinity, SpherePoint::Finite(z)) => {
                2.0 / (1.0 + z.norm_sqr()).sqrt()
            }
            (SpherePoint::Finite(z), SpherePoint::Finite(w)) => {
                2.0 * (z - w).norm() / ((1.0 + z.norm_sqr()).sqrt() * (1.0 + w.norm_sqr()).sqrt())
            }
        }
    }

    pub fn finite(&self) -> Option<C64> {
        match self {
            SpherePoint::Finite(z) => Some(*z),
            SpherePoint::Infinity => None,
        }
    }
}

impl fmt::Display for SpherePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpherePoint::Finite(z) => write!(f, "{z}"),
            SpherePoint::Infinity => write!(f, "∞"),
        }
    }
}

/// Per-element data entering every zeta and eta sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeodesicInvariants {
    /// Translation length `ℓ = -log|q|`.
    pub length: f64,
    /// Holonomy angle in `(-π, π]`, with `q = exp(-(ℓ + iθ))`.
    pub holonomy: f64,
    /// Multiplier at the attracting fixed point, `0 < |q| < 1`.
    pub multiplier: C64,
    /// Eigenvalue with `|μ| > 1`, sign inherited from the SL(2,ℂ) lift.
    pub mu: C64,
    pub attracting: SpherePoint,
    pub repelling: SpherePoint,
}

impl GeodesicInvariants {
    pub fn spin_phase(&self) -> C64 {
        self.mu / self.mu.norm()
    }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

impl MoebiusMap {
    /// Builds a map and checks the unit-determinant invariant.
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Result<Self> {
        let m = Self { a, b, c, d };
        let drift = (m.det() - 1.0).norm();
        if drift < DET_TOLERANCE {
            Ok(m)
        } else {
            Err(Error::InvalidInput(format!("determinant deviates from 1 by {drift:e}")))
        }
    }

    /// Divides by the principal square root of the determinant.
    pub fn from_unnormalized(a: C64, b: C64, c: C64, d: C64) -> Result<Self> {
        let det = a * d - b * c;
        if det.norm() == 0.0 || !det.is_finite() {
            return Err(Error::InvalidInput("singular matrix".into()));
        }
        let s = det.sqrt();
        Ok(Self { a: a / s, b: b / s, c: c / s, d: d / s })
    }

    pub fn identity() -> Self {
        Self { a: c(1.0, 0.0), b: c(0.0, 0.0), c: c(0.0, 0.0), d: c(1.0, 0.0) }
    }

    pub fn diagonal(mu: C64) -> Self {
        Self { a: mu, b: c(0.0, 0.0), c: c(0.0, 0.0), d: mu.inv() }
    }

    /// The loxodromic map with the given attracting/repelling fixed points
    /// whose larger eigenvalue is `mu` (`|mu| > 1`).
    pub fn from_fixed_points(attracting: SpherePoint, repelling: SpherePoint, mu: C64) -> Result<Self> {
        if mu.norm() <= 1.0 {
            return Err(Error::InvalidInput("|mu| must exceed 1".into()));
        }
        if attracting.chordal_distance(&repelling) < 1e-12 {
            return Err(Error::DegenerateConfiguration("coincident fixed points".into()));
        }
        let one = c(1.0, 0.0);
        let zero = c(0.0, 0.0);
        // frame sending 0 -> attracting, ∞ -> repelling
        let (ta, tb, tc, td) = match (attracting, repelling) {
            (SpherePoint::Finite(p), SpherePoint::Finite(r)) => (r, p, one, one),
            (SpherePoint::Finite(p), SpherePoint::Infinity) => (one, p, zero, one),
            (SpherePoint::Infinity, SpherePoint::Finite(r)) => (r, one, one, zero),
            (SpherePoint::Infinity, SpherePoint::Infinity) => unreachable!(),
        };
        let frame = Self::from_unnormalized(ta, tb, tc, td)?;
        // diag(1/μ, μ) attracts to 0 with eigenvalue μ there
        let core = Self { a: mu.inv(), b: zero, c: zero, d: mu };
        Ok((frame * core * frame.inverse()).renormalized())
    }

    pub fn det(&self) -> C64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> C64 {
        self.a + self.d
    }

    /// Inverse in SL(2,ℂ) (adjugate, no division).
    pub fn inverse(&self) -> Self {
        Self { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// Rescales by `1/sqrt(det)` with the principal root; a no-op on the
    /// sign when the determinant has only drifted slightly from 1.
    pub fn renormalized(&self) -> Self {
        let s = self.det().sqrt();
        Self { a: self.a / s, b: self.b / s, c: self.c / s, d: self.d / s }
    }

    /// Rescales by `1/sqrt(det)` only when the determinant drift exceeds the
    /// rounding noise of `ad - bc` itself.
    ///
    /// For long products the entries grow like `e^{ℓ/2}` and the computed
    /// determinant carries an absolute error of order `|ad|·ε`; dividing by
    /// it would inject that error into every entry.
    pub fn repair_determinant(&self) -> Self {
        let scale = (self.a * self.d).norm() + (self.b * self.c).norm();
        let drift = (self.det() - 1.0).norm();
        if drift > 1e3 * f64::EPSILON * scale.max(1.0) {
            self.renormalized()
        } else {
            *self
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity();
        for _ in 0..k {
            acc = acc * *self;
        }
        acc.repair_determinant()
    }

    pub fn conjugate_by(&self, g: &MoebiusMap) -> Self {
        (*g * *self * g.inverse()).repair_determinant()
    }

    pub fn max_abs_diff(&self, other: &MoebiusMap) -> f64 {
        [(self.a - other.a), (self.b - other.b), (self.c - other.c), (self.d - other.d)]
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite() && self.d.is_finite()
    }

    pub fn classify(&self) -> Classification {
        self.classify_with(CLASSIFY_TOLERANCE)
    }

    /// Classification by `tr²`; `eps` decides how close to 4 counts as 4.
    pub fn classify_with(&self, eps: f64) -> Classification {
        let id = Self::identity();
        if self.max_abs_diff(&id) <= eps || self.max_abs_diff(&-id) <= eps {
            return Classification::Identity;
        }
        let t2 = self.trace() * self.trace();
        if (t2 - 4.0).norm() <= eps {
            Classification::Parabolic
        } else if t2.im.abs() <= eps && t2.re >= -eps && t2.re < 4.0 {
            Classification::Elliptic
        } else {
            Classification::Loxodromic
        }
    }

    /// Eigenvalue of modulus > 1 (sign-sensitive).
    fn expanding_eigenvalue(&self) -> C64 {
        let tr = self.trace();
        let disc = (tr * tr - 4.0).sqrt();
        let plus = tr + disc;
        let minus = tr - disc;
        if plus.norm() >= minus.norm() {
            plus * 0.5
        } else {
            minus * 0.5
        }
    }

    fn fixed_point_for(&self, eigenvalue: C64) -> SpherePoint {
        // two eigenvector candidates (b, λ-a) and (λ-d, c); keep the larger
        let v1 = (self.b, eigenvalue - self.a);
        let v2 = (eigenvalue - self.d, self.c);
        let n1 = v1.0.norm() + v1.1.norm();
        let n2 = v2.0.norm() + v2.1.norm();
        let (num, den) = if n1 >= n2 { v1 } else { v2 };
        if den.norm() == 0.0 {
            SpherePoint::Infinity
        } else {
            SpherePoint::Finite(num / den)
        }
    }

    pub fn geodesic_invariants(&self) -> Result<GeodesicInvariants> {
        self.geodesic_invariants_with(CLASSIFY_TOLERANCE)
    }

    pub fn geodesic_invariants_with(&self, eps: f64) -> Result<GeodesicInvariants> {
        if self.classify_with(eps) != Classification::Loxodromic {
            return Err(Error::NotLoxodromic);
        }
        let mu = self.expanding_eigenvalue();
        let mu2 = mu * mu;
        let q = mu2.inv();
        let length = 2.0 * mu.norm().ln();
        let mut holonomy = mu2.arg();
        if holonomy <= -std::f64::consts::PI {
            holonomy += 2.0 * std::f64::consts::PI;
        }
        Ok(GeodesicInvariants {
            length,
            holonomy,
            multiplier: q,
            mu,
            attracting: self.fixed_point_for(mu),
            repelling: self.fixed_point_for(mu.inv()),
        })
    }

    /// `μ/|μ|` for the expanding eigenvalue; flips sign with the matrix.
    pub fn spin_phase(&self) -> Result<C64> {
        Ok(self.geodesic_invariants()?.spin_phase())
    }

    pub fn apply(&self, z: SpherePoint) -> SpherePoint {
        match z {
            SpherePoint::Infinity => {
                if self.c.norm() == 0.0 {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::Finite(self.a / self.c)
                }
            }
            SpherePoint::Finite(z) => {
                let den = self.c * z + self.d;
                if den.norm() == 0.0 {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::Finite((self.a * z + self.b) / den)
                }
            }
        }
    }

    /// Poincaré extension to the upper half-space ℍ³ (boundary dimension 2).
    pub fn apply_half_space(&self, p: &HalfSpacePoint) -> Result<HalfSpacePoint> {
        if p.y.len() != 2 {
            return Err(Error::InvalidInput("SL(2,C) acts on the half-space with 2 boundary coordinates".into()));
        }
        let w = C64::new(p.y[0], p.y[1]);
        let x2 = p.x * p.x;
        let cwd = self.c * w + self.d;
        let den = cwd.norm_sqr() + self.c.norm_sqr() * x2;
        let w_new = ((self.a * w + self.b) * cwd.conj() + self.a * self.c.conj() * x2) / den;
        Ok(HalfSpacePoint { x: p.x / den, y: vec![w_new.re, w_new.im] })
    }
}

impl Mul for MoebiusMap {
    type Output = MoebiusMap;
    fn mul(self, o: MoebiusMap) -> MoebiusMap {
        MoebiusMap {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }
}

impl Neg for MoebiusMap {
    type Output = MoebiusMap;
    fn neg(self) -> MoebiusMap {
        MoebiusMap { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }
}

/// Point of the upper half-space `{(x, y) : x > 0, y ∈ ℝ^d}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HalfSpacePoint {
    pub x: f64,
    pub y: Vec<f64>,
}

impl HalfSpacePoint {
    pub fn new(x: f64, y: Vec<f64>) -> Self {
        Self { x, y }
    }

    /// `(1, 0)` in `ℍ^{d+1}`.
    pub fn origin(d: usize) -> Self {
        Self { x: 1.0, y: vec![0.0; d] }
    }

    pub fn dim(&self) -> usize {
        self.y.len()
    }

    pub fn boundary_distance_sq(&self, other: &HalfSpacePoint) -> f64 {
        self.y.iter().zip(&other.y).map(|(u, v)| (u - v) * (u - v)).sum()
    }
}

/// Hyperbolic distance in the half-space model,
/// `cosh²(d/2) = (|y-y'|² + (x+x')²) / (4xx')`.
///
/// Evaluated through the equivalent `sinh²(d/2) = (|y-y'|² + (x-x')²)/(4xx')`,
/// which keeps full precision for nearby points.
pub fn hyperbolic_distance(m: &HalfSpacePoint, m2: &HalfSpacePoint) -> Result<f64> {
    if !(m.x > 0.0) {
        return Err(Error::BoundaryPoint(m.x));
    }
    if !(m2.x > 0.0) {
        return Err(Error::BoundaryPoint(m2.x));
    }
    if m.dim() != m2.dim() {
        return Err(Error::InvalidInput("points of different dimension".into()));
    }
    let dy2 = m.boundary_distance_sq(m2);
    let dx = m.x - m2.x;
    let s2 = (dy2 + dx * dx) / (4.0 * m.x * m2.x);
    Ok(2.0 * s2.sqrt().asinh())
}

/// Conjugates all generators so that the first has attracting point 0 and
/// repelling point ∞, and the second has attracting point 1.
pub fn normalize_schottky(generators: &[MoebiusMap]) -> Result<Vec<MoebiusMap>> {
    if generators.len() < 2 {
        return Err(Error::DegenerateConfiguration("normalization needs at least two generators".into()));
    }
    let g1 = generators[0].geodesic_invariants()?;
    let g2 = generators[1].geodesic_invariants()?;
    for g in &generators[2..] {
        g.geodesic_invariants()?;
    }
    let (a1, b1, a2) = (g1.attracting, g1.repelling, g2.attracting);
    let min_sep = a1.chordal_distance(&b1).min(a1.chordal_distance(&a2)).min(b1.chordal_distance(&a2));
    if min_sep < 1e-10 {
        return Err(Error::DegenerateConfiguration("anchor fixed points are not distinct".into()));
    }
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let t = match (a1, b1, a2) {
        (SpherePoint::Finite(a1), SpherePoint::Infinity, SpherePoint::Finite(a2)) => {
            MoebiusMap::from_unnormalized(one, -a1, zero, a2 - a1)?
        }
        (SpherePoint::Infinity, SpherePoint::Finite(b1), SpherePoint::Finite(a2)) => {
            MoebiusMap::from_unnormalized(zero, a2 - b1, one, -b1)?
        }
        (SpherePoint::Finite(a1), SpherePoint::Finite(b1), SpherePoint::Infinity) => {
            MoebiusMap::from_unnormalized(one, -a1, one, -b1)?
        }
        (SpherePoint::Finite(a1), SpherePoint::Finite(b1), SpherePoint::Finite(a2)) => {
            let k = a2 - b1;
            let l = a2 - a1;
            MoebiusMap::from_unnormalized(k, -a1 * k, l, -b1 * l)?
        }
        _ => unreachable!("distinct anchors contain at most one ∞"),
    };
    Ok(generators.iter().map(|g| g.conjugate_by(&t)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{LN_2, PI};

    fn r(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn diag(a: C64, d: C64) -> MoebiusMap {
        MoebiusMap::new(a, r(0.0), r(0.0), d).unwrap()
    }

    #[test]
    fn classification_examples() {
        assert_eq!(MoebiusMap::identity().classify(), Classification::Identity);
        assert_eq!((-MoebiusMap::identity()).classify(), Classification::Identity);
        assert_eq!(diag(r(2.0), r(0.5)).classify(), Classification::Loxodromic);
        let para = MoebiusMap::new(r(1.0), r(1.0), r(0.0), r(1.0)).unwrap();
        assert_eq!(para.classify(), Classification::Parabolic);
        let rot = diag(C64::from_polar(1.0, 0.3), C64::from_polar(1.0, -0.3));
        assert_eq!(rot.classify(), Classification::Elliptic);
    }

    #[test]
    fn invariants_of_real_dilation() {
        let inv = diag(r(2.0), r(0.5)).geodesic_invariants().unwrap();
        assert!((inv.length - 2.0 * LN_2).abs() < 1e-15);
        assert_eq!(inv.holonomy, 0.0);
        assert!((inv.multiplier - r(0.25)).norm() < 1e-15);
        assert_eq!(inv.attracting, SpherePoint::Infinity);
        assert_eq!(inv.repelling, SpherePoint::Finite(r(0.0)));
    }

    #[test]
    fn invariants_with_half_turn() {
        let m = diag(C64::new(0.0, 2.0), C64::new(0.0, -0.5));
        let inv = m.geodesic_invariants().unwrap();
        assert!((inv.length - 2.0 * LN_2).abs() < 1e-15);
        assert!((inv.holonomy - PI).abs() < 1e-15);
        assert!((inv.multiplier - r(-0.25)).norm() < 1e-15);
    }

    #[test]
    fn sign_flip_changes_only_spin_phase() {
        let m = diag(r(2.0), r(0.5));
        let a = m.geodesic_invariants().unwrap();
        let b = (-m).geodesic_invariants().unwrap();
        assert_eq!(a.multiplier, b.multiplier);
        assert_eq!(a.length, b.length);
        assert_eq!(a.holonomy, b.holonomy);
        assert_eq!(m.spin_phase().unwrap(), -(-m).spin_phase().unwrap());
    }

    #[test]
    fn parabolic_has_no_invariants() {
        let para = MoebiusMap::new(r(1.0), r(1.0), r(0.0), r(1.0)).unwrap();
        assert_eq!(para.geodesic_invariants(), Err(Error::NotLoxodromic));
    }

    #[test]
    fn distance_examples() {
        let o = HalfSpacePoint::origin(2);
        assert_eq!(hyperbolic_distance(&o, &o).unwrap(), 0.0);
        let up = HalfSpacePoint::new(2.0, vec![0.0, 0.0]);
        assert!((hyperbolic_distance(&o, &up).unwrap() - LN_2).abs() < 1e-15);
        let side = HalfSpacePoint::new(1.0, vec![1.0, 0.0]);
        let expected = 2.0 * (1.25f64).sqrt().acosh();
        assert!((hyperbolic_distance(&side, &o).unwrap() - expected).abs() < 1e-14);
        let bad = HalfSpacePoint::new(0.0, vec![0.0, 0.0]);
        assert_eq!(hyperbolic_distance(&bad, &o), Err(Error::BoundaryPoint(0.0)));
    }

    #[test]
    fn distance_in_other_dimensions() {
        let a = HalfSpacePoint::new(0.5, vec![0.1, 0.2, -0.3, 0.4]);
        let b = HalfSpacePoint::new(1.5, vec![-0.1, 0.0, 0.3, 0.0]);
        let dy2: f64 = 0.04 + 0.04 + 0.36 + 0.16;
        let direct = 2.0 * ((dy2 + 4.0) / 3.0).sqrt().acosh();
        assert!((hyperbolic_distance(&a, &b).unwrap() - direct).abs() < 1e-13);
    }

    fn normalized_pair() -> Vec<MoebiusMap> {
        let g1 = MoebiusMap::from_fixed_points(SpherePoint::Finite(r(0.0)), SpherePoint::Infinity, C64::new(30.0, 5.0)).unwrap();
        let g2 = MoebiusMap::from_fixed_points(SpherePoint::Finite(r(1.0)), SpherePoint::Finite(C64::new(3.0, 1.0)), C64::new(25.0, -3.0))
            .unwrap();
        vec![g1, g2]
    }

    #[test]
    fn from_fixed_points_round_trip() {
        let g = normalized_pair();
        let inv = g[1].geodesic_invariants().unwrap();
        assert!(inv.attracting.chordal_distance(&SpherePoint::Finite(r(1.0))) < 1e-13);
        assert!(inv.repelling.chordal_distance(&SpherePoint::Finite(C64::new(3.0, 1.0))) < 1e-13);
        assert!((inv.mu - C64::new(25.0, -3.0)).norm() < 1e-11, "{}", inv.mu);
    }

    #[test]
    fn normalization_is_idempotent() {
        let g = normalized_pair();
        let n = normalize_schottky(&g).unwrap();
        for (x, y) in g.iter().zip(&n) {
            assert!(x.max_abs_diff(y) < 1e-11, "{x:?} vs {y:?}");
        }
    }

    #[test]
    fn normalization_undoes_translation() {
        let g = normalized_pair();
        let shift = MoebiusMap::new(r(1.0), r(5.0), r(0.0), r(1.0)).unwrap();
        let moved: Vec<_> = g.iter().map(|x| x.conjugate_by(&shift)).collect();
        let back = normalize_schottky(&moved).unwrap();
        for (x, y) in g.iter().zip(&back) {
            assert!(x.max_abs_diff(y) < 1e-10, "{x:?} vs {y:?}");
        }
    }

    #[test]
    fn normalization_rejects_single_generator() {
        let g = normalized_pair();
        assert!(matches!(normalize_schottky(&g[..1]), Err(Error::DegenerateConfiguration(_))));
    }

    fn arb_c64(scale: f64) -> impl Strategy<Value = C64> {
        (-scale..scale, -scale..scale).prop_map(|(a, b)| C64::new(a, b))
    }

    fn arb_sl2(scale: f64) -> impl Strategy<Value = MoebiusMap> {
        (arb_c64(scale), arb_c64(scale), arb_c64(scale), arb_c64(scale))
            .prop_filter_map("singular", |(a, b, c, d)| {
                let det = a * d - b * c;
                (det.norm() > 0.1).then(|| MoebiusMap::from_unnormalized(a, b, c, d).ok()).flatten()
            })
    }

    fn arb_loxodromic() -> impl Strategy<Value = MoebiusMap> {
        arb_sl2(2.0).prop_filter("not loxodromic enough", |m| {
            m.geodesic_invariants().map(|i| i.length > 0.2).unwrap_or(false)
        })
    }

    proptest! {
        #[test]
        fn inverse_has_same_multiplier(m in arb_loxodromic()) {
            let a = m.geodesic_invariants().unwrap();
            let b = m.inverse().geodesic_invariants().unwrap();
            prop_assert!((a.multiplier - b.multiplier).norm() < 1e-10);
            prop_assert!(a.attracting.chordal_distance(&b.repelling) < 1e-8);
        }

        #[test]
        fn conjugation_preserves_invariants(m in arb_loxodromic(), g in arb_sl2(2.0)) {
            let a = m.geodesic_invariants().unwrap();
            let b = m.conjugate_by(&g).geodesic_invariants().unwrap();
            prop_assert!((a.multiplier - b.multiplier).norm() < 1e-10);
            prop_assert!((a.length - b.length).abs() < 1e-10);
            prop_assert!((a.spin_phase() - b.spin_phase()).norm() < 1e-10);
        }

        #[test]
        fn powers_scale_length(m in arb_loxodromic(), k in 2u32..=3) {
            let a = m.geodesic_invariants().unwrap();
            let b = m.pow(k).geodesic_invariants().unwrap();
            prop_assert!((b.length - k as f64 * a.length).abs() < 1e-10 * (1.0 + b.length));
            prop_assert!((b.multiplier - a.multiplier.powu(k)).norm() < 1e-10);
        }

        #[test]
        fn distance_is_isometry_invariant(
            g in arb_sl2(2.0),
            x1 in 0.1f64..3.0, y1 in -2.0f64..2.0, y2 in -2.0f64..2.0,
            x2 in 0.1f64..3.0, y3 in -2.0f64..2.0, y4 in -2.0f64..2.0,
        ) {
            let p = HalfSpacePoint::new(x1, vec![y1, y2]);
            let q = HalfSpacePoint::new(x2, vec![y3, y4]);
            let d0 = hyperbolic_distance(&p, &q).unwrap();
            let d1 = hyperbolic_distance(&g.apply_half_space(&p).unwrap(), &g.apply_half_space(&q).unwrap()).unwrap();
            prop_assert!((d0 - d1).abs() < 1e-10 * (1.0 + d0), "{} vs {}", d0, d1);
        }

        #[test]
        fn distance_is_symmetric(x1 in 0.01f64..5.0, y1 in -3.0f64..3.0, x2 in 0.01f64..5.0, y2 in -3.0f64..3.0) {
            let p = HalfSpacePoint::new(x1, vec![y1, 0.0]);
            let q = HalfSpacePoint::new(x2, vec![y2, 0.0]);
            prop_assert_eq!(hyperbolic_distance(&p, &q).unwrap(), hyperbolic_distance(&q, &p).unwrap());
        }
    }
}
