//! Odd Selberg-type zeta functions built from the primitive length and
//! holonomy spectrum of a loxodromic group.
//!
//! Every class contributes through
//! `D_γ = |1 - q|² / |q|` with `q = e^{-(ℓ + iθ)}`, and
//!
//! ```text
//! log Z±(λ) = -Σ χ±(γ) / (j D_γ) · e^{-λℓ},     Z° = Z₊ / Z₋.
//! ```
//!
//! The characters are `e^{±iθ}` for the signature variant and
//! `(μ/|μ|)^{±1}` for the spinor variant. A swap flag exchanges the two.
//! All sums are taken in table order (word length, then lexicographic) with
//! compensated summation; parallel evaluation collects in order first.

mod eta;
pub mod tail;

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::moebius::GeodesicInvariants;
use crate::summation::ComplexKahanSum;
use crate::words::ClassTable;
use crate::{Error, Result, C64};

pub use eta::{eta, eta_all, eta_series, EtaEstimate, EtaRoute};
pub use tail::TailModel;

/// Below this many terms sums run sequentially.
const PAR_THRESHOLD: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Signature,
    Spinor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfSign {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassTerm {
    pub ell: f64,
    pub theta: f64,
    pub q: C64,
    pub j: u32,
    pub d_gamma: f64,
    pub chi_plus: C64,
    pub chi_minus: C64,
    pub spin_phase: C64,
    pub word_length: usize,
}

fn wrap_angle(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y - 2.0 * PI
    } else {
        y
    }
}

impl ClassTerm {
    pub fn new(ell: f64, theta: f64, spin_phase: C64, j: u32, word_length: usize, variant: Variant, swap: bool) -> Self {
        let q = C64::from_polar((-ell).exp(), -theta);
        let d_gamma = (C64::new(1.0, 0.0) - q).norm_sqr() / q.norm();
        let (mut chi_plus, mut chi_minus) = match variant {
            Variant::Signature => (C64::from_polar(1.0, theta), C64::from_polar(1.0, -theta)),
            Variant::Spinor => (spin_phase, spin_phase.conj()),
        };
        if swap {
            std::mem::swap(&mut chi_plus, &mut chi_minus);
        }
        Self { ell, theta, q, j, d_gamma, chi_plus, chi_minus, spin_phase, word_length }
    }

    pub fn from_invariants(inv: &GeodesicInvariants, j: u32, word_length: usize, variant: Variant, swap: bool) -> Self {
        Self::new(inv.length, inv.holonomy, inv.spin_phase(), j, word_length, variant, swap)
    }

    /// A toy class given only by its multiplier; the spin phase is `e^{iθ/2}`.
    pub fn from_multiplier(q: C64, j: u32, variant: Variant) -> Result<Self> {
        let r = q.norm();
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::InvalidInput(format!("multiplier modulus {r} outside (0, 1)")));
        }
        let ell = -r.ln();
        let theta = wrap_angle(-q.arg());
        let mut t = Self::new(ell, theta, C64::from_polar(1.0, theta / 2.0), j, 0, variant, false);
        t.q = q;
        Ok(t)
    }

    /// The class of `γ^k`.
    pub fn power(&self, k: u32) -> Self {
        let kf = k as f64;
        let q = self.q.powu(k);
        Self {
            ell: kf * self.ell,
            theta: wrap_angle(kf * self.theta),
            q,
            j: self.j * k,
            d_gamma: (C64::new(1.0, 0.0) - q).norm_sqr() / q.norm(),
            chi_plus: self.chi_plus.powu(k),
            chi_minus: self.chi_minus.powu(k),
            spin_phase: self.spin_phase.powu(k),
            word_length: self.word_length * k as usize,
        }
    }

    /// The class of the complex-conjugate group.
    pub fn conjugate(&self) -> Self {
        Self {
            theta: wrap_angle(-self.theta),
            q: self.q.conj(),
            chi_plus: self.chi_plus.conj(),
            chi_minus: self.chi_minus.conj(),
            spin_phase: self.spin_phase.conj(),
            ..*self
        }
    }

    /// `(χ₊ - χ₋) / (j D)`.
    pub fn odd_coefficient(&self) -> C64 {
        (self.chi_plus - self.chi_minus) / (self.j as f64 * self.d_gamma)
    }

    pub fn half_coefficient(&self, sign: HalfSign) -> C64 {
        let chi = match sign {
            HalfSign::Plus => self.chi_plus,
            HalfSign::Minus => self.chi_minus,
        };
        chi / (self.j as f64 * self.d_gamma)
    }
}

/// How the classes beyond the computed list are accounted for.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum TailSource {
    /// The list is the whole spectrum.
    Exact,
    /// Shell extrapolation of a word-length-truncated table.
    Model(TailModel),
    /// Toy list: each primitive class expanded to powers `1..=P`.
    Powers(u32),
    /// No usable model; every bound is infinite.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermSet {
    pub variant: Variant,
    pub terms: Vec<ClassTerm>,
    pub cutoff_l: usize,
    /// Poincaré exponent estimate, if the set comes from a group.
    pub delta_hat: Option<f64>,
    pub tail: TailSource,
}

impl TermSet {
    pub fn from_table(table: &ClassTable, variant: Variant, swap: bool, delta_hat: Option<f64>) -> Self {
        let terms: Vec<ClassTerm> = table
            .records
            .par_iter()
            .map(|r| ClassTerm::from_invariants(&r.invariants, r.class.j, r.class.word_length, variant, swap))
            .collect();
        let mut shell_min = vec![f64::INFINITY; table.cutoff_l];
        for t in &terms {
            if (1..=table.cutoff_l).contains(&t.word_length) {
                let m = &mut shell_min[t.word_length - 1];
                *m = m.min(t.ell);
            }
        }
        let tail = if shell_min.iter().all(|l| l.is_finite()) {
            TailModel::fit(table.rank, &shell_min).map_or(TailSource::Unknown, TailSource::Model)
        } else {
            TailSource::Unknown
        };
        Self { variant, terms, cutoff_l: table.cutoff_l, delta_hat, tail }
    }

    /// A finite list taken as the complete spectrum.
    pub fn from_terms(terms: Vec<ClassTerm>, variant: Variant) -> Self {
        Self { variant, terms, cutoff_l: 0, delta_hat: None, tail: TailSource::Exact }
    }

    /// Primitive toy classes `q`, each expanded to its powers `1..=powers`.
    pub fn from_primitive_multipliers(qs: &[C64], powers: u32, variant: Variant) -> Result<Self> {
        let mut terms = Vec::with_capacity(qs.len() * powers as usize);
        for &q in qs {
            let t = ClassTerm::from_multiplier(q, 1, variant)?;
            terms.extend((1..=powers).map(|k| t.power(k)));
        }
        Ok(Self { variant, terms, cutoff_l: 0, delta_hat: None, tail: TailSource::Powers(powers) })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_length(&self) -> Option<f64> {
        self.terms.iter().map(|t| t.ell).min_by(f64::total_cmp)
    }

    pub fn primitive(&self) -> Self {
        Self { terms: self.terms.iter().filter(|t| t.j == 1).copied().collect(), ..self.clone() }
    }

    pub fn conjugated(&self) -> Self {
        Self { terms: self.terms.iter().map(ClassTerm::conjugate).collect(), ..self.clone() }
    }

    fn check_abscissa(&self, lambda: C64) -> Result<()> {
        match self.delta_hat {
            Some(d) if !(lambda.re > d) => Err(Error::ConvergenceViolation { re_lambda: lambda.re, delta_hat: d }),
            _ => Ok(()),
        }
    }

    /// Bound on `Σ_{missing classes} w · ℓ^p · e^{-Re(λ)ℓ} / (j D)`.
    pub fn tail_bound(&self, re_lambda: f64, weight: f64, ell_power: i32) -> f64 {
        let c = 1.0 + re_lambda;
        let log_w = |ell: f64| weight.ln() + ell_power as f64 * ell.ln() + tail::log_weight(ell, c);
        match self.tail {
            TailSource::Exact => 0.0,
            TailSource::Unknown => f64::INFINITY,
            TailSource::Model(m) => m.bound(log_w),
            TailSource::Powers(p) => {
                let mut total = 0.0;
                for t in self.terms.iter().filter(|t| t.j == 1) {
                    let mut prev = f64::INFINITY;
                    for k in (p + 1)..(p + 100_000) {
                        let term = (log_w(k as f64 * t.ell) - (k as f64).ln()).exp();
                        if term >= prev && term > 0.0 {
                            return f64::INFINITY;
                        }
                        total += term;
                        if term <= 1e-18 * total || term == 0.0 {
                            break;
                        }
                        prev = term;
                    }
                }
                total
            }
        }
    }
}

/// Ordered compensated sum of `f` over the terms.
pub(crate) fn series<F>(terms: &[ClassTerm], f: F) -> C64
where
    F: Fn(&ClassTerm) -> C64 + Sync + Send,
{
    let mut acc = ComplexKahanSum::new();
    if terms.len() < PAR_THRESHOLD {
        terms.iter().for_each(|t| acc.add(f(t)));
    } else {
        let parts: Vec<C64> = terms.par_iter().map(f).collect();
        parts.into_iter().for_each(|z| acc.add(z));
    }
    acc.value()
}

fn damping(t: &ClassTerm, lambda: C64) -> C64 {
    (-lambda * t.ell).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaEvaluation {
    pub variant: Variant,
    pub lambda: C64,
    pub value: C64,
    pub tail_bound: f64,
    #[serde(rename = "cutoff_L")]
    pub cutoff_l: usize,
}

/// Value and truncation bound of a logarithm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogValue {
    pub value: C64,
    pub tail_bound: f64,
}

impl LogValue {
    fn exponentiate(self, ts: &TermSet, lambda: C64) -> ZetaEvaluation {
        let value = self.value.exp();
        ZetaEvaluation {
            variant: ts.variant,
            lambda,
            value,
            tail_bound: value.norm() * self.tail_bound.exp_m1(),
            cutoff_l: ts.cutoff_l,
        }
    }
}

pub fn log_zeta_half(ts: &TermSet, sign: HalfSign, lambda: C64) -> Result<LogValue> {
    ts.check_abscissa(lambda)?;
    let value = -series(&ts.terms, |t| t.half_coefficient(sign) * damping(t, lambda));
    Ok(LogValue { value, tail_bound: ts.tail_bound(lambda.re, 1.0, 0) })
}

pub fn zeta_half(ts: &TermSet, sign: HalfSign, lambda: C64) -> Result<ZetaEvaluation> {
    Ok(log_zeta_half(ts, sign, lambda)?.exponentiate(ts, lambda))
}

/// `log Z° = log Z₊ - log Z₋`, summed as one series.
pub fn log_zeta_odd(ts: &TermSet, lambda: C64) -> Result<LogValue> {
    ts.check_abscissa(lambda)?;
    let value = -series(&ts.terms, |t| t.odd_coefficient() * damping(t, lambda));
    Ok(LogValue { value, tail_bound: ts.tail_bound(lambda.re, 2.0, 0) })
}

pub fn zeta_odd(ts: &TermSet, lambda: C64) -> Result<ZetaEvaluation> {
    Ok(log_zeta_odd(ts, lambda)?.exponentiate(ts, lambda))
}

/// `∂_λ log Z°(λ) = Σ ℓ (χ₊ - χ₋) / (j D) · e^{-λℓ}`.
pub fn dlog_zeta_odd(ts: &TermSet, lambda: C64) -> Result<ZetaEvaluation> {
    ts.check_abscissa(lambda)?;
    let value = series(&ts.terms, |t| t.ell * t.odd_coefficient() * damping(t, lambda));
    Ok(ZetaEvaluation {
        variant: ts.variant,
        lambda,
        value,
        tail_bound: ts.tail_bound(lambda.re, 2.0, 1),
        cutoff_l: ts.cutoff_l,
    })
}

/// Double-product form over the primitive classes only:
///
/// ```text
/// Z°(λ) = Π_γ Π_{k,l ≥ 0} (1 - χ₊ q^k q̄^l e^{-(λ+1)ℓ}) / (1 - χ₋ q^k q̄^l e^{-(λ+1)ℓ})
/// ```
///
/// with `k, l < inner`. The bound covers the inner truncation plus the
/// classes missing from the list.
pub fn zeta_odd_product(ts: &TermSet, lambda: C64, inner: usize) -> Result<ZetaEvaluation> {
    ts.check_abscissa(lambda)?;
    if inner == 0 {
        return Err(Error::InvalidInput("inner product cutoff must be positive".into()));
    }
    let prim: Vec<ClassTerm> = ts.terms.iter().filter(|t| t.j == 1).copied().collect();
    let log = series(&prim, |t| {
        let base = (-(lambda + 1.0) * t.ell).exp();
        let mut acc = ComplexKahanSum::new();
        let mut qk = C64::new(1.0, 0.0);
        for _ in 0..inner {
            let mut x = qk * base;
            for _ in 0..inner {
                acc.add((1.0 - t.chi_plus * x).ln() - (1.0 - t.chi_minus * x).ln());
                x *= t.q.conj();
            }
            qk *= t.q;
        }
        acc.value()
    });
    let inner_bound: f64 = prim
        .iter()
        .map(|t| {
            let r = t.q.norm();
            let b = (-(1.0 + lambda.re) * t.ell).exp();
            let pairs = 2.0 * r.powi(inner as i32) / (1.0 - r).powi(2);
            2.0 * pairs * b / (1.0 - b)
        })
        .sum();
    let bound = inner_bound + ts.tail_bound(lambda.re, 2.0, 0);
    let value = log.exp();
    Ok(ZetaEvaluation {
        variant: ts.variant,
        lambda,
        value,
        tail_bound: value.norm() * bound.exp_m1(),
        cutoff_l: ts.cutoff_l,
    })
}

/// `(4πt)^{-3/2} · 2πi Σ ℓ² (χ₊ - χ₋) / (j D) · e^{-ℓ²/4t}`; real for both variants.
pub fn odd_heat_trace(ts: &TermSet, t: f64) -> Result<C64> {
    if !(t > 0.0) {
        return Err(Error::InvalidInput(format!("heat time must be positive, got {t}")));
    }
    let pref = C64::new(0.0, 2.0 * PI) / (4.0 * PI * t).powf(1.5);
    Ok(pref * series(&ts.terms, |c| c.ell * c.ell * c.odd_coefficient() * (-c.ell * c.ell / (4.0 * t)).exp()))
}
