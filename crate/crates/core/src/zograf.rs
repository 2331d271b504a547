//! Zograf's function `F(Γ) = Π_γ Π_{m≥0} (1 - q_γ^{1+m})` over primitive
//! classes, its relation `arg F = -(π/2) η` to the signature η invariant,
//! and finite-difference pluriharmonicity scans of `η` over Schottky space.
//!
//! Points of Schottky space are charted by generator data. For genus `g`
//! the first generator fixes `0` (attracting) and `∞` with multiplier
//! eigenvalue `μ₁`; the second fixes `1` and `b₂` with `μ₂`; each further
//! generator `k` has free fixed points `a_k, b_k` and eigenvalue `μ_k`.
//! Parameters are ordered `[μ₁, μ₂, b₂, μ₃, a₃, b₃, …]`, `3g - 3` in all.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::moebius::{MoebiusMap, SpherePoint};
use crate::summation::ComplexKahanSum;
use crate::words::{estimate_delta_with, ClassTable, DEFAULT_DELTA_TOLERANCE, DEFAULT_MEMORY_BUDGET};
use crate::zeta::{eta, zeta_odd, EtaEstimate, EtaRoute, TermSet, Variant};
use crate::{Error, Result, C64};

pub const DEFAULT_STEP: f64 = 5e-3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchottkyPoint {
    pub genus: usize,
    pub params: Vec<C64>,
    pub generators: Vec<MoebiusMap>,
}

impl SchottkyPoint {
    pub fn new(params: Vec<C64>) -> Result<Self> {
        if params.len() < 3 || !params.len().is_multiple_of(3) {
            return Err(Error::InvalidInput(format!("expected 3g - 3 parameters with g ≥ 2, got {}", params.len())));
        }
        let genus = params.len() / 3 + 1;
        let fin = SpherePoint::Finite;
        let one = C64::new(1.0, 0.0);
        let mut generators = vec![
            MoebiusMap::from_fixed_points(fin(C64::new(0.0, 0.0)), SpherePoint::Infinity, params[0])?,
            MoebiusMap::from_fixed_points(fin(one), fin(params[2]), params[1])?,
        ];
        for k in 1..genus - 1 {
            let p = &params[3 * k..3 * k + 3];
            generators.push(MoebiusMap::from_fixed_points(fin(p[1]), fin(p[2]), p[0])?);
        }
        for g in &generators {
            g.geodesic_invariants()?;
        }
        Ok(Self { genus, params, generators })
    }

    pub fn with_param(&self, index: usize, value: C64) -> Result<Self> {
        if index >= self.params.len() {
            return Err(Error::InvalidInput(format!("parameter index {index} out of range")));
        }
        let mut params = self.params.clone();
        params[index] = value;
        Self::new(params)
    }
}

/// A value together with a bound on its truncation error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FactorValue {
    pub value: C64,
    pub log_value: C64,
    /// Bound on the error of `log_value`.
    pub tail_bound: f64,
}

/// `F` over the primitive classes of `ts`, with factors `m = 0..=inner`.
pub fn zograf_f(ts: &TermSet, inner: usize) -> Result<FactorValue> {
    if let Some(t) = ts.terms.iter().find(|t| t.j != 1) {
        return Err(Error::NonPrimitiveInput(t.j));
    }
    let logs: Vec<C64> = ts
        .terms
        .par_iter()
        .map(|t| {
            let mut acc = ComplexKahanSum::new();
            let mut qm = t.q;
            for _ in 0..=inner {
                acc.add((1.0 - qm).ln());
                qm *= t.q;
            }
            acc.value()
        })
        .collect();
    let mut acc = ComplexKahanSum::new();
    logs.into_iter().for_each(|z| acc.add(z));
    let log_value = acc.value();
    let e = inner as i32 + 2;
    let inner_tail: f64 = ts
        .terms
        .iter()
        .map(|t| {
            let r = t.q.norm();
            r.powi(e) / ((1.0 - r) * (1.0 - r.powi(e)))
        })
        .sum();
    Ok(FactorValue { value: log_value.exp(), log_value, tail_bound: inner_tail + ts.tail_bound(0.0, 1.0, 0) })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub eta: EtaEstimate,
    pub f: FactorValue,
    /// `|arg F + (π/2) η|`, reduced into `[-π, π)`.
    pub residual: f64,
    /// `|Z°(0) - conj(F)/F|`.
    pub cross_check: f64,
    pub error_budget: f64,
}

/// Compares `arg F` with `-(π/2) η`, both computed over the same class list
/// of the signature variant.
pub fn check_eta_f_identity(ts: &TermSet, inner: usize) -> Result<IdentityCheck> {
    if ts.variant != Variant::Signature {
        return Err(Error::InvalidInput("the identity concerns the signature variant".into()));
    }
    let eta = eta(ts, EtaRoute::CentralValue)?;
    let f = zograf_f(&ts.primitive(), inner)?;
    let d = f.log_value.im + PI / 2.0 * eta.value;
    let residual = ((d + PI).rem_euclid(2.0 * PI) - PI).abs();
    let z = zeta_odd(ts, C64::new(0.0, 0.0))?;
    let cross_check = (z.value - f.value.conj() / f.value).norm();
    let error_budget = f.tail_bound + PI / 2.0 * eta.error_bound;
    Ok(IdentityCheck { eta, f, residual, cross_check, error_budget })
}

/// Function sampled by the scan harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanOracle {
    /// The signature η invariant of the group.
    Eta,
    /// `Re(w³)` with `w = p - p₀ + 1` the recentred parameter: harmonic.
    HarmonicCubic,
    /// `|w|²`: Laplacian 4.
    Modulus,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanOptions {
    pub cutoff_l: usize,
    pub delta_cutoff: usize,
    pub h: f64,
    pub oracle: ScanOracle,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self { cutoff_l: 5, delta_cutoff: 8, h: DEFAULT_STEP, oracle: ScanOracle::Eta }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PluriharmonicityReport {
    pub param_index: usize,
    pub h: f64,
    pub oracle: ScanOracle,
    pub center_value: f64,
    pub fd_laplacian: f64,
    /// The same stencil at `h/2`.
    pub fd_laplacian_half: f64,
    pub error_budget: f64,
}

/// Signature η at a Schottky point, with the domain preconditions checked.
pub fn eta_at(point: &SchottkyPoint, cutoff_l: usize, delta_cutoff: usize) -> Result<EtaEstimate> {
    let est = estimate_delta_with(&point.generators, delta_cutoff, DEFAULT_DELTA_TOLERANCE, DEFAULT_MEMORY_BUDGET)?;
    if !(est.delta_hat < 0.0) {
        return Err(Error::DeltaNotNegative(est.delta_hat));
    }
    let table = ClassTable::build(&point.generators, cutoff_l)?;
    let ts = TermSet::from_table(&table, Variant::Signature, false, Some(est.delta_hat));
    eta(&ts, EtaRoute::CentralValue)
}

fn stencil(p: C64, h: f64) -> [C64; 4] {
    [p + h, p - h, p + C64::new(0.0, h), p - C64::new(0.0, h)]
}

/// Five-point Laplacian of the chosen function in parameter `param_index`
/// at steps `h` and `h/2`. The budget is the Richardson estimate of the
/// discretization error plus the evaluation errors amplified by `8/h²`.
pub fn pluriharmonicity_scan(base: &SchottkyPoint, param_index: usize, opts: &ScanOptions) -> Result<PluriharmonicityReport> {
    if param_index >= base.params.len() {
        return Err(Error::InvalidInput(format!("parameter index {param_index} out of range")));
    }
    if !(opts.h > 0.0) {
        return Err(Error::InvalidInput(format!("step must be positive, got {}", opts.h)));
    }
    let p0 = base.params[param_index];
    let mut points = vec![p0];
    points.extend(stencil(p0, opts.h));
    points.extend(stencil(p0, opts.h / 2.0));
    let samples: Vec<Result<(f64, f64)>> = points
        .par_iter()
        .map(|&p| match opts.oracle {
            ScanOracle::HarmonicCubic => {
                let w = p - p0 + 1.0;
                Ok(((w * w * w).re, 0.0))
            }
            ScanOracle::Modulus => Ok(((p - p0 + 1.0).norm_sqr(), 0.0)),
            ScanOracle::Eta => {
                let point = base
                    .with_param(param_index, p)
                    .map_err(|e| Error::LeftSchottkyDomain(format!("parameter {param_index} = {p}: {e}")))?;
                let e = eta_at(&point, opts.cutoff_l, opts.delta_cutoff)
                    .map_err(|e| Error::LeftSchottkyDomain(format!("parameter {param_index} = {p}: {e}")))?;
                Ok((e.value, e.error_bound))
            }
        })
        .collect();
    let samples: Vec<(f64, f64)> = samples.into_iter().collect::<Result<_>>()?;
    let center = samples[0].0;
    let lap = |range: std::ops::Range<usize>, h: f64| {
        let s: f64 = samples[range].iter().map(|v| v.0).sum();
        (s - 4.0 * center) / (h * h)
    };
    let l_h = lap(1..5, opts.h);
    let l_half = lap(5..9, opts.h / 2.0);
    let scale = samples.iter().map(|v| v.0.abs()).fold(0.0, f64::max);
    let eval_err = samples.iter().map(|v| v.1).fold(0.0, f64::max) + 64.0 * f64::EPSILON * scale;
    let h_half = opts.h / 2.0;
    let error_budget = 4.0 / 3.0 * (l_h - l_half).abs() + 8.0 * eval_err / (h_half * h_half) + f64::MIN_POSITIVE;
    Ok(PluriharmonicityReport {
        param_index,
        h: opts.h,
        oracle: opts.oracle,
        center_value: center,
        fd_laplacian: l_h,
        fd_laplacian_half: l_half,
        error_budget,
    })
}
