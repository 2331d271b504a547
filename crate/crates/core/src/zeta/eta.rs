//! The spectral asymmetry `η`, defined by `Z°(0) = e^{iπη}`, computed three
//! independent ways.
//!
//! * `CentralValue`: follow `arg Z°(λ)` continuously from large `λ`, where it
//!   is close to zero, down to `λ = 0`.
//! * `LambdaIntegral`: `η = (i/π) ∫₀^∞ ∂_λ log Z°(λ) dλ`, with the part beyond
//!   `Λ` summed in closed form.
//! * `HeatQuadrature`: `η = π^{-1/2} ∫₀^∞ t^{-1/2} Tr(t) dt`, split at `t = 1`
//!   and mapped to smooth integrands by `t ↦ 1/t`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{log_zeta_odd, odd_heat_trace, series, zeta_odd, TermSet};
use crate::quadrature::{integrate, integrate_to_infinity, QuadratureOptions};
use crate::{Error, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EtaRoute {
    CentralValue,
    LambdaIntegral,
    HeatQuadrature,
}

impl EtaRoute {
    pub const ALL: [EtaRoute; 3] = [EtaRoute::CentralValue, EtaRoute::LambdaIntegral, EtaRoute::HeatQuadrature];

    pub fn name(self) -> &'static str {
        match self {
            EtaRoute::CentralValue => "central_value",
            EtaRoute::LambdaIntegral => "lambda_integral",
            EtaRoute::HeatQuadrature => "heat_quadrature",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EtaEstimate {
    pub route: EtaRoute,
    pub value: f64,
    /// Truncation bound plus the numerical error of the route.
    pub error_bound: f64,
    /// Imaginary part discarded from a quantity that is real in exact arithmetic.
    pub imaginary_residual: f64,
}

const QUAD: QuadratureOptions = QuadratureOptions { abs_tol: 1e-15, rel_tol: 1e-12, max_intervals: 4000 };

fn preconditions(ts: &TermSet) -> Result<f64> {
    if let Some(d) = ts.delta_hat {
        if !(d < 0.0) {
            return Err(Error::DeltaNotNegative(d));
        }
    }
    Ok(ts.tail_bound(0.0, 2.0, 0) / PI)
}

/// `(i/π) Σ (χ₊ - χ₋) / (j D)` summed directly.
pub fn eta_series(ts: &TermSet) -> Result<EtaEstimate> {
    let trunc = preconditions(ts)?;
    let s = C64::new(0.0, 1.0 / PI) * series(&ts.terms, |t| t.odd_coefficient());
    Ok(EtaEstimate { route: EtaRoute::CentralValue, value: s.re, error_bound: trunc, imaginary_residual: s.im.abs() })
}

pub fn eta(ts: &TermSet, route: EtaRoute) -> Result<EtaEstimate> {
    let trunc = preconditions(ts)?;
    let Some(ell_min) = ts.min_length() else {
        return Ok(EtaEstimate { route, value: 0.0, error_bound: trunc, imaginary_residual: 0.0 });
    };
    match route {
        EtaRoute::CentralValue => central(ts, ell_min, trunc),
        EtaRoute::LambdaIntegral => lambda_integral(ts, ell_min, trunc),
        EtaRoute::HeatQuadrature => heat(ts, trunc),
    }
}

pub fn eta_all(ts: &TermSet) -> Result<Vec<EtaEstimate>> {
    EtaRoute::ALL.iter().map(|&r| eta(ts, r)).collect()
}

fn principal(x: f64) -> f64 {
    let y = (x + PI).rem_euclid(2.0 * PI) - PI;
    if y == -PI {
        PI
    } else {
        y
    }
}

fn central(ts: &TermSet, ell_min: f64, trunc: f64) -> Result<EtaEstimate> {
    let lambda0 = 40.0 / ell_min;
    let start = log_zeta_odd(ts, C64::new(lambda0, 0.0))?.value;
    if start.im.abs() >= PI {
        return Err(Error::NonConvergent("argument not small at the starting point".into()));
    }
    let mut lambda = lambda0;
    let mut arg = start.im;
    let mut prev = zeta_odd(ts, C64::new(lambda, 0.0))?.value.arg();
    let mut step = lambda0 / 64.0;
    let min_step = lambda0 * 1e-9;
    while lambda > 0.0 {
        let next = (lambda - step).max(0.0);
        let cur = zeta_odd(ts, C64::new(next, 0.0))?.value.arg();
        let delta = principal(cur - prev);
        if delta.abs() > 0.5 && step > min_step {
            step /= 2.0;
            continue;
        }
        arg += delta;
        prev = cur;
        lambda = next;
        if delta.abs() < 0.1 {
            step *= 1.5;
        }
    }
    let value = arg / PI;
    Ok(EtaEstimate {
        route: EtaRoute::CentralValue,
        value,
        error_bound: trunc + 64.0 * f64::EPSILON * value.abs().max(1.0),
        imaginary_residual: 0.0,
    })
}

fn lambda_integral(ts: &TermSet, ell_min: f64, trunc: f64) -> Result<EtaEstimate> {
    let lambda_max = 20.0 / ell_min;
    let f = |x: f64| series(&ts.terms, |t| t.ell * t.odd_coefficient() * (-x * t.ell).exp());
    let q = integrate(f, 0.0, lambda_max, QUAD);
    if !q.converged {
        return Err(Error::NonConvergent("λ-quadrature did not reach tolerance".into()));
    }
    let remainder = series(&ts.terms, |t| t.odd_coefficient() * (-lambda_max * t.ell).exp());
    let s = C64::new(0.0, 1.0 / PI) * (q.value + remainder);
    Ok(EtaEstimate {
        route: EtaRoute::LambdaIntegral,
        value: s.re,
        error_bound: trunc + q.abs_error / PI,
        imaginary_residual: s.im.abs(),
    })
}

fn heat(ts: &TermSet, trunc: f64) -> Result<EtaEstimate> {
    // t ∈ [1, ∞): s = 1/t gives s^{-3/2} Tr(1/s) on (0, 1].
    let outer = |s: f64| {
        if s == 0.0 {
            let k = C64::new(0.0, 2.0 * PI) / (4.0 * PI).powf(1.5);
            k * series(&ts.terms, |c| c.ell * c.ell * c.odd_coefficient())
        } else {
            odd_heat_trace(ts, 1.0 / s).unwrap_or_default() * s.powf(-1.5)
        }
    };
    // t ∈ (0, 1]: u = 1/t gives u^{-3/2} Tr(1/u) on [1, ∞).
    let inner = |u: f64| odd_heat_trace(ts, 1.0 / u).unwrap_or_default() * u.powf(-1.5);
    let a = integrate(outer, 0.0, 1.0, QUAD);
    let b = integrate_to_infinity(inner, 1.0, QUAD);
    if !(a.converged && b.converged) {
        return Err(Error::NonConvergent("heat-time quadrature did not reach tolerance".into()));
    }
    let s = (a.value + b.value) / PI.sqrt();
    Ok(EtaEstimate {
        route: EtaRoute::HeatQuadrature,
        value: s.re,
        error_bound: trunc + (a.abs_error + b.abs_error) / PI.sqrt(),
        imaginary_residual: s.im.abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::Variant;

    fn toy(variant: Variant) -> TermSet {
        let qs = [C64::from_polar(0.05, 0.7), C64::from_polar(0.02, -2.1), C64::from_polar(0.01, 2.9)];
        TermSet::from_primitive_multipliers(&qs, 30, variant).unwrap()
    }

    #[test]
    fn routes_agree_on_toy_lists() {
        for variant in [Variant::Signature, Variant::Spinor] {
            let ts = toy(variant);
            let reference = eta_series(&ts).unwrap().value;
            assert!(reference.abs() > 1e-3);
            for est in eta_all(&ts).unwrap() {
                assert!((est.value - reference).abs() < 1e-10, "{:?}: {} vs {reference}", est.route, est.value);
                assert!(est.imaginary_residual < 1e-12);
            }
        }
    }

    #[test]
    fn central_value_reproduces_zeta_at_zero() {
        let ts = toy(Variant::Signature);
        let est = eta(&ts, EtaRoute::CentralValue).unwrap();
        let z = zeta_odd(&ts, C64::new(0.0, 0.0)).unwrap().value;
        assert!((C64::from_polar(1.0, PI * est.value) - z).norm() < 1e-12);
    }

    #[test]
    fn central_value_tracks_large_arguments() {
        // |η| > 1: the principal argument alone would fold it.
        let t = super::super::ClassTerm::new(0.05, 1.2, C64::new(1.0, 0.0), 1, 1, Variant::Signature, false);
        let ts = TermSet::from_terms(vec![t; 5], Variant::Signature);
        let want = eta_series(&ts).unwrap().value;
        assert!(want.abs() > 1.0);
        let got = eta(&ts, EtaRoute::CentralValue).unwrap().value;
        assert!((got - want).abs() < 1e-9, "{got} vs {want}");
    }

    #[test]
    fn conjugation_flips_sign() {
        let ts = toy(Variant::Signature);
        for route in EtaRoute::ALL {
            let a = eta(&ts, route).unwrap().value;
            let b = eta(&ts.conjugated(), route).unwrap().value;
            assert!((a + b).abs() < 1e-12);
        }
    }

    #[test]
    fn nonnegative_delta_is_rejected() {
        let mut ts = toy(Variant::Signature);
        ts.delta_hat = Some(0.1);
        assert_eq!(eta(&ts, EtaRoute::LambdaIntegral).unwrap_err(), Error::DeltaNotNegative(0.1));
    }
}
