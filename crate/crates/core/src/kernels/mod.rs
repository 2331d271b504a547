//! Special functions and the scalar parts of the ℍ^{d+1} kernels.
//!
//! Every kernel here is a scalar function of the geodesic distance `r`; the
//! endomorphism factors (parallel transport, Clifford multiplication) live in
//! [`crate::transport`].
//!
//! The heat components need `(-d/du)^n` with `u = cosh r`. Writing
//! `D = (1/sinh r) d/dr` and `E = exp(-r²/4t)`,
//!
//! ```text
//! D(g E) = E · (g' - (r/2t) g) / sinh r
//! ```
//!
//! so the Gaussian factor is pulled out and the remaining operator acts on
//! Taylor jets of `g`. For `r < 3/2` the jets are expanded at `r = 0`, where
//! every division by `sinh r` is exact after cancelling the common zero.

pub mod gamma;
pub mod hyp2f1;
pub mod jet;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::quadrature::{integrate_to_infinity, QuadratureOptions, QuadratureResult};
use crate::{Error, Result, C64};
use gamma::{gamma, is_nonpositive_integer, rgamma};
pub use hyp2f1::{hyp2f1, HypergeometricArgs};
use jet::Jet;

/// Sample point for the kernel formulas; `d + 1 = 2n + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelPoint {
    pub r: f64,
    pub lambda: C64,
    pub t: f64,
    pub n: u32,
}

impl KernelPoint {
    pub fn resolvent(r: f64, lambda: C64) -> Self {
        Self { r, lambda, t: 1.0, n: 1 }
    }

    pub fn heat(r: f64, t: f64, n: u32) -> Self {
        Self { r, lambda: C64::new(0.0, 0.0), t, n }
    }
}

/// `C(λ) = 2^{-2λ} Γ(1/2 - λ) / Γ(1/2 + λ)`, with `C(λ)C(-λ) = 1`.
pub fn c_lambda(lambda: C64) -> Result<C64> {
    let half = C64::new(0.5, 0.0);
    if is_nonpositive_integer(half - lambda) {
        return Err(Error::PoleAt(lambda));
    }
    let pow = (-2.0 * lambda * 2f64.ln()).exp();
    Ok(pow * gamma(half - lambda) * rgamma(half + lambda))
}

/// `ln cosh x` without overflow.
fn ln_cosh(x: f64) -> f64 {
    let x = x.abs();
    x + (-2.0 * x).exp().ln_1p() - 2f64.ln()
}

fn check_distance(r: f64) -> Result<()> {
    if r == 0.0 {
        Err(Error::AtDiagonal)
    } else if !(r > 0.0) || !r.is_finite() {
        Err(Error::InvalidInput(format!("distance must be positive, got {r}")))
    } else {
        Ok(())
    }
}

fn is_negative_half_integer(lambda: C64) -> bool {
    is_nonpositive_integer(2.0 * lambda) && lambda.re < 0.0
}

/// Scalar part of the resolvent kernel of `D² + λ²` on ℍ^{d+1}:
///
/// ```text
/// 2^{-(d+1)} π^{-(d+1)/2} Γ((d+1)/2 + λ) Γ(λ) / Γ(2λ + 1)
///   · cosh(r/2)^{-2(d/2 + λ)} · F((d+1)/2 + λ, λ; 2λ + 1; cosh^{-2}(r/2))
/// ```
pub fn resolvent_scalar(p: &KernelPoint, d: u32) -> Result<C64> {
    check_distance(p.r)?;
    let lambda = p.lambda;
    let h = (d as f64 + 1.0) / 2.0;
    if lambda == C64::new(0.0, 0.0) || is_negative_half_integer(lambda) || is_nonpositive_integer(lambda + h) {
        return Err(Error::PoleOfGamma(lambda));
    }
    let z = (-2.0 * ln_cosh(p.r / 2.0)).exp();
    let pref = 2f64.powf(-(d as f64 + 1.0)) * PI.powf(-h);
    let gammas = gamma(lambda + h) * gamma(lambda) * rgamma(2.0 * lambda + 1.0);
    let decay = (-2.0 * (d as f64 / 2.0 + lambda) * ln_cosh(p.r / 2.0)).exp();
    let f = hyp2f1(&HypergeometricArgs::new(lambda + h, lambda, 2.0 * lambda + 1.0, C64::new(z, 0.0)))?;
    Ok(pref * gammas * decay * f)
}

/// Scalar part of the kernel of `D (D² + λ²)^{-1}`, the factor in front of
/// `cl(v) U`:
///
/// ```text
/// -2^{-(d+1)} π^{-(d+1)/2} Γ((d+1)/2 + λ) Γ(λ + 1) / Γ(2λ + 1)
///   · cosh(r/2)^{-(d+1) - 2λ} sinh(r/2) · F((d+1)/2 + λ, λ + 1; 2λ + 1; cosh^{-2}(r/2))
/// ```
pub fn dirac_resolvent_scalar(p: &KernelPoint, d: u32) -> Result<C64> {
    check_distance(p.r)?;
    let lambda = p.lambda;
    let h = (d as f64 + 1.0) / 2.0;
    if is_negative_half_integer(lambda) || is_nonpositive_integer(lambda + h) {
        return Err(Error::PoleOfGamma(lambda));
    }
    let x = p.r / 2.0;
    let z = (-2.0 * ln_cosh(x)).exp();
    let pref = -(2f64.powf(-(d as f64 + 1.0)) * PI.powf(-h));
    let gammas = gamma(lambda + h) * gamma(lambda + 1.0) * rgamma(2.0 * lambda + 1.0);
    // cosh^{-(d+1)-2λ}(x) sinh(x) = cosh^{-d-2λ}(x) tanh(x)
    let decay = (-(d as f64 + 2.0 * lambda) * ln_cosh(x)).exp() * x.tanh();
    let f = hyp2f1(&HypergeometricArgs::new(lambda + h, lambda + 1.0, 2.0 * lambda + 1.0, C64::new(z, 0.0)))?;
    Ok(pref * gammas * decay * f)
}

/// Below this distance the jets are expanded at `r = 0`.
const SMALL_R: f64 = 1.5;

/// `(-d/du)^n [ r / sinh(s r) · exp(-r²/4t) ]` with `u = cosh r`.
fn cosh_derivative(n: u32, t: f64, r: f64, s: f64) -> f64 {
    let n = n as usize;
    let (r0, h, order) = if r < SMALL_R { (0.0, r, 2 * n + 90) } else { (r, 0.0, n + 2) };
    let rj = Jet::variable(r0, order);
    let sinh_r = Jet::sinh_scaled(r0, 1.0, order);
    let mut g = rj.div(&Jet::sinh_scaled(r0, s, order));
    for _ in 0..n {
        let num = g.derivative().sub(&rj.mul(&g).scale(0.5 / t));
        g = num.div(&sinh_r);
    }
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * g.eval(h) * (-r * r / (4.0 * t)).exp()
}

/// `(-d/d cosh r)^n [ r sinh^{-1}(r/2) e^{-r²/4t} ]`.
pub fn spinor_heat_derivative(n: u32, t: f64, r: f64) -> f64 {
    cosh_derivative(n, t, r, 0.5)
}

/// `(-d/d cosh r)^n [ r sinh^{-1}(r) e^{-r²/4t} ]`.
pub fn signature_heat_derivative(n: u32, t: f64, r: f64) -> f64 {
    cosh_derivative(n, t, r, 1.0)
}

fn check_heat(p: &KernelPoint) -> Result<()> {
    if !(p.t > 0.0) || !(p.r >= 0.0) || !p.r.is_finite() || !p.t.is_finite() {
        return Err(Error::InvalidInput(format!("heat kernel needs t > 0, r ≥ 0 (t = {}, r = {})", p.t, p.r)));
    }
    if p.n == 0 {
        return Err(Error::InvalidInput("dimension parameter n must be at least 1".into()));
    }
    Ok(())
}

/// Scalar components `(p⁺, p⁻)` of `D e^{-tD²}` on spinors over ℍ^{2n+1}:
///
/// ```text
/// p^± = ± sinh(r/2) / (i 2^{3n+3/2} Γ(n+3/2) t^{3/2}) · (-d/d cosh r)^n [r sinh^{-1}(r/2) e^{-r²/4t}]
/// ```
pub fn heat_scalar_spinor(p: &KernelPoint) -> Result<(C64, C64)> {
    check_heat(p)?;
    let n = p.n as f64;
    let den = 2f64.powf(3.0 * n + 1.5) * gamma(C64::new(n + 1.5, 0.0)).re * p.t.powf(1.5);
    let real = (p.r / 2.0).sinh() / den * spinor_heat_derivative(p.n, p.t, p.r);
    // 1/i = -i
    let plus = C64::new(0.0, -real);
    Ok((plus, -plus))
}

/// Components `(p⁺, p⁻, p^{2m-2})` for odd forms in dimension `4m - 1`:
///
/// ```text
/// p^± = ± (4m-1) sinh r / (i 2^{2m-1/2} π^{2m+1/2} t^{3/2}) · (-d/d cosh r)^{2m-1} [r sinh^{-1}(r) e^{-r²/4t}]
/// ```
///
/// and the middle component vanishes identically.
pub fn heat_scalar_signature(p: &KernelPoint, m: u32) -> Result<(C64, C64, C64)> {
    check_heat(&KernelPoint { n: m, ..*p })?;
    let mf = m as f64;
    let den = 2f64.powf(2.0 * mf - 0.5) * PI.powf(2.0 * mf + 0.5) * p.t.powf(1.5);
    let real = (4.0 * mf - 1.0) * p.r.sinh() / den * signature_heat_derivative(2 * m - 1, p.t, p.r);
    let plus = C64::new(0.0, -real);
    Ok((plus, -plus, C64::new(0.0, 0.0)))
}

fn check_gaussian(lambda: C64, r: f64) -> Result<()> {
    let l2 = lambda * lambda;
    if l2.re <= 0.0 {
        return Err(Error::DivergentIntegral(l2.re));
    }
    if !(r > 0.0) {
        return Err(Error::InvalidInput(format!("distance must be positive, got {r}")));
    }
    Ok(())
}

/// `∫₀^∞ e^{-tλ²} (4πt)^{-3/2} e^{-r²/4t} dt = e^{-λr} / (4πr)`, with λ taken
/// as the root of λ² in the right half plane.
pub fn gaussian_time_integral(lambda: C64, r: f64) -> Result<C64> {
    check_gaussian(lambda, r)?;
    let l = if lambda.re < 0.0 { -lambda } else { lambda };
    Ok((-l * r).exp() / (4.0 * PI * r))
}

/// The same integral by adaptive quadrature, with its error estimate.
pub fn gaussian_time_integral_quadrature(lambda: C64, r: f64) -> Result<QuadratureResult<C64>> {
    check_gaussian(lambda, r)?;
    let l2 = lambda * lambda;
    let opts = QuadratureOptions { abs_tol: 1e-300, rel_tol: 1e-12, max_intervals: 4000 };
    // rescaling t by r² keeps the peak of the integrand near t ~ 1
    let s = r * r;
    let res = integrate_to_infinity(
        |tau| {
            if tau == 0.0 {
                return C64::new(0.0, 0.0);
            }
            let t = s * tau;
            (-l2 * t - r * r / (4.0 * t)).exp() * (4.0 * PI * t).powf(-1.5) * s
        },
        0.0,
        opts,
    );
    Ok(res)
}
