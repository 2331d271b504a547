//! Gauss hypergeometric function ₂F₁(a, b; c; z) for |z| ≤ 1.
//!
//! Region map:
//! * `|z| ≤ 1/2`: the defining series.
//! * `|z/(z-1)| ≤ 1/2`: Pfaff, `F = (1-z)^{-a} F(a, c-b; c; z/(z-1))`.
//! * `|1-z| ≤ 1/2`: connection to `1-z`, with the logarithmic forms when
//!   `c-a-b` is an integer.
//! * elsewhere on the disc: the defining series, capped.

use serde::{Deserialize, Serialize};

use super::gamma::{digamma, distance_to_integer, gamma, is_nonpositive_integer, rgamma};
use crate::summation::ComplexKahanSum;
use crate::{Error, Result, C64};

const MAX_TERMS: usize = 200_000;
/// `c - a - b` closer than this to an integer is treated as that integer.
const INTEGER_SNAP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HypergeometricArgs {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub z: C64,
}

impl HypergeometricArgs {
    pub fn new(a: C64, b: C64, c: C64, z: C64) -> Self {
        Self { a, b, c, z }
    }

    pub fn real(a: f64, b: f64, c: f64, z: f64) -> Self {
        Self::new(C64::new(a, 0.0), C64::new(b, 0.0), C64::new(c, 0.0), C64::new(z, 0.0))
    }
}

pub fn hyp2f1(args: &HypergeometricArgs) -> Result<C64> {
    let HypergeometricArgs { a, b, c, z } = *args;
    if is_nonpositive_integer(c) {
        return Err(Error::PoleAtC);
    }
    let one = C64::new(1.0, 0.0);
    if z == C64::new(0.0, 0.0) || a == C64::new(0.0, 0.0) || b == C64::new(0.0, 0.0) {
        return Ok(one);
    }
    if z == one {
        let s = c - a - b;
        if s.re <= 0.0 && !(is_nonpositive_integer(a) || is_nonpositive_integer(b)) {
            return Err(Error::NoConvergence(format!("z = 1 with Re(c-a-b) = {}", s.re)));
        }
        if is_nonpositive_integer(a) || is_nonpositive_integer(b) {
            return series(a, b, c, z);
        }
        return Ok(gamma(c) * gamma(s) * rgamma(c - a) * rgamma(c - b));
    }
    if is_nonpositive_integer(a) || is_nonpositive_integer(b) {
        return series(a, b, c, z);
    }
    if z.norm() <= 0.5 {
        return series(a, b, c, z);
    }
    let w = z / (z - 1.0);
    if w.norm() <= 0.5 {
        return Ok((one - z).powc(-a) * series(a, c - b, c, w)?);
    }
    if (one - z).norm() <= 0.5 {
        return near_one(a, b, c, z);
    }
    if (one - w).norm() <= 0.5 {
        return Ok((one - z).powc(-a) * near_one(a, c - b, c, w)?);
    }
    series(a, b, c, z)
}

/// The defining power series, summed until terms stop mattering.
fn series(a: C64, b: C64, c: C64, z: C64) -> Result<C64> {
    let mut sum = ComplexKahanSum::new();
    let mut term = C64::new(1.0, 0.0);
    let mut small = 0;
    for k in 0..MAX_TERMS {
        sum.add(term);
        let kf = k as f64;
        term = term * (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        if term == C64::new(0.0, 0.0) {
            return Ok(sum.value());
        }
        if term.norm() <= 1e-17 * sum.value().norm() {
            small += 1;
            if small >= 3 {
                return Ok(sum.value());
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NoConvergence(format!("series did not converge at z = {z}")))
}

fn pochhammer_step(x: C64, n: usize) -> C64 {
    x + n as f64
}

/// Connection formulas around z = 1.
fn near_one(a: C64, b: C64, c: C64, z: C64) -> Result<C64> {
    let one = C64::new(1.0, 0.0);
    let s = c - a - b;
    let w = one - z;
    if distance_to_integer(s) > INTEGER_SNAP {
        let t1 = gamma(c) * gamma(s) * rgamma(c - a) * rgamma(c - b) * series(a, b, one - s, w)?;
        let t2 = w.powc(s) * gamma(c) * gamma(-s) * rgamma(a) * rgamma(b) * series(c - a, c - b, s + 1.0, w)?;
        return Ok(t1 + t2);
    }
    let m = s.re.round() as i64;
    if m >= 0 {
        Ok(log_case_plus(a, b, m as usize, w)? * gamma(c))
    } else {
        Ok(log_case_minus(a, b, (-m) as usize, w)? * gamma(c))
    }
}

/// `F(a, b; a+b+m; z) / Γ(a+b+m)` for integer `m ≥ 0`, `w = 1 - z`.
fn log_case_plus(a: C64, b: C64, m: usize, w: C64) -> Result<C64> {
    let one = C64::new(1.0, 0.0);
    let ln_w = w.ln();
    let mut finite = ComplexKahanSum::new();
    if m > 0 {
        // Γ(m) / (Γ(a+m) Γ(b+m)) Σ_{n<m} (a)_n (b)_n / (n! (1-m)_n) w^n
        let pref = gamma(C64::new(m as f64, 0.0)) * rgamma(a + m as f64) * rgamma(b + m as f64);
        let mut term = one;
        for n in 0..m {
            finite.add(pref * term);
            let nf = n as f64;
            term = term * pochhammer_step(a, n) * pochhammer_step(b, n) / ((nf + 1.0) * (1.0 - m as f64 + nf)) * w;
        }
    }
    // -(z-1)^m / (Γ(a)Γ(b)) Σ_n (a+m)_n (b+m)_n / (n! (n+m)!) w^n
    //     × [ln w - ψ(n+1) - ψ(n+m+1) + ψ(a+n+m) + ψ(b+n+m)]
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    let pref = -(w.powu(m as u32) * sign) * rgamma(a) * rgamma(b);
    let mut inf = ComplexKahanSum::new();
    let mut coef = one / factorial(m);
    let mut small = 0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let bracket = ln_w - digamma(C64::new(nf + 1.0, 0.0)) - digamma(C64::new(nf + m as f64 + 1.0, 0.0))
            + digamma(a + nf + m as f64)
            + digamma(b + nf + m as f64);
        let term = coef * bracket;
        inf.add(term);
        if term.norm() <= 1e-17 * inf.value().norm().max(1e-300) {
            small += 1;
            if small >= 3 {
                return Ok(finite.value() + pref * inf.value());
            }
        } else {
            small = 0;
        }
        coef = coef * (a + (m as f64 + nf)) * (b + (m as f64 + nf)) / ((nf + 1.0) * (nf + m as f64 + 1.0)) * w;
    }
    Err(Error::NoConvergence("logarithmic connection series".into()))
}

/// `F(a, b; a+b-m; z) / Γ(a+b-m)` for integer `m ≥ 1`, `w = 1 - z`.
fn log_case_minus(a: C64, b: C64, m: usize, w: C64) -> Result<C64> {
    let one = C64::new(1.0, 0.0);
    let mf = m as f64;
    let ln_w = w.ln();
    // Γ(m) / (Γ(a)Γ(b)) w^{-m} Σ_{n<m} (a-m)_n (b-m)_n / (n! (1-m)_n) w^n
    let pref = gamma(C64::new(mf, 0.0)) * rgamma(a) * rgamma(b) * w.powi(-(m as i32));
    let mut finite = ComplexKahanSum::new();
    let mut term = one;
    for n in 0..m {
        finite.add(pref * term);
        let nf = n as f64;
        term = term * (a - mf + nf) * (b - mf + nf) / ((nf + 1.0) * (1.0 - mf + nf)) * w;
    }
    // -(-1)^m / (Γ(a-m)Γ(b-m)) Σ_n (a)_n (b)_n / (n! (n+m)!) w^n
    //     × [ln w - ψ(n+1) - ψ(n+m+1) + ψ(a+n) + ψ(b+n)]
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    let pref = -sign * rgamma(a - mf) * rgamma(b - mf);
    let mut inf = ComplexKahanSum::new();
    let mut coef = one / factorial(m);
    let mut small = 0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let bracket = ln_w - digamma(C64::new(nf + 1.0, 0.0)) - digamma(C64::new(nf + mf + 1.0, 0.0))
            + digamma(a + nf)
            + digamma(b + nf);
        let term = coef * bracket;
        inf.add(term);
        if term.norm() <= 1e-17 * inf.value().norm().max(1e-300) {
            small += 1;
            if small >= 3 {
                return Ok(finite.value() + pref * inf.value());
            }
        } else {
            small = 0;
        }
        coef = coef * (a + nf) * (b + nf) / ((nf + 1.0) * (nf + mf + 1.0)) * w;
    }
    Err(Error::NoConvergence("logarithmic connection series".into()))
}

fn factorial(m: usize) -> f64 {
    (1..=m).map(|k| k as f64).product()
}
