//! Complex Γ, 1/Γ and ψ.

use std::f64::consts::PI;

use crate::C64;

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// True if `z` is one of 0, -1, -2, ….
pub fn is_nonpositive_integer(z: C64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Distance from `z` to the nearest integer.
pub fn distance_to_integer(z: C64) -> f64 {
    C64::new(z.re - z.re.round(), z.im).norm()
}

/// A logarithm of Γ(z) (not necessarily the principal branch of `ln Γ`).
/// Only meant to be exponentiated or differenced.
pub fn ln_gamma(z: C64) -> C64 {
    if z.re < 0.5 {
        // reflection: Γ(z)Γ(1-z) = π / sin(πz)
        let s = (z * PI).sin();
        return C64::new(PI.ln(), 0.0) - s.ln() - ln_gamma(C64::new(1.0, 0.0) - z);
    }
    let z = z - 1.0;
    let mut x = C64::new(LANCZOS[0], 0.0);
    for (i, &coef) in LANCZOS.iter().enumerate().skip(1) {
        x += coef / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    C64::new(0.5 * (2.0 * PI).ln(), 0.0) + (z + 0.5) * t.ln() - t + x.ln()
}

pub fn gamma(z: C64) -> C64 {
    if z.im == 0.0 && z.re > 0.0 && z.re < 171.0 {
        return C64::new(ln_gamma(z).exp().re, 0.0);
    }
    ln_gamma(z).exp()
}

/// `1/Γ(z)`, entire; exactly zero at the poles of Γ.
pub fn rgamma(z: C64) -> C64 {
    if is_nonpositive_integer(z) {
        return C64::new(0.0, 0.0);
    }
    if z.re < 0.5 {
        // 1/Γ(z) = Γ(1-z) sin(πz) / π avoids ln of a tiny sine
        return gamma(C64::new(1.0, 0.0) - z) * (z * PI).sin() / PI;
    }
    (-ln_gamma(z)).exp()
}

/// Digamma ψ(z) by upward recurrence and the asymptotic series.
pub fn digamma(z: C64) -> C64 {
    if z.re < 0.5 {
        let pz = z * PI;
        return digamma(C64::new(1.0, 0.0) - z) - PI * pz.cos() / pz.sin();
    }
    let mut z = z;
    let mut acc = C64::new(0.0, 0.0);
    while z.norm() < 12.0 {
        acc -= z.inv();
        z += 1.0;
    }
    let w = z.inv();
    let w2 = w * w;
    // Bernoulli terms B_{2k}/(2k) for k = 1..7
    const B: [f64; 7] = [
        1.0 / 12.0,
        -1.0 / 120.0,
        1.0 / 252.0,
        -1.0 / 240.0,
        1.0 / 132.0,
        -691.0 / 32_760.0,
        1.0 / 12.0,
    ];
    let mut series = C64::new(0.0, 0.0);
    let mut p = w2;
    for b in B {
        series += p * b;
        p *= w2;
    }
    acc + z.ln() - w * 0.5 - series
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn gamma_at_integers_and_half() {
        let mut fact = 1.0;
        for n in 1..20 {
            let g = gamma(r(n as f64));
            assert!((g.re / fact - 1.0).abs() < 1e-13, "n={n}");
            fact *= n as f64;
        }
        assert!((gamma(r(0.5)).re - PI.sqrt()).abs() < 1e-14);
        assert!((gamma(r(-0.5)).re + 2.0 * PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn reciprocal_gamma_poles() {
        for k in 0..5 {
            assert_eq!(rgamma(r(-(k as f64))), r(0.0));
        }
        assert!((rgamma(r(-0.5)) * gamma(r(-0.5)) - 1.0).norm() < 1e-14);
    }

    #[test]
    fn gamma_recurrence_complex() {
        for z in [C64::new(0.3, 2.0), C64::new(-2.7, 0.4), C64::new(5.0, -3.0)] {
            let lhs = gamma(z + 1.0);
            let rhs = z * gamma(z);
            assert!((lhs - rhs).norm() < 1e-13 * rhs.norm(), "{z}");
        }
    }

    #[test]
    fn digamma_values() {
        let euler = 0.577_215_664_901_532_9;
        assert!((digamma(r(1.0)).re + euler).abs() < 1e-14);
        assert!((digamma(r(0.5)).re + euler + 2.0 * 2f64.ln()).abs() < 1e-14);
        let z = C64::new(0.2, 1.3);
        assert!((digamma(z + 1.0) - digamma(z) - z.inv()).norm() < 1e-13);
        let z = C64::new(-3.3, 0.1);
        assert!((digamma(z + 1.0) - digamma(z) - z.inv()).norm() < 1e-12);
    }
}
