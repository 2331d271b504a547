//! Truncated real Taylor series ("jets") in a local variable `h`.
//!
//! Used to apply `d/du` with `u = cosh r` exactly to any order, including at
//! the removable singularities at `r = 0`.

#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    /// `coeffs[k]` multiplies `h^k`.
    pub coeffs: Vec<f64>,
}

impl Jet {
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn constant(c: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order];
        coeffs[0] = c;
        Self { coeffs }
    }

    /// `x0 + h`.
    pub fn variable(x0: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order];
        coeffs[0] = x0;
        if order > 1 {
            coeffs[1] = 1.0;
        }
        Self { coeffs }
    }

    /// `sinh(s·(x0 + h))`.
    pub fn sinh_scaled(x0: f64, s: f64, order: usize) -> Self {
        let (sh, ch) = ((s * x0).sinh(), (s * x0).cosh());
        let mut coeffs = Vec::with_capacity(order);
        let mut p = 1.0;
        for k in 0..order {
            coeffs.push(if k % 2 == 0 { sh } else { ch } * p);
            p *= s / (k + 1) as f64;
        }
        Self { coeffs }
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self { coeffs: self.coeffs[..order.min(self.order())].to_vec() }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn sub(&self, other: &Jet) -> Self {
        let n = self.order().min(other.order());
        Self { coeffs: (0..n).map(|k| self.coeffs[k] - other.coeffs[k]).collect() }
    }

    pub fn mul(&self, other: &Jet) -> Self {
        let n = self.order().min(other.order());
        let mut coeffs = vec![0.0; n];
        for (i, &a) in self.coeffs.iter().take(n).enumerate() {
            for (j, &b) in other.coeffs.iter().take(n - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self { coeffs }
    }

    /// `d/dh`; the order drops by one.
    pub fn derivative(&self) -> Self {
        Self { coeffs: self.coeffs.iter().enumerate().skip(1).map(|(k, &c)| k as f64 * c).collect() }
    }

    /// Series quotient. If the denominator starts with `s` exact zeros the
    /// numerator must too; both are shifted and the order drops by `s`.
    pub fn div(&self, den: &Jet) -> Self {
        let shift = den.coeffs.iter().take_while(|&&c| c == 0.0).count();
        let num = &self.coeffs[shift.min(self.order())..];
        let den = &den.coeffs[shift.min(den.order())..];
        let n = num.len().min(den.len());
        let mut q = vec![0.0; n];
        for k in 0..n {
            let mut acc = num[k];
            for j in 1..=k {
                acc -= den[j] * q[k - j];
            }
            q[k] = acc / den[0];
        }
        Self { coeffs: q }
    }

    /// Horner evaluation at `h`.
    pub fn eval(&self, h: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * h + c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sinc_like_quotient_at_zero() {
        // h / sinh(h/2) = 2 - h²/12 + 7h⁴/2880 - …
        let n = 12;
        let q = Jet::variable(0.0, n).div(&Jet::sinh_scaled(0.0, 0.5, n));
        assert_eq!(q.order(), n - 1);
        assert!((q.coeffs[0] - 2.0).abs() < 1e-15);
        assert!((q.coeffs[2] + 1.0 / 12.0).abs() < 1e-15);
        assert!((q.coeffs[4] - 7.0 / 2880.0).abs() < 1e-15);
        let h: f64 = 0.3;
        assert!((q.eval(h) - h / (h / 2.0).sinh()).abs() < 1e-14);
    }

    #[test]
    fn derivative_of_quotient_away_from_zero() {
        let x0: f64 = 1.3;
        let q = Jet::variable(x0, 4).div(&Jet::sinh_scaled(x0, 1.0, 4));
        let d = q.derivative();
        let expected = 1.0 / x0.sinh() - x0 * x0.cosh() / x0.sinh().powi(2);
        assert!((d.coeffs[0] - expected).abs() < 1e-14);
    }
}
