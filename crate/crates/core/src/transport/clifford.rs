//! Dense real Clifford algebra on an orthonormal frame.
//!
//! **Sign convention: every frame vector squares to `+1`.** With this choice
//! the adjoint action `V ↦ u V u⁻¹` of the transport element reproduces the
//! tangent-bundle transport matrix column by column; the opposite sign gives
//! its transpose.
//!
//! Blades are indexed by bitmask, bit `k` standing for the `k`-th frame
//! vector (bit 0 is the vertical direction `X` in the half-space model).

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Largest number of generators supported (`2^8 = 256` blades).
pub const MAX_GENERATORS: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CliffordElement {
    /// Number of generating vectors `d + 1`.
    pub generators: usize,
    /// One coefficient per blade, `2^generators` entries.
    pub coeffs: Vec<f64>,
}

/// Sign picked up when the blade product `a·b` is brought to canonical order.
fn reorder_sign(a: usize, b: usize) -> f64 {
    let mut a = a >> 1;
    let mut swaps = 0;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

impl CliffordElement {
    pub fn zero(generators: usize) -> Self {
        assert!(generators <= MAX_GENERATORS, "at most {MAX_GENERATORS} generators supported");
        Self { generators, coeffs: vec![0.0; 1 << generators] }
    }

    pub fn scalar(generators: usize, s: f64) -> Self {
        let mut e = Self::zero(generators);
        e.coeffs[0] = s;
        e
    }

    /// The `k`-th frame vector.
    pub fn basis_vector(generators: usize, k: usize) -> Self {
        let mut e = Self::zero(generators);
        e.coeffs[1 << k] = 1.0;
        e
    }

    pub fn vector(v: &[f64]) -> Self {
        let mut e = Self::zero(v.len());
        for (k, &x) in v.iter().enumerate() {
            e.coeffs[1 << k] = x;
        }
        e
    }

    pub fn scalar_part(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn vector_part(&self) -> Vec<f64> {
        (0..self.generators).map(|k| self.coeffs[1 << k]).collect()
    }

    pub fn grade_part(&self, grade: u32) -> Self {
        let mut e = Self::zero(self.generators);
        for (blade, &c) in self.coeffs.iter().enumerate() {
            if blade.count_ones() == grade {
                e.coeffs[blade] = c;
            }
        }
        e
    }

    /// Reversion: grade `k` picks up `(-1)^{k(k-1)/2}`.
    pub fn reverse(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(blade, &c)| {
                let k = blade.count_ones();
                if (k * k.saturating_sub(1) / 2) % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect();
        Self { generators: self.generators, coeffs }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { generators: self.generators, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.iter().enumerate().all(|(blade, &c)| blade.count_ones() % 2 == 0 || c == 0.0)
    }

    /// Inverse of a versor, `ũ / (u ũ)`. Fails unless `u ũ` is a nonzero scalar.
    pub fn versor_inverse(&self) -> Result<Self> {
        let rev = self.reverse();
        let prod = self * &rev;
        let s = prod.scalar_part();
        let rest: f64 = prod.coeffs[1..].iter().map(|c| c.abs()).sum();
        if s.abs() <= f64::MIN_POSITIVE || rest > 1e-12 * s.abs() {
            return Err(Error::NotInvertible);
        }
        Ok(rev.scale(1.0 / s))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

impl Mul for &CliffordElement {
    type Output = CliffordElement;
    fn mul(self, rhs: &CliffordElement) -> CliffordElement {
        assert_eq!(self.generators, rhs.generators, "mixed algebra dimensions");
        let mut out = CliffordElement::zero(self.generators);
        for (a, &ca) in self.coeffs.iter().enumerate() {
            if ca == 0.0 {
                continue;
            }
            for (b, &cb) in rhs.coeffs.iter().enumerate() {
                if cb == 0.0 {
                    continue;
                }
                out.coeffs[a ^ b] += reorder_sign(a, b) * ca * cb;
            }
        }
        out
    }
}

impl Add for &CliffordElement {
    type Output = CliffordElement;
    fn add(self, rhs: &CliffordElement) -> CliffordElement {
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        CliffordElement { generators: self.generators, coeffs }
    }
}

impl Sub for &CliffordElement {
    type Output = CliffordElement;
    fn sub(self, rhs: &CliffordElement) -> CliffordElement {
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        CliffordElement { generators: self.generators, coeffs }
    }
}

impl Neg for &CliffordElement {
    type Output = CliffordElement;
    fn neg(self) -> CliffordElement {
        self.scale(-1.0)
    }
}

/// `π(u) v = u v u⁻¹`, read off from the grade-one part.
pub fn adjoint_action(u: &CliffordElement, v: &[f64]) -> Result<Vec<f64>> {
    if v.len() != u.generators {
        return Err(Error::InvalidInput(format!("vector of length {} in an algebra on {} generators", v.len(), u.generators)));
    }
    let inv = u.versor_inverse()?;
    let w = &(u * &CliffordElement::vector(v)) * &inv;
    Ok(w.vector_part())
}
