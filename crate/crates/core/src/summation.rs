//! Compensated (Neumaier) summation.
//!
//! Reductions in this crate evaluate terms in parallel into an ordered vector
//! and then fold that vector sequentially, so results are bitwise identical
//! for any thread count.

use crate::C64;

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = KahanSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Componentwise compensated sum of complex numbers.
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexKahanSum {
    re: KahanSum,
    im: KahanSum,
}

impl ComplexKahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: C64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> C64 {
        C64::new(self.re.value(), self.im.value())
    }
}

impl FromIterator<C64> for ComplexKahanSum {
    fn from_iter<I: IntoIterator<Item = C64>>(iter: I) -> Self {
        let mut acc = ComplexKahanSum::new();
        for z in iter {
            acc.add(z);
        }
        acc
    }
}

pub fn sum_f64<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<KahanSum>().value()
}

pub fn sum_c64<I: IntoIterator<Item = C64>>(iter: I) -> C64 {
    iter.into_iter().collect::<ComplexKahanSum>().value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_small_terms() {
        let xs = [1.0, 1e100, 1.0, -1e100];
        assert_eq!(sum_f64(xs), 2.0);
        let naive: f64 = xs.iter().sum();
        assert_eq!(naive, 0.0);
    }

    #[test]
    fn harmonic_partial_sum_is_accurate() {
        let n = 100_000;
        let s = sum_f64((1..=n).rev().map(|k| 1.0 / k as f64));
        let forward = sum_f64((1..=n).map(|k| 1.0 / k as f64));
        assert_eq!(s, forward);
    }

    #[test]
    fn complex_sum_matches_componentwise() {
        let zs = [C64::new(1.0, -1e-20), C64::new(1e16, 1.0), C64::new(-1e16, 0.0)];
        let s = sum_c64(zs);
        assert_eq!(s, C64::new(1.0, 1.0));
    }
}
