//! Truncation bounds for sums over conjugacy classes beyond a word-length cutoff.
//!
//! Shell `k` (classes of cyclically reduced length `k`) holds at most
//! `N_k = 2g(2g-1)^{k-1}` classes. The smallest translation length in a
//! shell is fitted as `ℓ_min(k) ≈ a + αk` on the last four computed shells
//! and extrapolated. Each quantity supplies a per-class bound `w(ℓ)` that is
//! decreasing in `ℓ`; the tail is `4 Σ_{k>L} N_k w(ℓ_min(k))`.
//!
//! This is a model, not a proof: the factor 4 is a safety margin.

use serde::{Deserialize, Serialize};

use crate::summation::KahanSum;

const SAFETY: f64 = 4.0;
const FIT_SHELLS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailModel {
    pub rank: usize,
    pub cutoff_l: usize,
    pub intercept: f64,
    pub slope: f64,
}

impl TailModel {
    /// Fits the model to `(k, ℓ_min(k))` for `k = 1..=L`.
    pub fn fit(rank: usize, shell_min_lengths: &[f64]) -> Option<Self> {
        let cutoff_l = shell_min_lengths.len();
        if cutoff_l == 0 || rank == 0 {
            return None;
        }
        let start = cutoff_l.saturating_sub(FIT_SHELLS);
        let pts: Vec<(f64, f64)> =
            shell_min_lengths[start..].iter().enumerate().map(|(i, &l)| ((start + i + 1) as f64, l)).collect();
        let (intercept, slope) = if pts.len() == 1 {
            (0.0, pts[0].1 / pts[0].0)
        } else {
            let n = pts.len() as f64;
            let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
            let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
            let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
            let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
            let slope = sxy / sxx;
            (my - slope * mx, slope)
        };
        Some(Self { rank, cutoff_l, intercept, slope })
    }

    pub fn predicted_min_length(&self, k: usize) -> f64 {
        self.intercept + self.slope * k as f64
    }

    fn log_shell_count(&self, k: usize) -> f64 {
        let g = self.rank as f64;
        (2.0 * g).ln() + (k as f64 - 1.0) * (2.0 * g - 1.0).ln()
    }

    /// `4 Σ_{k>L} N_k exp(log_w(ℓ_min(k)))`, or `+∞` when the shell series
    /// does not visibly converge.
    pub fn bound<W: Fn(f64) -> f64>(&self, log_w: W) -> f64 {
        if !(self.slope > 0.0) {
            return f64::INFINITY;
        }
        let mut sum = KahanSum::new();
        let mut prev = f64::INFINITY;
        for k in (self.cutoff_l + 1)..(self.cutoff_l + 100_000) {
            let ell = self.predicted_min_length(k);
            if !(ell > 0.0) {
                return f64::INFINITY;
            }
            let log_term = self.log_shell_count(k) + log_w(ell);
            if log_term > 700.0 {
                return f64::INFINITY;
            }
            let term = log_term.exp();
            sum.add(term);
            if k > self.cutoff_l + 1 && term >= prev && term > 0.0 {
                return f64::INFINITY;
            }
            if term <= 1e-18 * sum.value() || term == 0.0 {
                return SAFETY * sum.value();
            }
            prev = term;
        }
        f64::INFINITY
    }
}

/// `ln(e^{-cℓ} / (1 - e^{-ℓ})²)`: bound on `e^{-Re(λ)ℓ}/D` with `c = 1 + Re λ`.
pub fn log_weight(ell: f64, c: f64) -> f64 {
    -c * ell - 2.0 * (-(-ell).exp()).ln_1p()
}
