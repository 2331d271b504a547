//! Globally adaptive 15-point Gauss–Kronrod quadrature.
//!
//! The error estimate follows the QUADPACK recipe: the Gauss/Kronrod
//! difference rescaled by `(200 e / I_asc)^{3/2}` and floored at
//! `50 ε |I|`. Integrands are complex valued; real integrands go through
//! [`integrate_real`].

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::C64;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadratureOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-14,
            rel_tol: 1e-12,
            max_intervals: 2000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult<T> {
    pub value: T,
    pub abs_error: f64,
    pub intervals: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: C64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

fn gauss_kronrod<F: Fn(f64) -> C64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);
    let mut res_k = f_center * WGK[7];
    let mut res_g = f_center * WG[3];
    let mut res_abs = f_center.norm() * WGK[7];
    let mut fv1 = [C64::new(0.0, 0.0); 7];
    let mut fv2 = [C64::new(0.0, 0.0); 7];
    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += (f1 + f2) * WGK[j];
        res_abs += WGK[j] * (f1.norm() + f2.norm());
        if j % 2 == 1 {
            res_g += (f1 + f2) * WG[j / 2];
        }
    }
    let mean = res_k * 0.5;
    let mut res_asc = WGK[7] * (f_center - mean).norm();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).norm() + (fv2[j] - mean).norm());
    }
    let scale = half.abs();
    let value = res_k * half;
    let err = ((res_k - res_g) * half).norm();
    Segment {
        a,
        b,
        value,
        error: rescale_error(err, res_abs * scale, res_asc * scale),
    }
}

/// Integrate a complex-valued `f` over the finite interval `[a, b]`.
pub fn integrate<F: Fn(f64) -> C64>(f: F, a: f64, b: f64, opts: QuadratureOptions) -> QuadratureResult<C64> {
    let first = gauss_kronrod(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(first);
    let mut intervals = 1;
    loop {
        let total: C64 = heap.iter().fold(C64::new(0.0, 0.0), |acc, s| acc + s.value);
        let error: f64 = heap.iter().map(|s| s.error).sum();
        let tol = opts.abs_tol.max(opts.rel_tol * total.norm());
        if error <= tol || intervals >= opts.max_intervals {
            let mut segs: Vec<Segment> = heap.into_vec();
            segs.sort_by(|x, y| x.a.total_cmp(&y.a));
            let value = crate::summation::sum_c64(segs.iter().map(|s| s.value));
            return QuadratureResult {
                value,
                abs_error: error,
                intervals,
                converged: error <= tol,
            };
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval exhausted at machine resolution
            heap.push(Segment { error: 0.0, ..worst });
            intervals += 1;
            continue;
        }
        heap.push(gauss_kronrod(&f, worst.a, mid));
        heap.push(gauss_kronrod(&f, mid, worst.b));
        intervals += 1;
    }
}

/// Integrate over `[a, ∞)` using the map `x = a + s/(1-s)`.
pub fn integrate_to_infinity<F: Fn(f64) -> C64>(f: F, a: f64, opts: QuadratureOptions) -> QuadratureResult<C64> {
    integrate(
        |s| {
            let one_minus = 1.0 - s;
            let x = a + s / one_minus;
            let v = f(x);
            if v == C64::new(0.0, 0.0) {
                v
            } else {
                v / (one_minus * one_minus)
            }
        },
        0.0,
        1.0,
        opts,
    )
}

pub fn integrate_real<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, opts: QuadratureOptions) -> QuadratureResult<f64> {
    let r = integrate(|x| C64::new(f(x), 0.0), a, b, opts);
    QuadratureResult {
        value: r.value.re,
        abs_error: r.abs_error,
        intervals: r.intervals,
        converged: r.converged,
    }
}
