//! Groups and helpers shared by the integration tests.
//!
//! The genus-two groups mirror the files in `configs/`.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::time::Instant;

use oddzeta::words::{estimate_delta, ClassTable};
use oddzeta::zograf::SchottkyPoint;
use oddzeta::{PoincareEstimate, TermSet, Variant, C64};

pub struct Fixture {
    pub name: &'static str,
    /// `[μ₁, μ₂, b₂]`.
    pub params: [C64; 3],
}

fn polar(r: f64, t: f64) -> C64 {
    C64::from_polar(r, t)
}

pub fn complex_groups() -> Vec<Fixture> {
    vec![
        Fixture { name: "group_a", params: [polar(33.0, 0.4), polar(33.0, -0.9), C64::new(3.0, 0.5)] },
        Fixture { name: "group_b", params: [polar(40.0, 1.3), polar(35.0, 0.7), C64::new(-2.0, 1.5)] },
        Fixture { name: "group_c", params: [polar(30.0, -2.0), polar(45.0, 2.6), C64::new(0.0, 2.5)] },
    ]
}

pub fn real_group() -> Fixture {
    Fixture { name: "group_real", params: [C64::new(33.0, 0.0), C64::new(36.0, 0.0), C64::new(3.0, 0.0)] }
}

pub const CLASS_CUTOFF: usize = 5;
pub const DELTA_CUTOFF: usize = 8;
pub const INNER_CUTOFF: usize = 30;

pub struct Prepared {
    pub point: SchottkyPoint,
    pub delta: PoincareEstimate,
    pub table: ClassTable,
    /// Wall time of the δ estimate and class enumeration.
    pub setup_secs: f64,
}

impl Fixture {
    pub fn prepare(&self) -> Prepared {
        let start = Instant::now();
        let point = SchottkyPoint::new(self.params.to_vec()).unwrap();
        let delta = estimate_delta(&point.generators, DELTA_CUTOFF).unwrap();
        let table = ClassTable::build(&point.generators, CLASS_CUTOFF).unwrap();
        Prepared { point, delta, table, setup_secs: start.elapsed().as_secs_f64() }
    }
}

impl Prepared {
    pub fn terms(&self, variant: Variant) -> TermSet {
        TermSet::from_table(&self.table, variant, false, Some(self.delta.delta_hat))
    }
}

/// Minimal rotation of a cyclic word under the order `1 < -1 < 2 < -2 < …`.
pub fn canonical_rotation(w: &[i32]) -> Vec<i32> {
    let key = |x: i32| 2 * x.abs() + i32::from(x < 0);
    (0..w.len())
        .map(|k| w[k..].iter().chain(&w[..k]).copied().collect::<Vec<i32>>())
        .min_by_key(|v| v.iter().map(|&x| key(x)).collect::<Vec<_>>())
        .unwrap_or_default()
}

/// Conjugacy classes of cyclically reduced words of each length up to
/// `max_len`, found by listing every word and grouping rotations. Maps each
/// canonical rotation to its power index.
pub fn brute_force_classes(g: i32, max_len: usize) -> BTreeMap<Vec<i32>, u32> {
    let letters: Vec<i32> = (1..=g).flat_map(|k| [k, -k]).collect();
    let mut out = BTreeMap::new();
    let mut words: Vec<Vec<i32>> = vec![vec![]];
    for n in 1..=max_len {
        words = words
            .iter()
            .flat_map(|w| {
                letters.iter().filter(move |&&x| w.last() != Some(&-x)).map(move |&x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
        for w in &words {
            if w[0] == -w[n - 1] {
                continue;
            }
            let period = (1..=n).find(|&p| n % p == 0 && (0..n).all(|i| w[i] == w[(i + p) % n])).unwrap();
            out.insert(canonical_rotation(w), (n / period) as u32);
        }
    }
    out
}
