//! Free-group words, conjugacy classes and the Poincaré exponent.
//!
//! Letters are signed generator indices: `+k` is γ_k and `-k` its inverse.
//! Within one length, classes are ordered lexicographically on the signed
//! indices, so `-2 < -1 < 1 < 2`.
//!
//! Classes are enumerated as necklaces over the alphabet of `2g` letters with
//! the Fredricksen–Kessler–Maiorana algorithm, pruning prefixes that contain
//! a cancelling pair. A necklace of period `p` and length `n` is the
//! primitive root of length `p` repeated `j = n/p` times.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::moebius::{GeodesicInvariants, MoebiusMap};
use crate::{Error, Result};

/// Default cap on the number of words or classes materialised at once.
pub const DEFAULT_MEMORY_BUDGET: u64 = 10_000_000;
/// Default bracket width accepted by [`estimate_delta`].
pub const DEFAULT_DELTA_TOLERANCE: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GroupWord {
    pub letters: Vec<i32>,
}

impl GroupWord {
    /// Checked constructor: letters must be nonzero and freely reduced.
    pub fn new(letters: Vec<i32>) -> Result<Self> {
        if letters.contains(&0) {
            return Err(Error::InvalidInput("letter 0 is not a generator".into()));
        }
        let w = Self { letters };
        if !w.is_reduced() {
            return Err(Error::InvalidInput(format!("word {w} is not reduced")));
        }
        Ok(w)
    }

    /// No reducedness check; used for the evaluation of arbitrary products.
    pub fn from_letters_unchecked(letters: Vec<i32>) -> Self {
        Self { letters }
    }

    pub fn empty() -> Self {
        Self { letters: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|p| p[0] != -p[1])
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_reduced()
            && match (self.letters.first(), self.letters.last()) {
                (Some(f), Some(l)) => self.letters.len() == 1 || *f != -*l,
                _ => true,
            }
    }

    pub fn inverse(&self) -> Self {
        Self { letters: self.letters.iter().rev().map(|x| -x).collect() }
    }

    pub fn rotate(&self, k: usize) -> Self {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let k = k % letters.len();
            letters.rotate_left(k);
        }
        Self { letters }
    }

    pub fn max_index(&self) -> i32 {
        self.letters.iter().map(|x| x.abs()).max().unwrap_or(0)
    }
}

/// `a b c …` for generators, upper case for inverses; `g27`/`G27` past 26.
impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        for &x in &self.letters {
            let k = x.unsigned_abs();
            if k <= 26 {
                let base = if x > 0 { b'a' } else { b'A' };
                write!(f, "{}", (base + (k - 1) as u8) as char)?;
            } else if x > 0 {
                write!(f, "g{k}")?;
            } else {
                write!(f, "G{k}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyClass {
    /// Lexicographically minimal cyclically reduced rotation.
    pub representative: GroupWord,
    pub primitive: bool,
    /// Power index: the representative is its primitive root repeated `j` times.
    pub j: u32,
    pub word_length: usize,
}

impl ConjugacyClass {
    pub fn primitive_root(&self) -> GroupWord {
        let p = self.word_length / self.j as usize;
        GroupWord::from_letters_unchecked(self.representative.letters[..p].to_vec())
    }
}

/// Number of cyclically reduced words of length `d` in the free group of rank `g`.
fn cyclically_reduced_count(g: u32, d: u32) -> u128 {
    let g = g as u128;
    let base = (2 * g - 1).pow(d);
    let sign_term = if d.is_multiple_of(2) { g - 1 } else { 0 };
    let sub = if d % 2 == 1 { g - 1 } else { 0 };
    base + sign_term + g - sub
}

fn euler_phi(mut n: u32) -> u32 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Exact number of conjugacy classes of cyclically reduced length `n`.
pub fn class_count_of_length(g: u32, n: u32) -> u128 {
    let mut total: u128 = 0;
    for d in 1..=n {
        if n.is_multiple_of(d) {
            total += euler_phi(n / d) as u128 * cyclically_reduced_count(g, d);
        }
    }
    total / n as u128
}

pub fn class_count(g: u32, max_len: u32) -> u128 {
    (1..=max_len).map(|n| class_count_of_length(g, n)).sum()
}

/// Number of nontrivial reduced words of length at most `max_len`.
pub fn reduced_word_count(g: u32, max_len: u32) -> u128 {
    let g = g as u128;
    (1..=max_len).map(|k| 2 * g * (2 * g - 1).pow(k - 1)).sum()
}

fn code_to_letter(code: usize, g: usize) -> i32 {
    if code < g {
        code as i32 - g as i32
    } else {
        (code - g) as i32 + 1
    }
}

struct Fkm<'a> {
    n: usize,
    g: usize,
    a: Vec<usize>,
    out: &'a mut Vec<ConjugacyClass>,
}

impl Fkm<'_> {
    fn inverse_code(&self, c: usize) -> usize {
        2 * self.g - 1 - c
    }

    fn run(&mut self, t: usize, p: usize) {
        if t > self.n {
            if self.n.is_multiple_of(p) && (self.n == 1 || self.a[self.n] != self.inverse_code(self.a[1])) {
                let letters = self.a[1..=self.n].iter().map(|&c| code_to_letter(c, self.g)).collect();
                let j = (self.n / p) as u32;
                self.out.push(ConjugacyClass {
                    representative: GroupWord { letters },
                    primitive: j == 1,
                    j,
                    word_length: self.n,
                });
            }
            return;
        }
        let k = 2 * self.g;
        let start = self.a[t - p];
        for c in start..k {
            if t > 1 && c == self.inverse_code(self.a[t - 1]) {
                continue;
            }
            self.a[t] = c;
            self.run(t + 1, if c == start { p } else { t });
        }
    }
}

/// All conjugacy classes of nontrivial elements with cyclically reduced
/// length at most `max_len`, sorted by (length, lexicographic).
pub fn enumerate_classes(g: usize, max_len: usize) -> Result<Vec<ConjugacyClass>> {
    enumerate_classes_with_budget(g, max_len, DEFAULT_MEMORY_BUDGET)
}

pub fn enumerate_classes_with_budget(g: usize, max_len: usize, budget: u64) -> Result<Vec<ConjugacyClass>> {
    if g == 0 || max_len == 0 {
        return Err(Error::InvalidInput("rank and word length must be at least 1".into()));
    }
    let count = class_count(g as u32, max_len as u32);
    if count > budget as u128 {
        return Err(Error::CutoffTooLarge { count, budget });
    }
    let mut out = Vec::with_capacity(count as usize);
    for n in 1..=max_len {
        let mut fkm = Fkm { n, g, a: vec![0; n + 1], out: &mut out };
        fkm.run(1, 1);
    }
    debug_assert_eq!(out.len() as u128, count);
    Ok(out)
}

fn check_index(x: i32, rank: usize) -> Result<usize> {
    let k = x.unsigned_abs() as usize;
    if k == 0 || k > rank {
        Err(Error::IndexOutOfRange { index: x, rank })
    } else {
        Ok(k - 1)
    }
}

/// Ordered product of generators; unreduced input is multiplied as written.
/// The sign of the product is kept.
pub fn evaluate_word(generators: &[MoebiusMap], w: &GroupWord) -> Result<MoebiusMap> {
    let inverses: Vec<MoebiusMap> = generators.iter().map(|g| g.inverse()).collect();
    let mut acc = MoebiusMap::identity();
    for (i, &x) in w.letters.iter().enumerate() {
        let k = check_index(x, generators.len())?;
        let m = if x > 0 { generators[k] } else { inverses[k] };
        acc = acc * m;
        if i % 8 == 7 {
            acc = acc.repair_determinant();
        }
    }
    Ok(acc.repair_determinant())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub class: ConjugacyClass,
    pub invariants: GeodesicInvariants,
}

/// Conjugacy classes up to a cutoff together with their geodesic data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassTable {
    pub rank: usize,
    pub cutoff_l: usize,
    pub records: Vec<ClassRecord>,
}

impl ClassTable {
    pub fn build(generators: &[MoebiusMap], max_len: usize) -> Result<Self> {
        Self::build_with_budget(generators, max_len, DEFAULT_MEMORY_BUDGET)
    }

    /// Fails with `NotLoxodromic` if any class is not loxodromic.
    pub fn build_with_budget(generators: &[MoebiusMap], max_len: usize, budget: u64) -> Result<Self> {
        let classes = enumerate_classes_with_budget(generators.len(), max_len, budget)?;
        let invariants: Vec<Result<GeodesicInvariants>> = classes
            .par_iter()
            .map(|c| evaluate_word(generators, &c.representative)?.geodesic_invariants())
            .collect();
        let records = classes
            .into_iter()
            .zip(invariants)
            .map(|(class, inv)| Ok(ClassRecord { class, invariants: inv? }))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { rank: generators.len(), cutoff_l: max_len, records })
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn min_length(&self) -> Option<f64> {
        self.records.iter().map(|r| r.invariants.length).reduce(f64::min)
    }

    pub const CSV_HEADER: &'static str = "word,length,j,primitive,ell,theta,q_re,q_im";

    pub fn csv_rows(&self) -> impl Iterator<Item = String> + '_ {
        self.records.iter().map(|r| {
            let inv = &r.invariants;
            format!(
                "{},{},{},{},{},{},{},{}",
                r.class.representative,
                r.class.word_length,
                r.class.j,
                r.class.primitive,
                inv.length,
                inv.holonomy,
                inv.multiplier.re,
                inv.multiplier.im
            )
        })
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from(Self::CSV_HEADER);
        s.push('\n');
        for row in self.csv_rows() {
            s.push_str(&row);
            s.push('\n');
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoincareEstimate {
    /// Exponent shifted by `-n` (`n = 1` on ℍ³), so a cyclic group gives -1.
    pub delta_hat: f64,
    pub bracket: (f64, f64),
    pub cutoff_l: usize,
    pub method: String,
    /// Whether the bracket width is within the requested tolerance.
    pub converged: bool,
    /// Crossing point of each consecutive shell pair `(k, k+1)`, `k = 1..L-1`.
    pub shell_crossings: Vec<f64>,
}

/// Displacements `d(o, w·o)`, `o = (1, 0)`, of every reduced word, grouped
/// by length `1..=max_len` and listed in lexicographic order within a shell.
pub fn shell_displacements(generators: &[MoebiusMap], max_len: usize, budget: u64) -> Result<Vec<Vec<f64>>> {
    let g = generators.len();
    if g == 0 || max_len == 0 {
        return Err(Error::InvalidInput("rank and word length must be at least 1".into()));
    }
    let count = reduced_word_count(g as u32, max_len as u32);
    if count > budget as u128 {
        return Err(Error::CutoffTooLarge { count, budget });
    }
    let mut letters: Vec<MoebiusMap> = Vec::with_capacity(2 * g);
    for code in 0..2 * g {
        let x = code_to_letter(code, g);
        let m = generators[x.unsigned_abs() as usize - 1];
        letters.push(if x > 0 { m } else { m.inverse() });
    }
    let subtrees: Vec<Vec<Vec<f64>>> = (0..2 * g)
        .into_par_iter()
        .map(|first| {
            let mut shells = vec![Vec::new(); max_len];
            let mut stack = vec![(letters[first], first, 1usize)];
            while let Some((m, last, depth)) = stack.pop() {
                shells[depth - 1].push(displacement_from_origin(&m));
                if depth < max_len {
                    // reversed so the stack pops in lexicographic order
                    for code in (0..2 * g).rev() {
                        if code == 2 * g - 1 - last {
                            continue;
                        }
                        let mut next = m * letters[code];
                        if depth % 8 == 7 {
                            next = next.repair_determinant();
                        }
                        stack.push((next, code, depth + 1));
                    }
                }
            }
            shells
        })
        .collect();
    let mut shells = vec![Vec::new(); max_len];
    for sub in subtrees {
        for (k, v) in sub.into_iter().enumerate() {
            shells[k].extend(v);
        }
    }
    Ok(shells)
}

/// `d(o, M·o)` from `cosh d = ‖M‖²_F / 2`, written as
/// `sinh²(d/2) = (‖M‖²_F - 2)/4`.
pub fn displacement_from_origin(m: &MoebiusMap) -> f64 {
    let f2 = m.a.norm_sqr() + m.b.norm_sqr() + m.c.norm_sqr() + m.d.norm_sqr();
    2.0 * ((f2 - 2.0).max(0.0) / 4.0).sqrt().asinh()
}

/// `log S_s(k) = log Σ_{|w| = k} exp(-(s+1) r_w)` for each shell.
pub fn shell_log_sums(shells: &[Vec<f64>], s: f64) -> Vec<f64> {
    shells.iter().map(|r| log_sum_exp(r.iter().map(|&x| -(s + 1.0) * x))).collect()
}

fn log_sum_exp<I: Iterator<Item = f64> + Clone>(xs: I) -> f64 {
    let m = xs.clone().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return m;
    }
    let s = crate::summation::sum_f64(xs.map(|x| (x - m).exp()));
    m + s.ln()
}

fn shell_growth(lower: &[f64], upper: &[f64], s: f64) -> f64 {
    let a = log_sum_exp(lower.iter().map(|&x| -(s + 1.0) * x));
    let b = log_sum_exp(upper.iter().map(|&x| -(s + 1.0) * x));
    b - a
}

/// Zero of `s ↦ log(S_s(k+1)/S_s(k))` on `[-1, ∞)` by bisection.
fn growth_crossing(lower: &[f64], upper: &[f64]) -> Result<f64> {
    let f = |s: f64| shell_growth(lower, upper, s);
    let mut lo = -1.0;
    if f(lo) <= 0.0 {
        return Ok(lo);
    }
    let mut hi = 0.0;
    while f(hi) > 0.0 {
        hi = 2.0 * hi + 1.0;
        if hi > 1e6 {
            return Err(Error::NonConvergent("shell growth stays positive".into()));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

pub fn estimate_delta(generators: &[MoebiusMap], max_len: usize) -> Result<PoincareEstimate> {
    estimate_delta_with(generators, max_len, DEFAULT_DELTA_TOLERANCE, DEFAULT_MEMORY_BUDGET)
}

/// Shell-bisection estimate of the shifted Poincaré exponent.
///
/// The estimate is the crossing of the last shell pair `(L-1, L)`; the
/// bracket spans it and the crossing of `(L-2, L-1)`. A bracket wider than
/// `tolerance` is returned with `converged = false`. Accuracy is reported
/// rather than guaranteed; a transfer-operator method would do better.
pub fn estimate_delta_with(
    generators: &[MoebiusMap],
    max_len: usize,
    tolerance: f64,
    budget: u64,
) -> Result<PoincareEstimate> {
    if max_len < 4 {
        return Err(Error::NonConvergent(format!("need at least 4 word-length shells, got {max_len}")));
    }
    let shells = shell_displacements(generators, max_len, budget)?;
    let crossings = shells
        .windows(2)
        .map(|p| growth_crossing(&p[0], &p[1]))
        .collect::<Result<Vec<_>>>()?;
    let last = crossings[crossings.len() - 1];
    let prev = crossings[crossings.len() - 2];
    let bracket = (last.min(prev), last.max(prev));
    Ok(PoincareEstimate {
        delta_hat: last,
        bracket,
        cutoff_l: max_len,
        method: "shell-bisection".into(),
        converged: bracket.1 - bracket.0 <= tolerance,
        shell_crossings: crossings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::C64;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn w(v: &[i32]) -> GroupWord {
        GroupWord::from_letters_unchecked(v.to_vec())
    }

    fn brute_force(g: i32, max_len: usize) -> BTreeSet<Vec<i32>> {
        let alphabet: Vec<i32> = (-g..=g).filter(|&x| x != 0).collect();
        let mut frontier: Vec<Vec<i32>> = vec![vec![]];
        let mut out = BTreeSet::new();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for word in &frontier {
                for &x in &alphabet {
                    if word.last() == Some(&-x) {
                        continue;
                    }
                    let mut v = word.clone();
                    v.push(x);
                    let mut c = v.clone();
                    while c.len() > 1 && c[0] == -c[c.len() - 1] {
                        c.remove(0);
                        c.pop();
                    }
                    let canon = (0..c.len())
                        .map(|k| {
                            let mut r = c.clone();
                            r.rotate_left(k);
                            r
                        })
                        .min()
                        .unwrap();
                    out.insert(canon);
                    next.push(v);
                }
            }
            frontier = next;
        }
        out
    }

    #[test]
    fn rank_two_length_one() {
        let c = enumerate_classes(2, 1).unwrap();
        let words: Vec<_> = c.iter().map(|x| x.representative.letters.clone()).collect();
        assert_eq!(words, vec![vec![-2], vec![-1], vec![1], vec![2]]);
        assert!(c.iter().all(|x| x.primitive && x.j == 1));
    }

    #[test]
    fn rank_two_length_two() {
        let c = enumerate_classes(2, 2).unwrap();
        assert_eq!(c.len(), 12);
        let squares: Vec<_> = c.iter().filter(|x| x.j == 2).map(|x| x.representative.letters.clone()).collect();
        assert_eq!(squares, vec![vec![-2, -2], vec![-1, -1], vec![1, 1], vec![2, 2]]);
        assert_eq!(c.iter().filter(|x| x.word_length == 2 && x.primitive).count(), 4);
    }

    #[test]
    fn rank_one_powers() {
        let c = enumerate_classes(1, 3).unwrap();
        let got: Vec<_> = c.iter().map(|x| (x.representative.letters.clone(), x.j)).collect();
        assert_eq!(
            got,
            vec![
                (vec![-1], 1),
                (vec![1], 1),
                (vec![-1, -1], 2),
                (vec![1, 1], 2),
                (vec![-1, -1, -1], 3),
                (vec![1, 1, 1], 3)
            ]
        );
    }

    #[test]
    fn matches_brute_force() {
        for (g, l) in [(2, 6), (3, 4), (1, 5)] {
            let fast: BTreeSet<Vec<i32>> =
                enumerate_classes(g as usize, l).unwrap().into_iter().map(|c| c.representative.letters).collect();
            assert_eq!(fast, brute_force(g, l), "g={g} L={l}");
            assert_eq!(fast.len() as u128, class_count(g as u32, l as u32));
        }
    }

    #[test]
    fn sorted_and_cyclically_reduced() {
        let c = enumerate_classes(2, 6).unwrap();
        for p in c.windows(2) {
            let a = (&p[0].word_length, &p[0].representative.letters);
            let b = (&p[1].word_length, &p[1].representative.letters);
            assert!(a < b);
        }
        for x in &c {
            assert!(x.representative.is_cyclically_reduced());
            let root = x.primitive_root();
            let rebuilt: Vec<i32> = root.letters.iter().cycle().take(x.word_length).copied().collect();
            assert_eq!(rebuilt, x.representative.letters);
        }
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            enumerate_classes_with_budget(2, 10, 100),
            Err(Error::CutoffTooLarge { budget: 100, .. })
        ));
        assert!(class_count(2, 16) < DEFAULT_MEMORY_BUDGET as u128);
    }

    fn diag(x: f64) -> MoebiusMap {
        MoebiusMap::diagonal(C64::new(x, 0.0))
    }

    #[test]
    fn evaluate_examples() {
        let gens = [diag(2.0), MoebiusMap::new(C64::new(2.0, 0.0), C64::new(1.0, 0.0), C64::new(1.0, 0.0), C64::new(1.0, 0.0)).unwrap()];
        assert_eq!(evaluate_word(&gens, &GroupWord::empty()).unwrap(), MoebiusMap::identity());
        assert!(evaluate_word(&gens, &w(&[1, -1])).unwrap().max_abs_diff(&MoebiusMap::identity()) < 1e-15);
        assert!(evaluate_word(&gens, &w(&[1, 1])).unwrap().max_abs_diff(&diag(4.0)) < 1e-15);
        assert_eq!(evaluate_word(&gens, &w(&[3])), Err(Error::IndexOutOfRange { index: 3, rank: 2 }));
    }

    #[test]
    fn word_display() {
        assert_eq!(w(&[1, -2, 2]).to_string(), "aBb");
        assert_eq!(GroupWord::empty().to_string(), "e");
        assert!(GroupWord::new(vec![1, -1]).is_err());
    }

    #[test]
    fn cyclic_group_delta_is_minus_one() {
        let est = estimate_delta(&[diag(2.0)], 6).unwrap();
        assert!((est.delta_hat + 1.0).abs() < 1e-12);
        assert!(est.bracket.0 <= -1.0 + 1e-12 && est.bracket.1 >= -1.0 - 1e-12);
    }

    #[test]
    fn short_cutoff_is_rejected() {
        assert!(matches!(estimate_delta(&[diag(2.0)], 2), Err(Error::NonConvergent(_))));
    }

    fn separated_pair() -> Vec<MoebiusMap> {
        use crate::moebius::SpherePoint;
        vec![
            MoebiusMap::from_fixed_points(SpherePoint::Finite(C64::new(0.0, 0.0)), SpherePoint::Infinity, C64::new(30.0, 0.0)).unwrap(),
            MoebiusMap::from_fixed_points(SpherePoint::Finite(C64::new(1.0, 0.0)), SpherePoint::Finite(C64::new(-1.0, 0.0)), C64::new(30.0, 0.0))
                .unwrap(),
        ]
    }

    #[test]
    fn separated_group_has_negative_delta() {
        let est = estimate_delta(&separated_pair(), 8).unwrap();
        assert!(est.delta_hat < -0.05, "{est:?}");
        assert!(est.bracket.0 <= est.delta_hat && est.delta_hat <= est.bracket.1);
    }

    #[test]
    fn table_csv_shape() {
        let t = ClassTable::build(&separated_pair(), 2).unwrap();
        let csv = t.to_csv();
        assert_eq!(csv.lines().count(), 13);
        assert!(csv.starts_with(ClassTable::CSV_HEADER));
    }

    proptest! {
        #[test]
        fn rotations_share_invariants(idx in 0usize..200, k in 0usize..8) {
            let gens = separated_pair();
            let classes = enumerate_classes(2, 5).unwrap();
            let c = &classes[idx % classes.len()];
            let a = evaluate_word(&gens, &c.representative).unwrap().geodesic_invariants().unwrap();
            let b = evaluate_word(&gens, &c.representative.rotate(k)).unwrap().geodesic_invariants().unwrap();
            prop_assert!((a.length - b.length).abs() < 1e-10 * a.length.max(1.0));
            prop_assert!((a.multiplier - b.multiplier).norm() < 1e-10);
        }

        #[test]
        fn shell_sums_decrease_in_s(k in 0usize..6, s in -1.0f64..1.0, ds in 0.01f64..1.0) {
            let shells = shell_displacements(&separated_pair(), 6, DEFAULT_MEMORY_BUDGET).unwrap();
            let a = shell_log_sums(&shells, s)[k];
            let b = shell_log_sums(&shells, s + ds)[k];
            prop_assert!(b < a);
        }
    }
}
