//! Minimum-weight searches shared by classical and CSS distance computations.
//!
//! A search looks for the lightest `v` with `checks · v = 0` that is
//! nontrivial: `v ≠ 0` when no test matrix is given, otherwise
//! `tests · v ≠ 0`. For a CSS code, `checks = H_X` and `tests` = a basis of
//! X logicals gives the Z distance.

use std::collections::HashMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::gf2::{BinaryMatrix, BitVec};

/// A distance value; `Infinite` marks a code with no nontrivial words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

/// Upper limit on stored partial sums in a meet-in-the-middle table.
pub const DEFAULT_TABLE_LIMIT: u64 = 30_000_000;
/// Largest kernel dimension enumerated exhaustively.
pub const SPAN_LIMIT: usize = 28;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    /// Lightest nontrivial word, with its support.
    Found { weight: usize, witness: Vec<usize> },
    /// Every word of weight below `min_weight` was excluded; none found yet.
    Exhausted { min_weight: usize },
    /// The kernel holds no nontrivial word at all.
    Empty,
}

/// Per-column syndromes laid out for fast accumulation.
struct Columns {
    hw: usize,
    lw: usize,
    data: Vec<u64>,
}

impl Columns {
    fn new(checks: &BinaryMatrix, tests: Option<&BinaryMatrix>) -> Self {
        let ct = checks.transpose();
        let lt = tests.map(|t| t.transpose());
        let hw = ct.stride();
        let lw = lt.as_ref().map_or(0, |t| t.stride());
        let n = checks.cols();
        let mut data = Vec::with_capacity(n * (hw + lw));
        for j in 0..n {
            data.extend_from_slice(ct.row_words(j));
            if let Some(t) = &lt {
                data.extend_from_slice(t.row_words(j));
            }
        }
        Columns { hw, lw, data }
    }

    fn width(&self) -> usize {
        self.hw + self.lw
    }

    fn col(&self, j: usize) -> &[u64] {
        let w = self.width();
        &self.data[j * w..(j + 1) * w]
    }
}

fn hash_words(words: &[u64]) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for &w in words {
        h ^= w;
        h = h.wrapping_mul(0x1000_0000_01b3).rotate_left(29);
    }
    h
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
        if r > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    r as u64
}

/// Visits every `size`-subset of `0..n` in lexicographic order together with
/// the XOR of its column syndromes.
fn for_each_subset(cols: &Columns, n: usize, size: usize, mut f: impl FnMut(&[usize], &[u64])) {
    let width = cols.width();
    if size == 0 {
        f(&[], &vec![0u64; width]);
        return;
    }
    let mut idx: Vec<usize> = Vec::with_capacity(size);
    let mut acc: Vec<Vec<u64>> = vec![vec![0u64; width]; size + 1];
    fn rec(
        cols: &Columns,
        n: usize,
        size: usize,
        from: usize,
        idx: &mut Vec<usize>,
        acc: &mut Vec<Vec<u64>>,
        f: &mut dyn FnMut(&[usize], &[u64]),
    ) {
        let depth = idx.len();
        if depth == size {
            f(idx, &acc[depth]);
            return;
        }
        let remaining = size - depth;
        for j in from..=n - remaining {
            let (lo, hi) = acc.split_at_mut(depth + 1);
            for ((d, s), c) in hi[0].iter_mut().zip(&lo[depth]).zip(cols.col(j)) {
                *d = s ^ c;
            }
            idx.push(j);
            rec(cols, n, size, j + 1, idx, acc, f);
            idx.pop();
        }
    }
    if n < size {
        return;
    }
    rec(cols, n, size, 0, &mut idx, &mut acc, &mut f);
}

struct Table {
    size: usize,
    width: usize,
    hw: usize,
    heads: HashMap<u64, u32>,
    next: Vec<u32>,
    sums: Vec<u64>,
    subsets: Vec<u32>,
}

const NIL: u32 = u32::MAX;

impl Table {
    fn build(cols: &Columns, n: usize, size: usize) -> Table {
        let count = binomial(n, size) as usize;
        let width = cols.width();
        let mut t = Table {
            size,
            width,
            hw: cols.hw,
            heads: HashMap::with_capacity(count),
            next: Vec::with_capacity(count),
            sums: Vec::with_capacity(count * width),
            subsets: Vec::with_capacity(count * size),
        };
        for_each_subset(cols, n, size, |idx, sum| {
            let id = t.next.len() as u32;
            let key = hash_words(&sum[..t.hw]);
            let head = t.heads.entry(key).or_insert(NIL);
            t.next.push(*head);
            *head = id;
            t.sums.extend_from_slice(sum);
            t.subsets.extend(idx.iter().map(|&i| i as u32));
        });
        t
    }

    /// An entry whose check part equals `sum`'s and that combines with it
    /// into a nontrivial word.
    fn partner(&self, sum: &[u64], idx: &[usize], has_tests: bool) -> Option<Vec<usize>> {
        let mut id = *self.heads.get(&hash_words(&sum[..self.hw]))?;
        while id != NIL {
            let i = id as usize;
            let s = &self.sums[i * self.width..(i + 1) * self.width];
            if s[..self.hw] == sum[..self.hw] {
                let sub = &self.subsets[i * self.size..(i + 1) * self.size];
                let nontrivial = if has_tests {
                    s[self.hw..] != sum[self.hw..]
                } else {
                    sub.len() != idx.len() || sub.iter().zip(idx).any(|(&a, &b)| a as usize != b)
                };
                if nontrivial {
                    let mut v: Vec<usize> = idx.to_vec();
                    for &a in sub {
                        let a = a as usize;
                        if let Some(p) = v.iter().position(|&x| x == a) {
                            v.swap_remove(p);
                        } else {
                            v.push(a);
                        }
                    }
                    v.sort_unstable();
                    return Some(v);
                }
            }
            id = self.next[i];
        }
        None
    }
}

/// Exact search by increasing weight using meet-in-the-middle over column
/// subsets. Stops at `max_weight` or when a table would exceed `table_limit`.
pub fn support_search(
    checks: &BinaryMatrix,
    tests: Option<&BinaryMatrix>,
    max_weight: usize,
    table_limit: u64,
) -> SearchOutcome {
    let n = checks.cols();
    let cols = Columns::new(checks, tests);
    let has_tests = tests.is_some();
    let mut table: Option<Table> = None;
    for w in 1..=max_weight.min(n) {
        let b = w / 2;
        let a = w - b;
        if binomial(n, b) > table_limit {
            return SearchOutcome::Exhausted { min_weight: w };
        }
        if table.as_ref().is_none_or(|t| t.size != b) {
            table = Some(Table::build(&cols, n, b));
        }
        let t = table.as_ref().unwrap();
        let found = (0..n).into_par_iter().find_map_first(|first| {
            let mut hit = None;
            let mut inner = |idx: &[usize], sum: &[u64]| {
                if hit.is_none() {
                    hit = t.partner(sum, idx, has_tests);
                }
            };
            subsets_with_first(&cols, n, a, first, &mut inner);
            hit
        });
        if let Some(witness) = found {
            return SearchOutcome::Found {
                weight: witness.len(),
                witness,
            };
        }
    }
    SearchOutcome::Exhausted {
        min_weight: max_weight.min(n) + 1,
    }
}

fn subsets_with_first(cols: &Columns, n: usize, size: usize, first: usize, f: &mut dyn FnMut(&[usize], &[u64])) {
    let width = cols.width();
    let mut idx = vec![first];
    let base = cols.col(first).to_vec();
    if size == 1 {
        f(&idx, &base);
        return;
    }
    let mut acc = vec![vec![0u64; width]; size];
    acc[0] = base;
    fn rec(
        cols: &Columns,
        n: usize,
        size: usize,
        idx: &mut Vec<usize>,
        acc: &mut Vec<Vec<u64>>,
        f: &mut dyn FnMut(&[usize], &[u64]),
    ) {
        let depth = idx.len();
        if depth == size {
            f(idx, &acc[depth - 1]);
            return;
        }
        let from = idx[depth - 1] + 1;
        let remaining = size - depth;
        if from + remaining > n {
            return;
        }
        for j in from..=n - remaining {
            let (lo, hi) = acc.split_at_mut(depth);
            for ((d, s), c) in hi[0].iter_mut().zip(&lo[depth - 1]).zip(cols.col(j)) {
                *d = s ^ c;
            }
            idx.push(j);
            rec(cols, n, size, idx, acc, f);
            idx.pop();
        }
    }
    rec(cols, n, size, &mut idx, &mut acc, f);
}

/// Exhaustive enumeration of the span of `basis` (rows), keeping the lightest
/// nontrivial word. Requires `basis.rows() ≤ SPAN_LIMIT`.
pub fn span_search(basis: &BinaryMatrix, tests: Option<&BinaryMatrix>) -> SearchOutcome {
    let k = basis.rows();
    assert!(k <= SPAN_LIMIT, "span too large to enumerate");
    if k == 0 {
        return SearchOutcome::Empty;
    }
    let n = basis.cols();
    let rows: Vec<BitVec> = (0..k).map(|r| basis.row(r)).collect();
    // syndrome of each basis row against the tests, as a bitmask
    let tsyn: Vec<u64> = match tests {
        Some(t) => {
            assert!(t.rows() <= 64, "too many logical tests for span search");
            rows.iter()
                .map(|r| {
                    let s = t.mul_vec(r);
                    s.support().iter().fold(0u64, |acc, &i| acc | (1 << i))
                })
                .collect()
        }
        None => vec![0; k],
    };
    let has_tests = tests.is_some();
    let split = k.min(8);
    let low = k - split;
    let best = (0u64..(1u64 << split))
        .into_par_iter()
        .map(|hi| {
            let mut v = BitVec::zeros(n);
            let mut syn = 0u64;
            for b in 0..split {
                if hi >> b & 1 == 1 {
                    v.xor_assign(&rows[low + b]);
                    syn ^= tsyn[low + b];
                }
            }
            let mut best: Option<(usize, u64)> = None;
            let mut consider = |v: &BitVec, syn: u64, code: u64| {
                let ok = if has_tests { syn != 0 } else { !v.is_zero() };
                if ok {
                    let w = v.weight();
                    if best.is_none_or(|(bw, _)| w < bw) {
                        best = Some((w, code));
                    }
                }
            };
            consider(&v, syn, hi << low);
            let mut gray = 0u64;
            for i in 1u64..(1u64 << low) {
                let bit = i.trailing_zeros() as usize;
                gray ^= 1 << bit;
                v.xor_assign(&rows[bit]);
                syn ^= tsyn[bit];
                consider(&v, syn, (hi << low) | gray);
            }
            best
        })
        .flatten()
        .min();
    match best {
        None => SearchOutcome::Empty,
        Some((weight, code)) => {
            let mut v = BitVec::zeros(n);
            for (b, r) in rows.iter().enumerate() {
                if code >> b & 1 == 1 {
                    v.xor_assign(r);
                }
            }
            SearchOutcome::Found {
                weight,
                witness: v.support(),
            }
        }
    }
}

/// Exact minimum up to `max_weight`, picking support or span enumeration by
/// estimated cost. `kernel` must be a basis of the right kernel of `checks`.
pub fn exact_search(
    checks: &BinaryMatrix,
    kernel: &BinaryMatrix,
    tests: Option<&BinaryMatrix>,
    max_weight: usize,
) -> SearchOutcome {
    let k = kernel.rows();
    if k == 0 {
        return SearchOutcome::Empty;
    }
    let n = checks.cols();
    let span_ok = k <= SPAN_LIMIT && tests.is_none_or(|t| t.rows() <= 64);
    let span_cost = if span_ok { 1u64 << k } else { u64::MAX };
    // largest weight whose support enumeration is still cheaper than the span
    let mut cheap = 0;
    while cheap < max_weight.min(n) {
        let w = cheap + 1;
        let cost = binomial(n, w - w / 2).saturating_add(binomial(n, w / 2));
        if cost > span_cost || binomial(n, w / 2) > DEFAULT_TABLE_LIMIT {
            break;
        }
        cheap = w;
    }
    if cheap > 0 {
        match support_search(checks, tests, cheap, DEFAULT_TABLE_LIMIT) {
            SearchOutcome::Exhausted { .. } if cheap < max_weight.min(n) => {}
            other => return other,
        }
    }
    if span_ok {
        return match span_search(kernel, tests) {
            SearchOutcome::Found { weight, .. } if weight > max_weight => SearchOutcome::Exhausted {
                min_weight: max_weight + 1,
            },
            other => other,
        };
    }
    SearchOutcome::Exhausted { min_weight: cheap + 1 }
}

/// Randomized information-set sampling: permute columns of the kernel basis,
/// row reduce, and keep the lightest nontrivial row. Deterministic in `seed`
/// regardless of thread count.
pub fn information_set_search(
    kernel: &BinaryMatrix,
    tests: Option<&BinaryMatrix>,
    trials: usize,
    seed: u64,
) -> Option<(usize, Vec<usize>)> {
    let n = kernel.cols();
    if kernel.rows() == 0 {
        return None;
    }
    let trivially_ok = |v: &BitVec| match tests {
        Some(t) => !t.mul_vec(v).is_zero(),
        None => !v.is_zero(),
    };
    // the unpermuted basis rows are candidates too
    let mut best: Option<(usize, Vec<usize>)> = None;
    for r in 0..kernel.rows() {
        let v = kernel.row(r);
        if trivially_ok(&v) {
            let w = v.weight();
            if best.as_ref().is_none_or(|(bw, _)| w < *bw) {
                best = Some((w, v.support()));
            }
        }
    }
    let sampled = (0..trials as u64)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial);
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let r = kernel.permute_cols(&perm).rref();
            let mut local: Option<(usize, Vec<usize>)> = None;
            for i in 0..r.rank() {
                let row = r.matrix.row(i);
                let w = row.weight();
                if local.as_ref().is_some_and(|(bw, _)| w >= *bw) {
                    continue;
                }
                let mut v = BitVec::zeros(n);
                for j in row.support() {
                    v.set(perm[j], true);
                }
                if trivially_ok(&v) {
                    local = Some((w, v.support()));
                }
            }
            local
        })
        .flatten()
        .min();
    match (best, sampled) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hamming() -> BinaryMatrix {
        BinaryMatrix::from_rows(&[
            [1u8, 0, 1, 0, 1, 0, 1],
            [0, 1, 1, 0, 0, 1, 1],
            [0, 0, 0, 1, 1, 1, 1],
        ])
    }

    #[test]
    fn hamming_distance_by_both_routes() {
        let h = hamming();
        let g = h.kernel_basis();
        match support_search(&h, None, 5, DEFAULT_TABLE_LIMIT) {
            SearchOutcome::Found { weight, witness } => {
                assert_eq!(weight, 3);
                assert!(h.mul_vec(&BitVec::from_support(7, &witness)).is_zero());
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(span_search(&g, None), SearchOutcome::Found { weight: 3, .. }));
        assert!(matches!(exact_search(&h, &g, None, 7), SearchOutcome::Found { weight: 3, .. }));
    }

    #[test]
    fn budget_below_distance_is_exhausted() {
        let h = hamming();
        let g = h.kernel_basis();
        assert_eq!(
            support_search(&h, None, 2, DEFAULT_TABLE_LIMIT),
            SearchOutcome::Exhausted { min_weight: 3 }
        );
        assert_eq!(exact_search(&h, &g, None, 2), SearchOutcome::Exhausted { min_weight: 3 });
    }

    #[test]
    fn sampling_finds_hamming_distance() {
        let h = hamming();
        let g = h.kernel_basis();
        let (w, _) = information_set_search(&g, None, 100, 7).unwrap();
        assert_eq!(w, 3);
    }

    #[test]
    fn distance_ordering() {
        assert!(Distance::Finite(100) < Distance::Infinite);
        assert_eq!(Distance::Finite(3).min(Distance::Infinite), Distance::Finite(3));
    }
}
