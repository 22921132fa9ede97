#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wtred::chain::ChainComplex;
use wtred::classical::LinearCode;
use wtred::classical_wtred::{reduce_cols, reduce_full, reduce_rows, ReductionOptions};
use wtred::css::CssCode;
use wtred::gf2::BinaryMatrix;
use wtred::tanner::{CheckType, FourCycles, TannerGraph};

pub mod goldens;

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, p: f64) -> BinaryMatrix {
    let mut m = BinaryMatrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, rng.gen_bool(p));
        }
    }
    m
}

/// Rows whose columns are drawn from `ker h`, so `h · outᵀ = 0`.
pub fn orthogonal_rows(rng: &mut impl Rng, h: &BinaryMatrix, rows: usize) -> BinaryMatrix {
    let ker = h.kernel_basis();
    if ker.rows() == 0 {
        return BinaryMatrix::zeros(rows, h.cols());
    }
    random_matrix(rng, rows, ker.rows(), 0.5).mul(&ker)
}

pub fn random_css(seed: u64, max_n: usize) -> CssCode {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(4..=max_n);
    let (rx, rz) = (rng.gen_range(1..=n / 2), rng.gen_range(1..=n / 2));
    let hx = random_matrix(&mut rng, rx, n, 0.4);
    let hz = orthogonal_rows(&mut rng, &hx, rz);
    CssCode::new(hx, hz).unwrap()
}

/// A complex with `dims.len()` spaces starting at degree 0; every boundary
/// is built from the kernel of the one below it.
pub fn random_complex(rng: &mut impl Rng, dims: &[usize]) -> ChainComplex {
    if dims.len() == 1 {
        return ChainComplex::single(0, dims[0]);
    }
    let mut maps: Vec<BinaryMatrix> = Vec::new();
    for k in 1..dims.len() {
        let m = match maps.last() {
            None => random_matrix(rng, dims[0], dims[1], 0.4),
            Some(prev) => orthogonal_rows(rng, prev, dims[k]).transpose(),
        };
        maps.push(m);
    }
    ChainComplex::with_dims(0, dims.to_vec(), maps).unwrap()
}

pub fn exact_distance(h: &BinaryMatrix) -> Option<usize> {
    let c = LinearCode::new(h.clone());
    if c.k() == 0 {
        return None;
    }
    c.min_distance_exact(c.n()).unwrap()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Generic,
    HeavyRows,
    HeavyCols,
}

/// A check matrix with `n ≤ 20` and `1 ≤ k ≤ 10`. Heavy families have every
/// row (or column) of weight at least 4. Every third matrix gets a
/// redundant row appended.
pub fn theorem_input(seed: u64, family: Family) -> BinaryMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let n: usize = rng.gen_range(6..=20);
        let m = rng.gen_range(n.saturating_sub(10).max(4)..=n - 1);
        let mut h = random_matrix(&mut rng, m, n, 0.35);
        for r in 0..m {
            while family == Family::HeavyRows && h.row_weight(r) < 4 {
                h.set(r, rng.gen_range(0..n), true);
            }
        }
        for c in 0..n {
            while family == Family::HeavyCols && h.col(c).weight() < 4 {
                h.set(rng.gen_range(0..m), c, true);
            }
        }
        if h.row_weights().contains(&0) {
            continue;
        }
        if seed % 3 == 0 {
            let extra = h.row(0);
            let mut extra = extra.clone();
            extra.xor_assign(&h.row(m - 1));
            if !extra.is_zero() {
                h = BinaryMatrix::vstack(&[&h, &BinaryMatrix::from_bitvecs(n, &[extra])]);
            }
        }
        let k = LinearCode::new(h.clone()).k();
        if (1..=10).contains(&k) {
            return h;
        }
    }
}

/// Every dimension and distance claim of the classical reduction on one
/// input; returns the violations found.
pub fn theorem_violations(h: &BinaryMatrix, seed: u64) -> Vec<String> {
    let mut bad = Vec::new();
    let k = LinearCode::new(h.clone()).k();
    let d = exact_distance(h).expect("inputs have k >= 1");
    let rows_heavy = h.row_weights().iter().all(|&w| w > 3);
    let col_w = h.col_weights();
    let cols_heavy = col_w.iter().all(|&w| w > 3);
    let q_min = *col_w.iter().min().unwrap();

    let mut check = |name: &str, out: &BinaryMatrix, bound: usize| {
        let kk = LinearCode::new(out.clone()).k();
        if kk != k {
            bad.push(format!("{name}: k {k} -> {kk}"));
            return;
        }
        let dd = exact_distance(out).unwrap();
        if dd < bound {
            bad.push(format!("{name}: d {d} -> {dd}, expected >= {bound}"));
        }
    };
    let plain = ReductionOptions::plain();
    let comp = ReductionOptions::compressed();
    check("plain full", &reduce_full(h, &plain).unwrap(), d);
    check("compressed full", &reduce_full(h, &comp).unwrap(), d);
    check("permuted full", &reduce_full(h, &plain.permuted(seed)).unwrap(), d);
    check("permuted compressed", &reduce_full(h, &comp.permuted(seed)).unwrap(), d);
    // a zero column is a weight-1 word that no reduction touches
    if rows_heavy && !col_w.contains(&0) {
        check("rows only", &reduce_rows(h, &plain).unwrap(), (3 * d).div_ceil(2));
    }
    if cols_heavy {
        check("columns only", &reduce_cols(h, &plain).unwrap(), d * q_min);
        check("compressed columns", &reduce_cols(h, &comp).unwrap(), d * (q_min - 2));
    }
    bad
}

/// Every (check pair, variable pair) with all four incidences, on simple
/// graphs.
pub fn brute_force(g: &TannerGraph) -> FourCycles {
    let checks = g.checks();
    let mut out = FourCycles::default();
    for a in 0..checks.len() {
        for b in a + 1..checks.len() {
            let mut n = 0;
            for v in 0..g.n_vars() {
                for w in v + 1..g.n_vars() {
                    let has = |c: usize, x: usize| checks[c].1.contains(&x);
                    if has(a, v) && has(a, w) && has(b, v) && has(b, w) {
                        n += 1;
                    }
                }
            }
            match (checks[a].0, checks[b].0) {
                (CheckType::X, CheckType::X) => out.x_only += n,
                (CheckType::Z, CheckType::Z) => out.z_only += n,
                (CheckType::Plain, CheckType::Plain) => out.plain += n,
                _ => out.cross += n,
            }
        }
    }
    out
}

/// Number of copies of each original variable.
pub fn copies(origin: &[usize], n: usize) -> Vec<usize> {
    let mut s = vec![0; n];
    for &o in origin {
        s[o] += 1;
    }
    s
}
