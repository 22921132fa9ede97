//! Classical weight reduction: heavy rows become repetition chains, then the
//! same is done to the transpose.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::BinaryMatrix;
use crate::ring::{BaseMatrix, RingElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionOptions {
    /// Merge the first two and last two support entries into single rows.
    pub compressed: bool,
    /// Shuffle each reduced row's support before laying out the chain.
    pub permute: bool,
    pub seed: u64,
    pub row_threshold: usize,
    pub col_threshold: usize,
}

impl Default for ReductionOptions {
    fn default() -> Self {
        ReductionOptions {
            compressed: false,
            permute: false,
            seed: 0,
            row_threshold: 3,
            col_threshold: 3,
        }
    }
}

impl ReductionOptions {
    pub fn plain() -> Self {
        Self::default()
    }

    pub fn compressed() -> Self {
        ReductionOptions {
            compressed: true,
            ..Self::default()
        }
    }

    pub fn permuted(self, seed: u64) -> Self {
        ReductionOptions {
            permute: true,
            seed,
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.row_threshold < 3 || self.col_threshold < 3 {
            return Err(Error::InvalidOption(format!(
                "thresholds must be at least 3 (got row {}, column {})",
                self.row_threshold, self.col_threshold
            )));
        }
        Ok(())
    }
}

/// Groups of support entries placed on each chain row.
fn chain_groups(support: &[usize], compressed: bool) -> Vec<Vec<usize>> {
    let w = support.len();
    if compressed && w >= 4 {
        let mut g = vec![support[..2].to_vec()];
        g.extend(support[2..w - 2].iter().map(|&s| vec![s]));
        g.push(support[w - 2..].to_vec());
        g
    } else {
        support.iter().map(|&s| vec![s]).collect()
    }
}

fn reduce_rows_with(h: &BinaryMatrix, threshold: usize, compressed: bool, rng: Option<&mut ChaCha8Rng>) -> BinaryMatrix {
    let mut rng = rng;
    let mut out_rows: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let mut new_cols = 0;
    for r in 0..h.rows() {
        let mut support = h.row_support(r);
        if support.len() <= threshold {
            out_rows.push((support, Vec::new()));
            continue;
        }
        if let Some(rng) = rng.as_deref_mut() {
            support.shuffle(rng);
        }
        let groups = chain_groups(&support, compressed);
        let links = groups.len() - 1;
        for (p, g) in groups.into_iter().enumerate() {
            let mut extra = Vec::new();
            if p > 0 {
                extra.push(new_cols + p - 1);
            }
            if p < links {
                extra.push(new_cols + p);
            }
            out_rows.push((g, extra));
        }
        new_cols += links;
    }
    let n = h.cols();
    let mut out = BinaryMatrix::zeros(out_rows.len(), n + new_cols);
    for (i, (old, extra)) in out_rows.iter().enumerate() {
        for &c in old {
            out.set(i, c, true);
        }
        for &c in extra {
            out.set(i, n + c, true);
        }
    }
    out
}

/// Replaces every row heavier than the row threshold by a chain
/// `(f | 0 | repetitionᵀ)`; lighter rows are padded with zeros.
pub fn reduce_rows(h: &BinaryMatrix, opts: &ReductionOptions) -> Result<BinaryMatrix> {
    opts.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let rng = opts.permute.then_some(&mut rng);
    Ok(reduce_rows_with(h, opts.row_threshold, opts.compressed, rng))
}

/// Rows first, then columns via the transpose.
pub fn reduce_full(h: &BinaryMatrix, opts: &ReductionOptions) -> Result<BinaryMatrix> {
    opts.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let rows = {
        let r = opts.permute.then_some(&mut rng);
        reduce_rows_with(h, opts.row_threshold, opts.compressed, r)
    };
    let r = opts.permute.then_some(&mut rng);
    Ok(reduce_rows_with(&rows.transpose(), opts.col_threshold, opts.compressed, r).transpose())
}

/// Only the column pass of [`reduce_full`].
pub fn reduce_cols(h: &BinaryMatrix, opts: &ReductionOptions) -> Result<BinaryMatrix> {
    opts.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let r = opts.permute.then_some(&mut rng);
    Ok(reduce_rows_with(&h.transpose(), opts.col_threshold, opts.compressed, r).transpose())
}

/// Runs `trials` permuted reductions with seeds `seed, seed+1, …` and keeps the
/// highest-scoring output (lowest seed on ties).
pub fn best_permutation<F>(
    h: &BinaryMatrix,
    opts: &ReductionOptions,
    trials: usize,
    score: F,
) -> Result<(BinaryMatrix, u64, usize)>
where
    F: Fn(&BinaryMatrix) -> usize + Sync,
{
    opts.validate()?;
    let best = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let seed = opts.seed.wrapping_add(t);
            let m = reduce_full(h, &opts.permuted(seed)).expect("validated");
            let s = score(&m);
            (s, std::cmp::Reverse(seed), m)
        })
        .max_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
    let (s, std::cmp::Reverse(seed), m) = best.ok_or_else(|| Error::InvalidOption("need at least one trial".into()))?;
    Ok((m, seed, s))
}

/// A base-matrix row whose entries cannot be laid out within the threshold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibleRow {
    pub row: usize,
    pub weights: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseReduction {
    pub base: BaseMatrix,
    pub irreducible: Vec<IrreducibleRow>,
}

/// Chain-row weights for an arrangement of entry groups.
fn chain_row_weights(groups: &[Vec<(usize, usize)>]) -> Vec<usize> {
    let len = groups.len();
    groups
        .iter()
        .enumerate()
        .map(|(p, g)| {
            let own: usize = g.iter().map(|&(_, w)| w).sum();
            let links = usize::from(p > 0) + usize::from(p + 1 < len);
            own + links
        })
        .collect()
}

/// Moves entries too heavy for an interior chain position to the two ends.
fn repair_arrangement(entries: &[(usize, usize)], threshold: usize) -> Option<Vec<(usize, usize)>> {
    let (heavy, light): (Vec<_>, Vec<_>) = entries.iter().partition(|&&(_, w)| w + 2 > threshold);
    if heavy.len() > 2 || heavy.iter().any(|&(_, w)| w + 1 > threshold) {
        return None;
    }
    let mut out = Vec::with_capacity(entries.len());
    if let Some(&h) = heavy.first() {
        out.push(h);
    }
    out.extend(light);
    if let Some(&h) = heavy.get(1) {
        out.push(h);
    }
    Some(out)
}

fn reduce_base_rows_with(
    a: &BaseMatrix,
    threshold: usize,
    compressed: bool,
    mut rng: Option<&mut ChaCha8Rng>,
) -> BaseReduction {
    let ell = a.ell();
    // (input row, entry columns, repetition columns)
    let mut out_rows: Vec<(usize, Vec<usize>, Vec<usize>)> = Vec::new();
    let mut irreducible = Vec::new();
    let mut new_cols = 0;
    for r in 0..a.rows() {
        // (column, polynomial weight) of each nonzero entry
        let mut entries: Vec<(usize, usize)> = (0..a.cols())
            .filter(|&c| !a.get(r, c).is_zero())
            .map(|c| (c, a.get(r, c).weight()))
            .collect();
        let total: usize = entries.iter().map(|e| e.1).sum();
        if total <= threshold {
            out_rows.push((r, entries.iter().map(|e| e.0).collect(), Vec::new()));
            continue;
        }
        if entries.len() < 2 {
            irreducible.push(IrreducibleRow {
                row: r,
                weights: entries.iter().map(|e| e.1).collect(),
            });
            out_rows.push((r, entries.iter().map(|e| e.0).collect(), Vec::new()));
            continue;
        }
        if let Some(rng) = rng.as_deref_mut() {
            entries.shuffle(rng);
        }
        let use_compressed = compressed && entries.len() >= 4;
        let group = |es: &[(usize, usize)]| -> Vec<Vec<(usize, usize)>> {
            let cols: Vec<usize> = (0..es.len()).collect();
            chain_groups(&cols, use_compressed)
                .into_iter()
                .map(|g| g.into_iter().map(|i| es[i]).collect())
                .collect()
        };
        let mut groups = group(&entries);
        if chain_row_weights(&groups).iter().any(|&w| w > threshold) {
            match repair_arrangement(&entries, threshold).map(|e| group(&e)) {
                Some(g) if chain_row_weights(&g).iter().all(|&w| w <= threshold) => groups = g,
                _ => irreducible.push(IrreducibleRow {
                    row: r,
                    weights: entries.iter().map(|e| e.1).collect(),
                }),
            }
        }
        let links = groups.len() - 1;
        for (p, g) in groups.into_iter().enumerate() {
            let mut extra = Vec::new();
            if p > 0 {
                extra.push(new_cols + p - 1);
            }
            if p < links {
                extra.push(new_cols + p);
            }
            out_rows.push((r, g.into_iter().map(|e| e.0).collect(), extra));
        }
        new_cols += links;
    }
    let n = a.cols();
    let mut base = BaseMatrix::zeros(out_rows.len(), n + new_cols, ell);
    for (i, (src, old, extra)) in out_rows.iter().enumerate() {
        for &c in old {
            base.set(i, c, a.get(*src, c).clone());
        }
        for &c in extra {
            base.set(i, n + c, RingElement::one(ell));
        }
    }
    BaseReduction { base, irreducible }
}

/// Base-matrix analogue of [`reduce_rows`]: a row whose lifted weight exceeds
/// the threshold is split into one chain row per nonzero entry, linked by
/// constant-1 repetition columns. Entries of weight > 1 are placed at the
/// chain ends when that keeps every row within the threshold.
pub fn reduce_base_rows(a: &BaseMatrix, opts: &ReductionOptions) -> Result<BaseReduction> {
    opts.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let rng = opts.permute.then_some(&mut rng);
    Ok(reduce_base_rows_with(a, opts.row_threshold, opts.compressed, rng))
}

/// Rows, then columns through the ring transpose.
pub fn reduce_base_full(a: &BaseMatrix, opts: &ReductionOptions) -> Result<BaseReduction> {
    opts.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let rows = {
        let r = opts.permute.then_some(&mut rng);
        reduce_base_rows_with(a, opts.row_threshold, opts.compressed, r)
    };
    let r = opts.permute.then_some(&mut rng);
    let cols = reduce_base_rows_with(&rows.base.ring_transpose(), opts.col_threshold, opts.compressed, r);
    let mut irreducible = rows.irreducible;
    irreducible.extend(cols.irreducible);
    Ok(BaseReduction {
        base: cols.base.ring_transpose(),
        irreducible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked_input() -> BinaryMatrix {
        BinaryMatrix::from_rows(&[[1u8, 1, 1, 1, 0, 0], [0, 0, 1, 1, 1, 1]])
    }

    #[test]
    fn light_rows_are_a_fixpoint() {
        let h = BinaryMatrix::from_rows(&[[1u8, 1, 1, 0], [0, 1, 1, 1]]);
        assert_eq!(reduce_rows(&h, &ReductionOptions::plain()).unwrap(), h);
        assert_eq!(reduce_full(&h, &ReductionOptions::plain()).unwrap(), h);
        let z = BinaryMatrix::zeros(3, 5);
        assert_eq!(reduce_full(&z, &ReductionOptions::plain()).unwrap(), z);
    }

    #[test]
    fn plain_rows_on_worked_input() {
        let out = reduce_rows(&worked_input(), &ReductionOptions::plain()).unwrap();
        let expected = BinaryMatrix::from_supports(
            8,
            12,
            &[
                vec![0, 6],
                vec![1, 6, 7],
                vec![2, 7, 8],
                vec![3, 8],
                vec![2, 9],
                vec![3, 9, 10],
                vec![4, 10, 11],
                vec![5, 11],
            ],
        );
        assert_eq!(out, expected);
    }

    #[test]
    fn compressed_chain_shape() {
        let h = BinaryMatrix::from_rows(&[[1u8, 1, 1, 1, 1, 1]]);
        let out = reduce_rows(&h, &ReductionOptions::compressed()).unwrap();
        assert_eq!(
            out.row_supports(),
            vec![vec![0, 1, 6], vec![2, 6, 7], vec![3, 7, 8], vec![4, 5, 8]]
        );
    }

    #[test]
    fn thresholds_below_three_rejected() {
        let opts = ReductionOptions {
            row_threshold: 2,
            ..ReductionOptions::default()
        };
        assert!(reduce_rows(&worked_input(), &opts).is_err());
    }

    #[test]
    fn permuted_runs_are_seeded() {
        let h = BinaryMatrix::from_rows(&[[1u8, 1, 1, 1, 1, 1, 1, 1]]);
        let a = reduce_full(&h, &ReductionOptions::plain().permuted(5)).unwrap();
        let b = reduce_full(&h, &ReductionOptions::plain().permuted(5)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn base_rows_place_heavy_entries_at_ends() {
        let a = BaseMatrix::from_strs(46, &[&["x^5", "x^9", "x^10+x^20", "0"]]).unwrap();
        let r = reduce_base_rows(&a, &ReductionOptions::plain()).unwrap();
        assert!(r.irreducible.is_empty());
        assert_eq!(r.base.rows(), 3);
        assert_eq!(r.base.cols(), 6);
        for i in 0..3 {
            assert!(r.base.row_weight(i) <= 3);
        }
        let mid = BaseMatrix::from_strs(46, &[&["x^5", "x^10+x^20", "x^9", "0"]]).unwrap();
        let r = reduce_base_rows(&mid, &ReductionOptions::plain()).unwrap();
        assert!(r.irreducible.is_empty());
        assert!((0..3).all(|i| r.base.row_weight(i) <= 3));
    }

    #[test]
    fn base_row_with_single_heavy_entry_is_irreducible() {
        let a = BaseMatrix::from_strs(9, &[&["1+x+x^2+x^3", "0"]]).unwrap();
        let r = reduce_base_rows(&a, &ReductionOptions::plain()).unwrap();
        assert_eq!(r.irreducible.len(), 1);
        assert_eq!(r.base, a);
    }
}
