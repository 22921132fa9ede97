use super::bitvec::{xor_words, BitVec, WORD};
use super::matrix::BinaryMatrix;

/// Reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: BinaryMatrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// In-place Gauss-Jordan elimination with leftmost pivots, taking the first
/// nonzero row at or below the current rank as pivot row. When `full` is
/// false only rows below the pivot are cleared. Every row operation is
/// mirrored onto `track` when given.
fn eliminate(m: &mut BinaryMatrix, full: bool, mut track: Option<&mut BinaryMatrix>) -> Vec<usize> {
    let (rows, cols) = m.shape();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let w = c / WORD;
        let bit = 1u64 << (c % WORD);
        let Some(p) = (rank..rows).find(|&r| m.row_words(r)[w] & bit != 0) else {
            continue;
        };
        m.swap_rows(p, rank);
        if let Some(t) = track.as_deref_mut() {
            t.swap_rows(p, rank);
        }
        let start = if full { 0 } else { rank + 1 };
        let pivot_row: Vec<u64> = m.row_words(rank)[w..].to_vec();
        for r in start..rows {
            if r != rank && m.row_words(r)[w] & bit != 0 {
                xor_words(&mut m.row_words_mut(r)[w..], &pivot_row);
                if let Some(t) = track.as_deref_mut() {
                    t.add_row(rank, r);
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    pivots
}

impl BinaryMatrix {
    pub fn rank(&self) -> usize {
        if self.rows() > self.cols() * 2 {
            // fewer pivots to search for on the short side
            return self.transpose().rank();
        }
        let mut m = self.clone();
        eliminate(&mut m, false, None).len()
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = eliminate(&mut m, true, None);
        Rref { matrix: m, pivots }
    }

    /// RREF plus the invertible matrix `T` with `T · self = rref`.
    pub fn rref_with_transform(&self) -> (Rref, BinaryMatrix) {
        let mut m = self.clone();
        let mut t = BinaryMatrix::identity(self.rows());
        let pivots = eliminate(&mut m, true, Some(&mut t));
        (Rref { matrix: m, pivots }, t)
    }

    /// Basis of the right kernel `{v : self · v = 0}`, one vector per row.
    pub fn kernel_basis(&self) -> BinaryMatrix {
        let n = self.cols();
        let Rref { matrix, pivots } = self.rref();
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let mut out = BinaryMatrix::zeros(free.len(), n);
        for (i, &f) in free.iter().enumerate() {
            out.set(i, f, true);
            for (r, &p) in pivots.iter().enumerate() {
                if matrix.get(r, f) {
                    out.set(i, p, true);
                }
            }
        }
        out
    }

    /// Basis of the row space as the nonzero rows of the RREF.
    pub fn row_basis(&self) -> BinaryMatrix {
        let Rref { matrix, pivots } = self.rref();
        let idx: Vec<usize> = (0..pivots.len()).collect();
        matrix.select_rows(&idx)
    }

    /// Solves `self · X = b` for `X`, returning one solution if it exists.
    pub fn solve(&self, b: &BinaryMatrix) -> Option<BinaryMatrix> {
        assert_eq!(self.rows(), b.rows(), "shape mismatch in solve");
        let (Rref { matrix, pivots }, t) = self.rref_with_transform();
        let tb = t.mul(b);
        let rank = pivots.len();
        if (rank..tb.rows()).any(|r| tb.row_weight(r) != 0) {
            return None;
        }
        debug_assert!(matrix.select_rows(&(rank..matrix.rows()).collect::<Vec<_>>()).is_zero());
        let mut x = BinaryMatrix::zeros(self.cols(), b.cols());
        for (r, &p) in pivots.iter().enumerate() {
            x.set_row(p, &tb.row(r));
        }
        Some(x)
    }
}

/// Incrementally built echelon basis supporting membership tests and
/// reduction of vectors modulo the span.
#[derive(Clone, Debug)]
pub struct RowSpace {
    len: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(len: usize) -> Self {
        RowSpace {
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_matrix(m: &BinaryMatrix) -> Self {
        let mut s = RowSpace::new(m.cols());
        for r in 0..m.rows() {
            s.insert(m.row(r));
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Reduces `v` against the basis in place; zero afterwards iff `v` was in the span.
    pub fn reduce(&self, v: &mut BitVec) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                xor_words(&mut v.words_mut()[p / WORD..], &row.words()[p / WORD..]);
            }
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, mut v: BitVec) -> bool {
        assert_eq!(v.len(), self.len, "length mismatch in row space");
        self.reduce(&mut v);
        let Some(p) = first_one(v.words()) else {
            return false;
        };
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn to_matrix(&self) -> BinaryMatrix {
        BinaryMatrix::from_bitvecs(self.len, &self.rows)
    }
}

fn first_one(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
}
