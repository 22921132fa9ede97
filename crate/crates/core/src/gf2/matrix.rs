use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::bitvec::{parity_and, support_of, words_for, xor_words, BitVec, WORD};

/// Dense matrix over F2 stored row-major, each row packed into `u64` words.
///
/// Bits beyond `cols` in the last word of every row are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BinaryMatrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from 0/1 rows. Panics on ragged input.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        Self::from_rows_with_cols(rows, cols)
    }

    pub fn from_rows_with_cols<R: AsRef<[u8]>>(rows: &[R], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged row {i}");
            for (j, &b) in r.iter().enumerate() {
                if b & 1 == 1 {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Builds a matrix from the support (column indices) of each row.
    pub fn from_supports<S: AsRef<[usize]>>(rows: usize, cols: usize, supports: &[S]) -> Self {
        assert_eq!(supports.len(), rows, "support list length must equal row count");
        let mut m = Self::zeros(rows, cols);
        for (i, s) in supports.iter().enumerate() {
            for &j in s.as_ref() {
                assert!(j < cols, "column {j} out of range ({cols} columns)");
                m.toggle(i, j);
            }
        }
        m
    }

    pub fn from_bitvecs(cols: usize, rows: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub(crate) fn stride(&self) -> usize {
        self.stride
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "({r},{c}) out of bounds");
        (self.data[r * self.stride + c / WORD] >> (c % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "({r},{c}) out of bounds");
        let idx = r * self.stride + c / WORD;
        let mask = 1u64 << (c % WORD);
        if value {
            self.data[idx] |= mask;
        } else {
            self.data[idx] &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, r: usize, c: usize) {
        assert!(r < self.rows && c < self.cols, "({r},{c}) out of bounds");
        self.data[r * self.stride + c / WORD] ^= 1u64 << (c % WORD);
    }

    #[inline]
    pub(crate) fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    pub(crate) fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BitVec {
        BitVec::from_words(self.cols, self.row_words(r).to_vec())
    }

    pub fn set_row(&mut self, r: usize, v: &BitVec) {
        assert_eq!(v.len(), self.cols);
        self.row_words_mut(r).copy_from_slice(v.words());
    }

    pub fn col(&self, c: usize) -> BitVec {
        let mut v = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn row_support(&self, r: usize) -> Vec<usize> {
        support_of(self.row_words(r))
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_words(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn row_weights(&self) -> Vec<usize> {
        (0..self.rows).map(|r| self.row_weight(r)).collect()
    }

    pub fn col_weights(&self) -> Vec<usize> {
        let mut out = vec![0; self.cols];
        for r in 0..self.rows {
            for c in self.row_support(r) {
                out[c] += 1;
            }
        }
        out
    }

    pub fn max_row_weight(&self) -> usize {
        (0..self.rows).map(|r| self.row_weight(r)).max().unwrap_or(0)
    }

    pub fn max_col_weight(&self) -> usize {
        self.col_weights().into_iter().max().unwrap_or(0)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Row `dst ^= row src`.
    pub fn add_row(&mut self, src: usize, dst: usize) {
        assert_ne!(src, dst);
        let s = self.stride;
        let (a, b) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&lo[src * s..(src + 1) * s], &mut hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&hi[..s], &mut lo[dst * s..(dst + 1) * s])
        };
        xor_words(b, a);
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let s = self.stride;
        for w in 0..s {
            self.data.swap(a * s + w, b * s + w);
        }
    }

    pub fn transpose(&self) -> BinaryMatrix {
        let mut t = BinaryMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row_support(r) {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Matrix product over F2.
    pub fn mul(&self, other: &BinaryMatrix) -> BinaryMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = BinaryMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let support = self.row_support(r);
            let dst = r * out.stride;
            for k in support {
                let src = other.row_words(k);
                xor_words(&mut out.data[dst..dst + out.stride], src);
            }
        }
        out
    }

    /// `self · v` for a column vector `v`.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            if parity_and(self.row_words(r), v.words()) {
                out.set(r, true);
            }
        }
        out
    }

    /// `self · otherᵀ`, the matrix of pairwise row inner products.
    pub fn mul_transpose(&self, other: &BinaryMatrix) -> BinaryMatrix {
        assert_eq!(self.cols, other.cols, "shape mismatch in A·Bᵀ");
        let mut out = BinaryMatrix::zeros(self.rows, other.rows);
        for i in 0..self.rows {
            for j in 0..other.rows {
                if parity_and(self.row_words(i), other.row_words(j)) {
                    out.set(i, j, true);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &BinaryMatrix) -> BinaryMatrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sum");
        let mut out = self.clone();
        xor_words(&mut out.data, &other.data);
        out
    }

    pub fn kron(&self, other: &BinaryMatrix) -> BinaryMatrix {
        let mut out = BinaryMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in self.row_support(i) {
                for k in 0..other.rows {
                    for l in other.row_support(k) {
                        out.set(i * other.rows + k, j * other.cols + l, true);
                    }
                }
            }
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn write_block(&mut self, r0: usize, c0: usize, block: &BinaryMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of bounds");
        for r in 0..block.rows {
            for c in block.row_support(r) {
                self.set(r0 + r, c0 + c, true);
            }
        }
    }

    pub fn hstack(blocks: &[&BinaryMatrix]) -> BinaryMatrix {
        let rows = blocks.first().map_or(0, |b| b.rows);
        assert!(blocks.iter().all(|b| b.rows == rows), "hstack row mismatch");
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = BinaryMatrix::zeros(rows, cols);
        let mut c0 = 0;
        for b in blocks {
            out.write_block(0, c0, b);
            c0 += b.cols;
        }
        out
    }

    pub fn vstack(blocks: &[&BinaryMatrix]) -> BinaryMatrix {
        let cols = blocks.first().map_or(0, |b| b.cols);
        assert!(blocks.iter().all(|b| b.cols == cols), "vstack column mismatch");
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = BinaryMatrix::zeros(rows, cols);
        let mut r0 = 0;
        for b in blocks {
            for r in 0..b.rows {
                out.row_words_mut(r0 + r).copy_from_slice(b.row_words(r));
            }
            r0 += b.rows;
        }
        out
    }

    pub fn block_diag(blocks: &[&BinaryMatrix]) -> BinaryMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = BinaryMatrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.write_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Output row `i` is input row `perm[i]`.
    pub fn permute_rows(&self, perm: &[usize]) -> BinaryMatrix {
        assert_eq!(perm.len(), self.rows, "row permutation length");
        assert!(is_permutation(perm), "not a permutation");
        self.select_rows(perm)
    }

    /// Output column `j` is input column `perm[j]`.
    pub fn permute_cols(&self, perm: &[usize]) -> BinaryMatrix {
        assert_eq!(perm.len(), self.cols, "column permutation length");
        assert!(is_permutation(perm), "not a permutation");
        self.select_cols(perm)
    }

    pub fn select_rows(&self, idx: &[usize]) -> BinaryMatrix {
        let mut out = BinaryMatrix::zeros(idx.len(), self.cols);
        for (i, &r) in idx.iter().enumerate() {
            out.row_words_mut(i).copy_from_slice(self.row_words(r));
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> BinaryMatrix {
        let mut out = BinaryMatrix::zeros(self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                if self.get(r, c) {
                    out.set(r, j, true);
                }
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> BinaryMatrix {
        self.select_rows(rows).select_cols(cols)
    }

    /// Rows as 0/1 vectors, handy for assertions.
    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| u8::from(self.get(r, c))).collect())
            .collect()
    }

    pub fn row_supports(&self) -> Vec<Vec<usize>> {
        (0..self.rows).map(|r| self.row_support(r)).collect()
    }
}

pub fn invert_permutation(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

pub fn is_permutation(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    true
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                f.write_str(if self.get(r, c) { "1" } else { "." })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::io::to_text(self))
    }
}

#[derive(Serialize, Deserialize)]
struct SparseForm {
    rows: usize,
    cols: usize,
    supports: Vec<Vec<usize>>,
}

impl Serialize for BinaryMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SparseForm {
            rows: self.rows,
            cols: self.cols,
            supports: self.row_supports(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BinaryMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let f = SparseForm::deserialize(d)?;
        if f.supports.len() != f.rows || f.supports.iter().flatten().any(|&c| c >= f.cols) {
            return Err(serde::de::Error::custom("support list inconsistent with shape"));
        }
        Ok(BinaryMatrix::from_supports(f.rows, f.cols, &f.supports))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_small() {
        let a = BinaryMatrix::from_rows(&[[1u8, 1]]);
        let b = BinaryMatrix::from_rows(&[[1u8], [1]]);
        assert_eq!(a.kron(&b), BinaryMatrix::from_rows(&[[1u8, 1], [1, 1]]));
        assert_eq!(
            BinaryMatrix::identity(2).kron(&BinaryMatrix::identity(3)),
            BinaryMatrix::identity(6)
        );
    }

    #[test]
    fn stacks_and_blocks() {
        let a = BinaryMatrix::from_rows(&[[1u8, 0], [0, 1]]);
        let b = BinaryMatrix::from_rows(&[[1u8], [1]]);
        let h = BinaryMatrix::hstack(&[&a, &b]);
        assert_eq!(h.to_dense(), vec![vec![1, 0, 1], vec![0, 1, 1]]);
        let v = BinaryMatrix::vstack(&[&a, &a]);
        assert_eq!(v.rows(), 4);
        let d = BinaryMatrix::block_diag(&[&a, &b]);
        assert_eq!(d.shape(), (4, 3));
        assert!(d.get(3, 2) && !d.get(0, 2));
    }

    #[test]
    fn product_and_transpose() {
        let a = BinaryMatrix::from_rows(&[[1u8, 1, 0], [0, 1, 1]]);
        let p = a.mul(&a.transpose());
        assert_eq!(p.to_dense(), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(a.mul_transpose(&a), p);
    }

    #[test]
    fn weights() {
        let a = BinaryMatrix::from_rows(&[[1u8, 1, 0, 1], [0, 1, 0, 0]]);
        assert_eq!(a.row_weights(), vec![3, 1]);
        assert_eq!(a.col_weights(), vec![1, 2, 0, 1]);
        assert_eq!(a.max_col_weight(), 2);
    }

    #[test]
    fn wide_rows_cross_word_boundaries() {
        let mut a = BinaryMatrix::zeros(3, 200);
        a.set(0, 63, true);
        a.set(0, 64, true);
        a.set(2, 199, true);
        assert_eq!(a.row_support(0), vec![63, 64]);
        let t = a.transpose();
        assert!(t.get(199, 2));
        assert_eq!(t.transpose(), a);
    }
}
