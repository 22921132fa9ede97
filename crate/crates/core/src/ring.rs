//! The group algebra R_ℓ = F2[x]/(x^ℓ − 1), circulant lifts and base matrices.

use std::fmt;

use crate::error::{Error, ParseError, Result};
use crate::gf2::io::{content_lines, parse_count, tokens};
use crate::gf2::{BinaryMatrix, BitVec};

/// Element of R_ℓ; coefficient of x^i is bit i.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    coeffs: BitVec,
}

impl RingElement {
    pub fn zero(ell: usize) -> Self {
        assert!(ell >= 1, "lift size must be positive");
        RingElement {
            coeffs: BitVec::zeros(ell),
        }
    }

    pub fn one(ell: usize) -> Self {
        Self::monomial(ell, 0)
    }

    /// x^e, with the exponent taken mod ℓ.
    pub fn monomial(ell: usize, e: usize) -> Self {
        let mut g = Self::zero(ell);
        g.coeffs.set(e % ell, true);
        g
    }

    pub fn from_exponents(ell: usize, exps: &[usize]) -> Self {
        let mut g = Self::zero(ell);
        for &e in exps {
            g.coeffs.flip(e % ell);
        }
        g
    }

    pub fn ell(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &BitVec {
        &self.coeffs
    }

    pub fn exponents(&self) -> Vec<usize> {
        self.coeffs.support()
    }

    pub fn weight(&self) -> usize {
        self.coeffs.weight()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.ell(), other.ell(), "lift size mismatch");
        let mut c = self.coeffs.clone();
        c.xor_assign(&other.coeffs);
        RingElement { coeffs: c }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ell(), other.ell(), "lift size mismatch");
        let ell = self.ell();
        let mut out = Self::zero(ell);
        for a in self.exponents() {
            for b in other.exponents() {
                out.coeffs.flip((a + b) % ell);
            }
        }
        out
    }

    /// g0 + g_{ℓ−1} x + … + g1 x^{ℓ−1}, whose lift is the transposed circulant.
    pub fn transpose(&self) -> Self {
        let ell = self.ell();
        let exps: Vec<usize> = self.exponents().into_iter().map(|e| (ell - e) % ell).collect();
        Self::from_exponents(ell, &exps)
    }

    /// ℓ×ℓ circulant whose first column holds the coefficients.
    pub fn lift(&self) -> BinaryMatrix {
        let ell = self.ell();
        let mut m = BinaryMatrix::zeros(ell, ell);
        for e in self.exponents() {
            for j in 0..ell {
                m.set((e + j) % ell, j, true);
            }
        }
        m
    }

    /// Parses tokens such as `0`, `1`, `x`, `x^5`, `1+x^3+x^7`.
    pub fn parse(ell: usize, s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        if s.is_empty() {
            return Err("empty polynomial".into());
        }
        let mut g = Self::zero(ell);
        if s == "0" {
            return Ok(g);
        }
        for term in s.split('+') {
            let term = term.trim();
            let e = match term {
                "1" => 0,
                "x" => 1,
                t if t.starts_with("x^") => t[2..]
                    .parse::<usize>()
                    .map_err(|_| format!("bad exponent in `{t}`"))?,
                t => return Err(format!("unrecognised term `{t}`")),
            };
            g.coeffs.flip(e % ell);
        }
        Ok(g)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exps = self.exponents();
        if exps.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = exps
            .into_iter()
            .map(|e| match e {
                0 => "1".to_string(),
                1 => "x".to_string(),
                e => format!("x^{e}"),
            })
            .collect();
        f.write_str(&terms.join("+"))
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (mod x^{}-1)", self.ell())
    }
}

/// Matrix over R_ℓ.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BaseMatrix {
    ell: usize,
    rows: usize,
    cols: usize,
    entries: Vec<RingElement>,
}

impl BaseMatrix {
    pub fn zeros(rows: usize, cols: usize, ell: usize) -> Self {
        BaseMatrix {
            ell,
            rows,
            cols,
            entries: vec![RingElement::zero(ell); rows * cols],
        }
    }

    pub fn identity(n: usize, ell: usize) -> Self {
        let mut m = Self::zeros(n, n, ell);
        for i in 0..n {
            m.set(i, i, RingElement::one(ell));
        }
        m
    }

    /// Builds from rows of polynomial strings.
    pub fn from_strs(ell: usize, rows: &[&[&str]]) -> std::result::Result<Self, String> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols, ell);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(format!("ragged row {i}"));
            }
            for (j, s) in r.iter().enumerate() {
                m.set(i, j, RingElement::parse(ell, s)?);
            }
        }
        Ok(m)
    }

    /// Embeds a binary matrix as constant polynomials.
    pub fn from_binary(h: &BinaryMatrix, ell: usize) -> Self {
        let mut m = Self::zeros(h.rows(), h.cols(), ell);
        for r in 0..h.rows() {
            for c in h.row_support(r) {
                m.set(r, c, RingElement::one(ell));
            }
        }
        m
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &RingElement {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, g: RingElement) {
        assert_eq!(g.ell(), self.ell, "lift size mismatch");
        self.entries[r * self.cols + c] = g;
    }

    /// Sum of the polynomial weights in row `r`, i.e. the lifted row weight.
    pub fn row_weight(&self, r: usize) -> usize {
        (0..self.cols).map(|c| self.get(r, c).weight()).sum()
    }

    pub fn col_weight(&self, c: usize) -> usize {
        (0..self.rows).map(|r| self.get(r, c).weight()).sum()
    }

    pub fn lift(&self) -> BinaryMatrix {
        let ell = self.ell;
        let mut m = BinaryMatrix::zeros(self.rows * ell, self.cols * ell);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let g = self.get(r, c);
                if !g.is_zero() {
                    m.write_block(r * ell, c * ell, &g.lift());
                }
            }
        }
        m
    }

    /// Matrix transpose with every entry replaced by its ring transpose.
    pub fn ring_transpose(&self) -> BaseMatrix {
        let mut t = BaseMatrix::zeros(self.cols, self.rows, self.ell);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).transpose());
            }
        }
        t
    }

    pub fn mul(&self, other: &BaseMatrix) -> BaseMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in base product");
        assert_eq!(self.ell, other.ell, "lift size mismatch");
        let mut out = BaseMatrix::zeros(self.rows, other.cols, self.ell);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = RingElement::zero(self.ell);
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Kronecker product over R_ℓ.
    pub fn kron(&self, other: &BaseMatrix) -> BaseMatrix {
        assert_eq!(self.ell, other.ell, "lift size mismatch");
        let mut out = BaseMatrix::zeros(self.rows * other.rows, self.cols * other.cols, self.ell);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a.mul(other.get(k, l)));
                    }
                }
            }
        }
        out
    }

    pub fn hstack(blocks: &[&BaseMatrix]) -> BaseMatrix {
        let rows = blocks[0].rows;
        let ell = blocks[0].ell;
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = BaseMatrix::zeros(rows, cols, ell);
        let mut c0 = 0;
        for b in blocks {
            assert_eq!(b.rows, rows);
            for r in 0..rows {
                for c in 0..b.cols {
                    out.set(r, c0 + c, b.get(r, c).clone());
                }
            }
            c0 += b.cols;
        }
        out
    }

    pub fn parse(text: &str) -> std::result::Result<Self, ParseError> {
        let mut lines = content_lines(text);
        let (hl, header) = lines
            .next()
            .ok_or_else(|| ParseError::new(1, 1, "empty input"))?;
        let toks = tokens(header);
        if toks.len() != 3 {
            return Err(ParseError::new(hl, 1, "header must be `rows cols ell`"));
        }
        let rows = parse_count(hl, toks[0].0, toks[0].1, "row count")?;
        let cols = parse_count(hl, toks[1].0, toks[1].1, "column count")?;
        let ell = parse_count(hl, toks[2].0, toks[2].1, "lift size")?;
        if ell == 0 {
            return Err(ParseError::new(hl, toks[2].0, "lift size must be positive"));
        }
        let mut m = BaseMatrix::zeros(rows, cols, ell);
        let mut idx = 0;
        let mut last = hl;
        for (ln, line) in lines {
            last = ln;
            for (c, tok) in tokens(line) {
                if idx >= rows * cols {
                    return Err(ParseError::new(ln, c, "more entries than the header declares"));
                }
                let g = RingElement::parse(ell, tok).map_err(|e| ParseError::new(ln, c, e))?;
                m.entries[idx] = g;
                idx += 1;
            }
        }
        if idx != rows * cols {
            return Err(ParseError::new(
                last,
                1,
                format!("expected {} entries, found {idx}", rows * cols),
            ));
        }
        Ok(m)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.rows, self.cols, self.ell);
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn check_same_ell(&self, other: &BaseMatrix) -> Result<()> {
        if self.ell != other.ell {
            return Err(Error::LiftMismatch(self.ell, other.ell));
        }
        Ok(())
    }
}

impl fmt::Debug for BaseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lift_small_elements() {
        assert_eq!(RingElement::one(2).lift(), BinaryMatrix::identity(2));
        assert_eq!(
            RingElement::monomial(2, 1).lift().to_dense(),
            vec![vec![0, 1], vec![1, 0]]
        );
        assert_eq!(
            RingElement::from_exponents(2, &[0, 1]).lift().to_dense(),
            vec![vec![1, 1], vec![1, 1]]
        );
    }

    #[test]
    fn lift_two_by_two_example() {
        let a = BaseMatrix::from_strs(2, &[&["1", "x"], &["0", "1+x"]]).unwrap();
        assert_eq!(
            a.lift().to_dense(),
            vec![
                vec![1, 0, 0, 1],
                vec![0, 1, 1, 0],
                vec![0, 0, 1, 1],
                vec![0, 0, 1, 1]
            ]
        );
    }

    #[test]
    fn first_column_holds_coefficients() {
        let g = RingElement::parse(5, "1+x^3").unwrap();
        let m = g.lift();
        assert_eq!(m.col(0).support(), vec![0, 3]);
        assert_eq!(m.col(1).support(), vec![1, 4]);
    }

    #[test]
    fn transpose_reverses_indices() {
        let g = RingElement::monomial(3, 1);
        assert_eq!(g.transpose(), RingElement::monomial(3, 2));
        assert_eq!(g.transpose().lift(), g.lift().transpose());
    }

    #[test]
    fn parse_and_print() {
        let g = RingElement::parse(46, "x^10+x^20").unwrap();
        assert_eq!(g.to_string(), "x^10+x^20");
        assert!(RingElement::parse(4, "y").is_err());
        assert_eq!(RingElement::parse(4, "x^5").unwrap(), RingElement::monomial(4, 1));
    }

    #[test]
    fn base_text_roundtrip() {
        let text = "2 2 7\n1 x^3\n0 x^2+x^5\n";
        let a = BaseMatrix::parse(text).unwrap();
        assert_eq!(a.to_text(), text);
        let e = BaseMatrix::parse("1 2 3\n1 q\n").unwrap_err();
        assert_eq!((e.line, e.col), (2, 3));
    }
}
