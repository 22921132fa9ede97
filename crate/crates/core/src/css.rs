//! CSS codes, hypergraph and lifted products, logical operators and distances.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chain::ChainComplex;
use crate::classical::LinearCode;
use crate::distance::{exact_search, information_set_search, Distance, SearchOutcome};
use crate::error::{Error, ParseError, Result};
use crate::gf2::io::{content_lines, parse_header, parse_rows, to_text};
use crate::gf2::{BinaryMatrix, RowSpace};
use crate::ring::BaseMatrix;

/// Max row and column weights of both check matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Weights {
    pub w_x: usize,
    pub q_x: usize,
    pub w_z: usize,
    pub q_z: usize,
}

impl Weights {
    pub fn as_tuple(self) -> (usize, usize, usize, usize) {
        (self.w_x, self.q_x, self.w_z, self.q_z)
    }
}

impl fmt::Display for Weights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.w_x, self.q_x, self.w_z, self.q_z)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssCode {
    hx: BinaryMatrix,
    hz: BinaryMatrix,
    k: usize,
    weights: Weights,
}

impl CssCode {
    pub fn new(hx: BinaryMatrix, hz: BinaryMatrix) -> Result<Self> {
        if hx.cols() != hz.cols() {
            return Err(Error::Shape(format!(
                "H_X has {} columns, H_Z has {}",
                hx.cols(),
                hz.cols()
            )));
        }
        let prod = hx.mul_transpose(&hz);
        for x_row in 0..prod.rows() {
            if let Some(&z_row) = prod.row_support(x_row).first() {
                return Err(Error::Commutation { x_row, z_row });
            }
        }
        let k = hx.cols() - hx.rank() - hz.rank();
        let weights = Weights {
            w_x: hx.max_row_weight(),
            q_x: hx.max_col_weight(),
            w_z: hz.max_row_weight(),
            q_z: hz.max_col_weight(),
        };
        Ok(CssCode { hx, hz, k, weights })
    }

    pub fn hx(&self) -> &BinaryMatrix {
        &self.hx
    }

    pub fn hz(&self) -> &BinaryMatrix {
        &self.hz
    }

    pub fn n(&self) -> usize {
        self.hx.cols()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n_x(&self) -> usize {
        self.hx.rows()
    }

    pub fn n_z(&self) -> usize {
        self.hz.rows()
    }

    pub fn weights(&self) -> Weights {
        self.weights
    }

    /// Exchanges the roles of X and Z.
    pub fn swapped(&self) -> CssCode {
        let w = self.weights;
        CssCode {
            hx: self.hz.clone(),
            hz: self.hx.clone(),
            k: self.k,
            weights: Weights {
                w_x: w.w_z,
                q_x: w.q_z,
                w_z: w.w_x,
                q_z: w.q_x,
            },
        }
    }

    /// `F^{n_Z} → F^n → F^{n_X}` in degrees 2, 1, 0.
    pub fn chain_complex(&self) -> ChainComplex {
        ChainComplex::from_css(&self.hx, &self.hz).expect("commuting checks form a complex")
    }

    /// Reads a file with an `hx` line followed by a matrix block, then an
    /// `hz` line followed by another block. Blocks use the text format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let mut block = |name: &str| -> std::result::Result<BinaryMatrix, ParseError> {
            let (ln, tag) = lines
                .next()
                .ok_or_else(|| ParseError::new(1, 1, format!("missing `{name}` section")))?;
            if tag.trim() != name {
                return Err(ParseError::new(ln, 1, format!("expected `{name}`, found `{}`", tag.trim())));
            }
            let (hl, header) = lines
                .next()
                .ok_or_else(|| ParseError::new(ln + 1, 1, "missing matrix header"))?;
            let (r, c) = parse_header(hl, header)?;
            parse_rows(&mut lines, hl, r, c)
        };
        let hx = block("hx")?;
        let hz = block("hz")?;
        CssCode::new(hx, hz)
    }

    pub fn to_text(&self) -> String {
        format!("hx\n{}hz\n{}", to_text(&self.hx), to_text(&self.hz))
    }
}

/// `H_X = (H1⊗I | I⊗H2ᵀ)`, `H_Z = (I⊗H2 | H1ᵀ⊗I)`; the first `n1·n2`
/// qubits form the left block.
pub fn hgp(h1: &BinaryMatrix, h2: &BinaryMatrix) -> CssCode {
    let (m1, n1) = h1.shape();
    let (m2, n2) = h2.shape();
    let hx = BinaryMatrix::hstack(&[
        &h1.kron(&BinaryMatrix::identity(n2)),
        &BinaryMatrix::identity(m1).kron(&h2.transpose()),
    ]);
    let hz = BinaryMatrix::hstack(&[
        &BinaryMatrix::identity(n1).kron(h2),
        &h1.transpose().kron(&BinaryMatrix::identity(m2)),
    ]);
    CssCode::new(hx, hz).expect("product checks always commute")
}

/// `A_X = (A1⊗I | I⊗A2)`, `A_Z = (I⊗A2ᵀ | A1ᵀ⊗I)` over the ring, then lifted.
pub fn lifted_product(a1: &BaseMatrix, a2: &BaseMatrix) -> Result<CssCode> {
    a1.check_same_ell(a2)?;
    let ell = a1.ell();
    let (m1, n1) = (a1.rows(), a1.cols());
    let (m2, n2) = (a2.rows(), a2.cols());
    let id = |n| BaseMatrix::identity(n, ell);
    let ax = BaseMatrix::hstack(&[&a1.kron(&id(m2)), &id(m1).kron(a2)]);
    let az = BaseMatrix::hstack(&[
        &id(n1).kron(&a2.ring_transpose()),
        &a1.ring_transpose().kron(&id(n2)),
    ]);
    CssCode::new(ax.lift(), az.lift())
}

/// `LP(A, Aᵀ)`.
pub fn lp_square(a: &BaseMatrix) -> CssCode {
    lifted_product(a, &a.ring_transpose()).expect("same lift size")
}

/// Bases of X and Z logicals with `x_logicals · z_logicalsᵀ = I`.
pub fn logical_basis(c: &CssCode) -> (BinaryMatrix, BinaryMatrix) {
    let lx = complement(&c.hz.kernel_basis(), &c.hx);
    let lz = complement(&c.hx.kernel_basis(), &c.hz);
    if lx.rows() == 0 {
        return (lx, lz);
    }
    let gram = lx.mul_transpose(&lz);
    let inv = gram
        .solve(&BinaryMatrix::identity(gram.rows()))
        .expect("logical pairing is nondegenerate");
    (lx, inv.transpose().mul(&lz))
}

/// Rows of `space` independent modulo the rowspace of `stabilizers`.
fn complement(space: &BinaryMatrix, stabilizers: &BinaryMatrix) -> BinaryMatrix {
    let mut span = RowSpace::from_matrix(stabilizers);
    let rows: Vec<_> = (0..space.rows())
        .map(|r| space.row(r))
        .filter(|v| span.insert(v.clone()))
        .collect();
    BinaryMatrix::from_bitvecs(space.cols(), &rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceOptions {
    /// Largest weight searched exhaustively.
    pub budget: usize,
    /// Information-set samples once the exhaustive search gives up.
    pub trials: usize,
    pub seed: u64,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        DistanceOptions {
            budget: 8,
            trials: 2000,
            seed: 0,
        }
    }
}

/// A distance known to lie in `[lower, value]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceBound {
    pub value: Distance,
    pub lower: Distance,
    pub exact: bool,
    /// Support of a word attaining `value`, when one was found.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
}

impl DistanceBound {
    pub fn exact(value: Distance) -> Self {
        DistanceBound::between(value, value)
    }

    pub fn between(lower: Distance, value: Distance) -> Self {
        DistanceBound {
            value,
            lower,
            exact: lower == value,
            witness: None,
        }
    }

    pub fn infinite() -> Self {
        DistanceBound::exact(Distance::Infinite)
    }

    pub fn min(&self, other: &DistanceBound) -> DistanceBound {
        let best = if other.value < self.value { other } else { self };
        DistanceBound {
            witness: best.witness.clone(),
            ..DistanceBound::between(self.lower.min(other.lower), best.value)
        }
    }
}

impl fmt::Display for DistanceBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exact {
            write!(f, "{}", self.value)
        } else {
            write!(f, "<={}", self.value)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CssParams {
    pub n: usize,
    pub k: usize,
    pub d_x: DistanceBound,
    pub d_z: DistanceBound,
    pub weights: Weights,
}

impl CssParams {
    pub fn d(&self) -> DistanceBound {
        self.d_x.min(&self.d_z)
    }
}

impl fmt::Display for CssParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}, {}]] weights {}", self.n, self.k, self.d(), self.weights)
    }
}

/// One side of a CSS distance: lightest `v` with `checks·v = 0` and
/// `tests·v ≠ 0`.
struct CosetSearch<'a> {
    checks: &'a BinaryMatrix,
    tests: &'a BinaryMatrix,
    kernel: BinaryMatrix,
    // every word lighter than this is excluded
    lower: usize,
    result: Option<DistanceBound>,
    stuck: bool,
}

impl<'a> CosetSearch<'a> {
    fn new(checks: &'a BinaryMatrix, tests: &'a BinaryMatrix) -> Self {
        CosetSearch {
            checks,
            tests,
            kernel: checks.kernel_basis(),
            lower: 1,
            result: None,
            stuck: false,
        }
    }

    fn open(&self) -> bool {
        self.result.is_none() && !self.stuck
    }

    fn search_to(&mut self, max_weight: usize) {
        match exact_search(self.checks, &self.kernel, Some(self.tests), max_weight) {
            SearchOutcome::Found { weight, witness } => {
                self.result = Some(DistanceBound {
                    witness: Some(witness),
                    ..DistanceBound::exact(Distance::Finite(weight))
                })
            }
            SearchOutcome::Empty => self.result = Some(DistanceBound::infinite()),
            SearchOutcome::Exhausted { min_weight } => {
                self.stuck = min_weight <= max_weight;
                self.lower = self.lower.max(min_weight);
            }
        }
    }

    fn finish(self, opts: &DistanceOptions) -> DistanceBound {
        if let Some(b) = self.result {
            return b;
        }
        match information_set_search(&self.kernel, Some(self.tests), opts.trials.max(1), opts.seed) {
            Some((w, witness)) => DistanceBound {
                witness: Some(witness),
                ..DistanceBound::between(Distance::Finite(self.lower), Distance::Finite(w))
            },
            None => DistanceBound::infinite(),
        }
    }
}

/// Distances by coset search: `d_Z` over `ker H_X` avoiding the Z stabilizers,
/// `d_X` symmetrically. Both sides are searched weight by weight; once one
/// side is exact the other is only searched up to that weight and bounded
/// by sampling beyond it, so `d` is exact while the larger side may not be.
pub fn css_distance(c: &CssCode, opts: &DistanceOptions) -> CssParams {
    let (d_x, d_z) = if c.k == 0 {
        (DistanceBound::infinite(), DistanceBound::infinite())
    } else {
        let (lx, lz) = logical_basis(c);
        let mut sides = [CosetSearch::new(&c.hz, &lz), CosetSearch::new(&c.hx, &lx)];
        for side in sides.iter_mut() {
            // small kernels are enumerated outright
            if side.kernel.rows() <= 20 {
                side.search_to(opts.budget);
            }
        }
        let mut w = 1;
        while w <= opts.budget && sides.iter().all(|s| s.result.is_none()) && sides.iter().any(|s| s.open()) {
            for side in sides.iter_mut().filter(|s| s.open()) {
                side.search_to(w);
            }
            w += 1;
        }
        let bound = sides.iter().filter_map(|s| s.result.as_ref()).filter_map(|b| b.value.finite()).min();
        if let Some(b) = bound {
            for side in sides.iter_mut().filter(|s| s.open() && s.lower <= b) {
                side.search_to(b);
            }
        }
        let [sx, sz] = sides;
        (sx.finish(opts), sz.finish(opts))
    };
    CssParams {
        n: c.n(),
        k: c.k,
        d_x,
        d_z,
        weights: c.weights,
    }
}

fn classical_bound(code: &LinearCode, opts: &DistanceOptions) -> DistanceBound {
    if code.k() == 0 {
        return DistanceBound::infinite();
    }
    match code.min_distance_exact(opts.budget) {
        Ok(Some(d)) => DistanceBound::exact(Distance::Finite(d)),
        _ => {
            let ub = code.min_distance_upper(opts.trials.max(1), opts.seed).unwrap_or(code.n());
            DistanceBound::between(Distance::Finite(opts.budget + 1), Distance::Finite(ub))
        }
    }
}

/// Parameters of `hgp(h1, h2)` from the four classical codes. Each sector
/// contributes its distances only when it carries logicals.
pub fn hgp_params(h1: &BinaryMatrix, h2: &BinaryMatrix, opts: &DistanceOptions) -> CssParams {
    let c1 = LinearCode::new(h1.clone());
    let c2 = LinearCode::new(h2.clone());
    let (c1t, c2t) = (c1.transpose_code(), c2.transpose_code());
    let left = c1.k() * c2.k();
    let right = c1t.k() * c2t.k();
    let sector = |count: usize, code: &LinearCode| {
        if count > 0 {
            classical_bound(code, opts)
        } else {
            DistanceBound::infinite()
        }
    };
    let d_z = sector(left, &c1).min(&sector(right, &c2t));
    let d_x = sector(left, &c2).min(&sector(right, &c1t));
    let (m1, n1) = h1.shape();
    let (m2, n2) = h2.shape();
    let weights = Weights {
        w_x: h1.max_row_weight() + h2.max_col_weight(),
        q_x: h1.max_col_weight().max(h2.max_row_weight()),
        w_z: h2.max_row_weight() + h1.max_col_weight(),
        q_z: h2.max_col_weight().max(h1.max_row_weight()),
    };
    CssParams {
        n: n1 * n2 + m1 * m2,
        k: left + right,
        d_x: DistanceBound { witness: None, ..d_x },
        d_z: DistanceBound { witness: None, ..d_z },
        weights,
    }
}
