//! Chain complexes over F2, tensor products and mapping cones.

use serde::{Deserialize, Serialize};

use crate::classical::repetition_check;
use crate::error::{Error, Result};
use crate::gf2::BinaryMatrix;

/// Spaces `C_lo … C_hi` with boundaries `∂_i : C_i → C_{i−1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    lo: i32,
    dims: Vec<usize>,
    // boundaries[k] maps degree lo+k+1 to lo+k
    boundaries: Vec<BinaryMatrix>,
}

impl ChainComplex {
    /// `boundaries[k]` must map degree `lo + k + 1` to `lo + k`; the
    /// composition of consecutive maps must vanish.
    pub fn new(lo: i32, boundaries: Vec<BinaryMatrix>) -> Result<Self> {
        if boundaries.is_empty() {
            return Err(Error::Shape("use ChainComplex::single for a complex without maps".into()));
        }
        let mut dims = vec![boundaries[0].rows()];
        for (k, b) in boundaries.iter().enumerate() {
            if b.rows() != dims[k] {
                return Err(Error::Shape(format!(
                    "boundary into degree {} has {} rows, expected {}",
                    lo + k as i32,
                    b.rows(),
                    dims[k]
                )));
            }
            dims.push(b.cols());
        }
        let c = ChainComplex { lo, dims, boundaries };
        c.validate()?;
        Ok(c)
    }

    /// A complex concentrated in one degree.
    pub fn single(degree: i32, dim: usize) -> Self {
        ChainComplex {
            lo: degree,
            dims: vec![dim],
            boundaries: Vec::new(),
        }
    }

    pub fn empty() -> Self {
        Self::single(0, 0)
    }

    /// Explicit dimensions, for complexes whose end spaces have no maps.
    pub fn with_dims(lo: i32, dims: Vec<usize>, boundaries: Vec<BinaryMatrix>) -> Result<Self> {
        if dims.len() != boundaries.len() + 1 {
            return Err(Error::Shape("need one more space than boundary maps".into()));
        }
        for (k, b) in boundaries.iter().enumerate() {
            if b.shape() != (dims[k], dims[k + 1]) {
                return Err(Error::Shape(format!(
                    "boundary out of degree {} has shape {:?}, expected {:?}",
                    lo + k as i32 + 1,
                    b.shape(),
                    (dims[k], dims[k + 1])
                )));
            }
        }
        let c = ChainComplex { lo, dims, boundaries };
        c.validate()?;
        Ok(c)
    }

    /// `F^{n_Z} →(H_Zᵀ) F^n →(H_X) F^{n_X}` in degrees 2, 1, 0.
    pub fn from_css(hx: &BinaryMatrix, hz: &BinaryMatrix) -> Result<Self> {
        Self::with_dims(0, vec![hx.rows(), hx.cols(), hz.rows()], vec![hx.clone(), hz.transpose()])
    }

    /// `F^{ℓ−1} →(H_ℓᵀ) F^ℓ` in degrees 1, 0.
    pub fn repetition(ell: usize) -> Self {
        let h = repetition_check(ell);
        Self::with_dims(0, vec![ell, ell - 1], vec![h.transpose()]).expect("two-term complex")
    }

    fn validate(&self) -> Result<()> {
        for k in 1..self.boundaries.len() {
            if !self.boundaries[k - 1].mul(&self.boundaries[k]).is_zero() {
                return Err(Error::NotAComplex(self.lo + k as i32));
            }
        }
        Ok(())
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.dims.len() as i32 - 1
    }

    pub fn dim(&self, i: i32) -> usize {
        if i < self.lo || i > self.hi() {
            0
        } else {
            self.dims[(i - self.lo) as usize]
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `∂_i`, or a zero map where the complex has none.
    pub fn boundary(&self, i: i32) -> BinaryMatrix {
        if i > self.lo && i <= self.hi() {
            self.boundaries[(i - self.lo - 1) as usize].clone()
        } else {
            BinaryMatrix::zeros(self.dim(i - 1), self.dim(i))
        }
    }

    pub fn homology_dim(&self, i: i32) -> usize {
        self.dim(i) - self.boundary(i).rank() - self.boundary(i + 1).rank()
    }

    /// Degree-wise direct sum, first summand first.
    pub fn direct_sum(&self, other: &ChainComplex) -> ChainComplex {
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let dims = (lo..=hi).map(|i| self.dim(i) + other.dim(i)).collect();
        let boundaries = (lo + 1..=hi)
            .map(|i| BinaryMatrix::block_diag(&[&self.boundary(i), &other.boundary(i)]))
            .collect();
        ChainComplex { lo, dims, boundaries }
    }
}

/// Summands `(i, j)` of `(A ⊗ B)_n`, larger `i` first.
fn summands(a: &ChainComplex, b: &ChainComplex, n: i32) -> Vec<(i32, i32)> {
    (a.lo()..=a.hi())
        .rev()
        .map(|i| (i, n - i))
        .filter(|&(_, j)| j >= b.lo() && j <= b.hi())
        .collect()
}

/// Total complex of `A ⊗ B`.
pub fn tensor_product(a: &ChainComplex, b: &ChainComplex) -> ChainComplex {
    let lo = a.lo() + b.lo();
    let hi = a.hi() + b.hi();
    let dims: Vec<usize> = (lo..=hi)
        .map(|n| summands(a, b, n).iter().map(|&(i, j)| a.dim(i) * b.dim(j)).sum())
        .collect();
    let mut boundaries = Vec::new();
    for n in lo + 1..=hi {
        let src = summands(a, b, n);
        let dst = summands(a, b, n - 1);
        let offsets = |list: &[(i32, i32)]| {
            let mut off = Vec::with_capacity(list.len());
            let mut acc = 0;
            for &(i, j) in list {
                off.push(acc);
                acc += a.dim(i) * b.dim(j);
            }
            off
        };
        let (so, dof) = (offsets(&src), offsets(&dst));
        let mut m = BinaryMatrix::zeros(dims[(n - 1 - lo) as usize], dims[(n - lo) as usize]);
        for (s, &(i, j)) in src.iter().enumerate() {
            for (d, &(i2, j2)) in dst.iter().enumerate() {
                let block = if i2 == i - 1 && j2 == j {
                    a.boundary(i).kron(&BinaryMatrix::identity(b.dim(j)))
                } else if i2 == i && j2 == j - 1 {
                    BinaryMatrix::identity(a.dim(i)).kron(&b.boundary(j))
                } else {
                    continue;
                };
                m.write_block(dof[d], so[s], &block);
            }
        }
        boundaries.push(m);
    }
    ChainComplex { lo, dims, boundaries }
}

/// Degree-wise linear maps `f_i : A_i → B_i` commuting with the boundaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    // components[k] is f at degree source.lo + k
    components: Vec<BinaryMatrix>,
}

impl ChainMap {
    /// `components[k]` is `f` at degree `source.lo() + k`, shaped
    /// `dim B_i × dim A_i`.
    pub fn new(source: ChainComplex, target: ChainComplex, components: Vec<BinaryMatrix>) -> Result<Self> {
        if components.len() != source.dims().len() {
            return Err(Error::Shape("one component per source degree required".into()));
        }
        for (k, f) in components.iter().enumerate() {
            let i = source.lo() + k as i32;
            if f.shape() != (target.dim(i), source.dim(i)) {
                return Err(Error::Shape(format!(
                    "component at degree {i} has shape {:?}, expected {:?}",
                    f.shape(),
                    (target.dim(i), source.dim(i))
                )));
            }
        }
        let map = ChainMap {
            source,
            target,
            components,
        };
        for i in map.source.lo()..=map.source.hi() + 1 {
            let lhs = map.target.boundary(i).mul(&map.component(i));
            let rhs = map.component(i - 1).mul(&map.source.boundary(i));
            if lhs != rhs {
                return Err(Error::NotAChainMap(i));
            }
        }
        Ok(map)
    }

    pub fn identity(c: &ChainComplex) -> Self {
        let comps = c.dims().iter().map(|&d| BinaryMatrix::identity(d)).collect();
        ChainMap::new(c.clone(), c.clone(), comps).expect("identity commutes")
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Self {
        let comps = (source.lo()..=source.hi())
            .map(|i| BinaryMatrix::zeros(target.dim(i), source.dim(i)))
            .collect();
        ChainMap::new(source.clone(), target.clone(), comps).expect("zero map commutes")
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn component(&self, i: i32) -> BinaryMatrix {
        if i < self.source.lo() || i > self.source.hi() {
            BinaryMatrix::zeros(self.target.dim(i), self.source.dim(i))
        } else {
            self.components[(i - self.source.lo()) as usize].clone()
        }
    }
}

/// `cone(f)_i = A_i ⊕ B_{i+1}` with `∂ = [[∂ᴬ, 0], [f, ∂ᴮ]]`.
pub fn mapping_cone(f: &ChainMap) -> ChainComplex {
    let (a, b) = (f.source(), f.target());
    let lo = a.lo().min(b.lo() - 1);
    let hi = a.hi().max(b.hi() - 1);
    let dims: Vec<usize> = (lo..=hi).map(|i| a.dim(i) + b.dim(i + 1)).collect();
    let boundaries = (lo + 1..=hi)
        .map(|i| {
            let top = BinaryMatrix::hstack(&[&a.boundary(i), &BinaryMatrix::zeros(a.dim(i - 1), b.dim(i + 1))]);
            let bottom = BinaryMatrix::hstack(&[&f.component(i), &b.boundary(i + 1)]);
            BinaryMatrix::vstack(&[&top, &bottom])
        })
        .collect();
    ChainComplex { lo, dims, boundaries }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KunnethLevel {
    pub degree: i32,
    pub product: usize,
    pub expected: usize,
    pub pass: bool,
}

/// Compares homology of `A ⊗ B` with `Σ_{i+j=k} dim H_i(A)·dim H_j(B)`.
pub fn kunneth_check(a: &ChainComplex, b: &ChainComplex) -> Vec<KunnethLevel> {
    let t = tensor_product(a, b);
    (t.lo()..=t.hi())
        .map(|k| {
            let product = t.homology_dim(k);
            let expected = (a.lo()..=a.hi())
                .map(|i| a.homology_dim(i) * b.homology_dim(k - i))
                .sum();
            KunnethLevel {
                degree: k,
                product,
                expected,
                pass: product == expected,
            }
        })
        .collect()
}
