//! Classical binary linear codes given by parity-check matrices.

use serde::{Deserialize, Serialize};

use crate::distance::{exact_search, information_set_search, Distance, SearchOutcome};
use crate::error::{Error, Result};
use crate::gf2::BinaryMatrix;
use crate::ring::BaseMatrix;

/// Kernel of a parity-check matrix, which may carry redundant rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    h: BinaryMatrix,
    k: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub d: Option<Distance>,
    pub d_is_exact: bool,
    pub d_upper: Option<usize>,
}

impl LinearCode {
    pub fn new(h: BinaryMatrix) -> Self {
        let k = h.cols() - h.rank();
        LinearCode { h, k }
    }

    pub fn h(&self) -> &BinaryMatrix {
        &self.h
    }

    pub fn n(&self) -> usize {
        self.h.cols()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Generator matrix, a basis of the kernel of `h`.
    pub fn generator(&self) -> BinaryMatrix {
        self.h.kernel_basis()
    }

    /// The transpose code `ker hᵀ`.
    pub fn transpose_code(&self) -> LinearCode {
        LinearCode::new(self.h.transpose())
    }

    /// Smallest nonzero codeword weight if it is at most `budget`; `None`
    /// means the distance exceeds `budget`. Fails with `TrivialCode` when k = 0.
    pub fn min_distance_exact(&self, budget: usize) -> Result<Option<usize>> {
        if budget == 0 {
            return Err(Error::InvalidOption("distance budget must be at least 1".into()));
        }
        if self.k == 0 {
            return Err(Error::TrivialCode);
        }
        let g = self.generator();
        match exact_search(&self.h, &g, None, budget) {
            SearchOutcome::Found { weight, .. } => Ok(Some(weight)),
            SearchOutcome::Exhausted { .. } => Ok(None),
            SearchOutcome::Empty => Err(Error::TrivialCode),
        }
    }

    /// Lightest codeword found by randomized information-set sampling.
    pub fn min_distance_upper(&self, trials: usize, seed: u64) -> Result<usize> {
        if self.k == 0 {
            return Err(Error::TrivialCode);
        }
        let g = self.generator();
        information_set_search(&g, None, trials, seed)
            .map(|(w, _)| w)
            .ok_or(Error::TrivialCode)
    }

    /// Distance with the infinity convention for k = 0: exact within
    /// `budget`, otherwise an upper bound from `trials` samples.
    pub fn distance(&self, budget: usize, trials: usize, seed: u64) -> (Distance, bool) {
        if self.k == 0 {
            return (Distance::Infinite, true);
        }
        match self.min_distance_exact(budget) {
            Ok(Some(d)) => (Distance::Finite(d), true),
            _ => {
                let ub = self.min_distance_upper(trials.max(1), seed).unwrap_or(usize::MAX);
                (Distance::Finite(ub), false)
            }
        }
    }

    pub fn params(&self, budget: usize, trials: usize, seed: u64) -> CodeParams {
        let (d, exact) = self.distance(budget, trials, seed);
        CodeParams {
            n: self.n(),
            k: self.k,
            d: Some(d),
            d_is_exact: exact,
            d_upper: d.finite(),
        }
    }
}

/// Parity checks of the [ℓ, 1, ℓ] repetition code: (ℓ−1)×ℓ, ones on the
/// diagonal and superdiagonal.
pub fn repetition_check(ell: usize) -> BinaryMatrix {
    assert!(ell >= 1, "repetition length must be positive");
    let mut h = BinaryMatrix::zeros(ell - 1, ell);
    for i in 0..ell - 1 {
        h.set(i, i, true);
        h.set(i, i + 1, true);
    }
    h
}

/// Quasi-cyclic code with parity checks `lift(a)`.
pub fn code_from_base(a: &BaseMatrix) -> LinearCode {
    LinearCode::new(a.lift())
}
