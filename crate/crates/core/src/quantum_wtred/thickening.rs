use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::chain::{tensor_product, ChainComplex};
use crate::css::CssCode;
use crate::error::{Error, Result};
use crate::gf2::BinaryMatrix;

/// A code tensored with the length-`ell` repetition complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thickened {
    pub code: CssCode,
    /// `∂₃`, the map from the new top degree into the Z checks.
    pub partial3: BinaryMatrix,
    pub ell: usize,
    /// Z checks of the input. The first `n_z · ell` rows of `code.hz()` are
    /// their layered copies, check `j` at layer `t` in row `j · ell + t`.
    pub base_hz: BinaryMatrix,
}

/// Builds `C ⊗ R_ℓ` where `R_ℓ` is `F^{ℓ−1} → F^ℓ` via `H_ℓᵀ`.
pub fn thicken(c: &CssCode, ell: usize) -> Result<Thickened> {
    if ell == 0 {
        return Err(Error::InvalidOption("thickening length must be at least 1".into()));
    }
    let prod = tensor_product(&c.chain_complex(), &ChainComplex::repetition(ell));
    let hx = prod.boundary(1);
    let hz = prod.boundary(2).transpose();
    let partial3 = prod.boundary(3);
    Ok(Thickened {
        code: CssCode::new(hx, hz)?,
        partial3,
        ell,
        base_hz: c.hz().clone(),
    })
}

/// Layer of each top Z check, 1-based. Serialized in its `FromStr` form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Heights {
    Explicit(Vec<usize>),
    /// Greedy placement aiming at this maximum Z column weight.
    Greedy(usize),
}

impl FromStr for Heights {
    type Err = Error;

    /// `greedy:Q` or a comma-separated list such as `2,1,2`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidOption(format!("cannot read heights from {s:?}"));
        if let Some(q) = s.strip_prefix("greedy:") {
            return q.trim().parse().map(Heights::Greedy).map_err(|_| bad());
        }
        s.split(',')
            .map(|h| h.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()
            .map(Heights::Explicit)
    }
}

impl TryFrom<String> for Heights {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Heights> for String {
    fn from(h: Heights) -> String {
        h.to_string()
    }
}

impl fmt::Display for Heights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Heights::Greedy(q) => write!(f, "greedy:{q}"),
            Heights::Explicit(h) => {
                let parts: Vec<String> = h.iter().map(|x| x.to_string()).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    }
}

/// Thickening length plus how to pick heights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightsSpec {
    pub ell: usize,
    pub heights: Heights,
}

/// Extra Z column weight from the `I ⊗ H_ℓ` rows at layer `t`.
fn layer_weight(ell: usize, t: usize) -> usize {
    match ell {
        1 => 0,
        _ if t == 0 || t == ell - 1 => 1,
        _ => 2,
    }
}

/// Places each Z check, in order, on the least used layer that keeps the
/// check's qubits within `target`; failing that, on the layer with the
/// smallest resulting column weight. Lowest layer wins ties. 1-based.
pub fn greedy_heights(hz: &BinaryMatrix, ell: usize, target: usize) -> Vec<usize> {
    let mut load = vec![vec![0usize; ell]; hz.cols()];
    let mut used = vec![0usize; ell];
    let mut out = Vec::with_capacity(hz.rows());
    for j in 0..hz.rows() {
        let supp = hz.row_support(j);
        let cost = |t: usize| supp.iter().map(|&i| load[i][t]).max().unwrap_or(0) + 1 + layer_weight(ell, t);
        let costs: Vec<usize> = (0..ell).map(cost).collect();
        let t = (0..ell)
            .filter(|&t| costs[t] <= target)
            .min_by_key(|&t| (used[t], t))
            .unwrap_or_else(|| (0..ell).min_by_key(|&t| (costs[t], t)).expect("ell >= 1"));
        for &i in &supp {
            load[i][t] += 1;
        }
        used[t] += 1;
        out.push(t + 1);
    }
    out
}

/// Keeps one layered copy of every original Z check, at the given height,
/// together with all the checks from the second block. Returns the heights
/// used.
pub fn choose_heights(th: &Thickened, heights: &Heights) -> Result<(CssCode, Vec<usize>)> {
    let ell = th.ell;
    let hz = th.code.hz();
    let n_z = th.base_hz.rows();
    let hs = match heights {
        Heights::Explicit(h) => {
            if h.len() != n_z {
                return Err(Error::InvalidOption(format!(
                    "{} heights given for {} Z checks",
                    h.len(),
                    n_z
                )));
            }
            if let Some(&bad) = h.iter().find(|&&x| x == 0 || x > ell) {
                return Err(Error::InvalidOption(format!("height {bad} outside 1..={ell}")));
            }
            h.clone()
        }
        Heights::Greedy(target) => greedy_heights(&th.base_hz, ell, *target),
    };
    let keep: Vec<usize> = hs
        .iter()
        .enumerate()
        .map(|(j, &h)| j * ell + h - 1)
        .chain(n_z * ell..hz.rows())
        .collect();
    let code = CssCode::new(th.code.hx().clone(), hz.select_rows(&keep))?;
    Ok((code, hs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heights_parse_round_trip() {
        for s in ["greedy:3", "2,1,2,1"] {
            assert_eq!(s.parse::<Heights>().unwrap().to_string(), s);
        }
        assert!("greedy:x".parse::<Heights>().is_err());
        assert!("1,,2".parse::<Heights>().is_err());
    }

    #[test]
    fn ell_one_is_identity() {
        let c = crate::fixtures::qrm4();
        let th = thicken(&c, 1).unwrap();
        assert_eq!(th.code, c);
        assert_eq!(th.partial3.cols(), 0);
    }
}
