use serde::{Deserialize, Serialize};

use crate::css::CssCode;
use crate::error::{Error, Result};
use crate::gf2::BinaryMatrix;

/// How many copies each qubit gets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum CopyVariant {
    /// `q_X` copies of every qubit.
    Original,
    /// As many copies as the qubit's X degree.
    Reduced,
    /// Every copy ends up with X degree exactly `targ_q_x`; qubits already
    /// at or below the target are left alone.
    Targeted { targ_q_x: usize },
}

impl CopyVariant {
    pub fn validate(&self) -> Result<()> {
        match *self {
            CopyVariant::Targeted { targ_q_x } if targ_q_x < 3 => Err(Error::InvalidOption(format!(
                "copy target must be at least 3, got {targ_q_x}"
            ))),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Copied {
    pub code: CssCode,
    /// Original qubit of every new column.
    pub origin: Vec<usize>,
}

/// Stabilizer edges each copy may take, for a qubit of X degree `deg`.
fn capacities(variant: CopyVariant, deg: usize, q_x: usize) -> Vec<usize> {
    match variant {
        CopyVariant::Original => vec![1; q_x.max(1)],
        CopyVariant::Reduced => vec![1; deg.max(1)],
        CopyVariant::Targeted { targ_q_x: t } => {
            if deg <= t {
                return vec![deg.max(1)];
            }
            let mut s = 2;
            while 2 * (t - 1) + (s - 2) * (t - 2) < deg {
                s += 1;
            }
            let mut caps = vec![t - 2; s];
            caps[0] = t - 1;
            caps[s - 1] = t - 1;
            caps
        }
    }
}

/// Splits every qubit into a chain of copies joined by weight-2 X checks.
/// Copies of a qubit are contiguous; X rows come first, then the linking
/// rows qubit by qubit. Z checks act on every copy.
pub fn copying(c: &CssCode, variant: CopyVariant) -> Result<Copied> {
    variant.validate()?;
    let (hx, hz) = (c.hx(), c.hz());
    let n = c.n();
    let degs = hx.col_weights();
    let q_x = c.weights().q_x;
    let caps: Vec<Vec<usize>> = degs.iter().map(|&d| capacities(variant, d, q_x)).collect();
    let mut offset = Vec::with_capacity(n + 1);
    offset.push(0);
    for cap in &caps {
        offset.push(offset.last().unwrap() + cap.len());
    }
    let new_n = offset[n];
    let origin: Vec<usize> = (0..n).flat_map(|i| std::iter::repeat_n(i, caps[i].len())).collect();

    // fill copies left to right in row order
    let mut cursor = vec![(0usize, 0usize); n];
    let mut x_rows: Vec<Vec<usize>> = Vec::new();
    for r in 0..hx.rows() {
        let row = hx
            .row_support(r)
            .into_iter()
            .map(|i| {
                let (copy, used) = &mut cursor[i];
                if *used == caps[i][*copy] {
                    *copy += 1;
                    *used = 0;
                }
                *used += 1;
                offset[i] + *copy
            })
            .collect();
        x_rows.push(row);
    }
    for i in 0..n {
        for j in offset[i]..offset[i + 1] - 1 {
            x_rows.push(vec![j, j + 1]);
        }
    }
    let z_rows: Vec<Vec<usize>> = (0..hz.rows())
        .map(|r| hz.row_support(r).into_iter().flat_map(|i| offset[i]..offset[i + 1]).collect())
        .collect();
    let code = CssCode::new(
        BinaryMatrix::from_supports(x_rows.len(), new_n, &x_rows),
        BinaryMatrix::from_supports(z_rows.len(), new_n, &z_rows),
    )?;
    Ok(Copied { code, origin })
}
