use crate::css::CssCode;
use crate::error::Result;
use crate::gf2::BinaryMatrix;

/// Replaces every X check of weight `w > 3` on `v_1 < … < v_w` by the chain
/// `{v1,v2,u1}, {v3,u1,u2}, …, {v_{w−1},u_{w−3},v_w}` on `w − 3` new qubits,
/// in place. New qubits are appended per reduced row in row order. Z checks
/// pick up new qubit `u_m` when they overlap `{v_1..v_{m+1}}` oddly.
pub fn gauging(c: &CssCode) -> Result<CssCode> {
    let (hx, hz) = (c.hx(), c.hz());
    let n = c.n();
    let mut x_rows: Vec<Vec<usize>> = Vec::new();
    // (support, first new column) per reduced row
    let mut gadgets: Vec<(Vec<usize>, usize)> = Vec::new();
    let mut next = n;
    for r in 0..hx.rows() {
        let v = hx.row_support(r);
        let w = v.len();
        if w <= 3 {
            x_rows.push(v);
            continue;
        }
        let u = |m: usize| next + m - 1;
        x_rows.push(vec![v[0], v[1], u(1)]);
        for t in 1..=w - 4 {
            x_rows.push(vec![v[t + 1], u(t), u(t + 1)]);
        }
        x_rows.push(vec![v[w - 2], u(w - 3), v[w - 1]]);
        gadgets.push((v, next));
        next += w - 3;
    }
    let mut new_hz = BinaryMatrix::zeros(hz.rows(), next);
    for j in 0..hz.rows() {
        for i in hz.row_support(j) {
            new_hz.set(j, i, true);
        }
        for (v, base) in &gadgets {
            let mut parity = hz.get(j, v[0]);
            for (m, &q) in v.iter().enumerate().take(v.len() - 2).skip(1) {
                parity ^= hz.get(j, q);
                if parity {
                    new_hz.set(j, base + m - 1, true);
                }
            }
        }
    }
    let new_hx = BinaryMatrix::from_supports(x_rows.len(), next, &x_rows);
    CssCode::new(new_hx, new_hz)
}
