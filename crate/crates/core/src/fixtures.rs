//! Named inputs: small classical codes, the 15-qubit Reed-Muller code and
//! quasi-cyclic base matrices.

use crate::css::CssCode;
use crate::gf2::BinaryMatrix;
use crate::ring::BaseMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fixture {
    Classical(BinaryMatrix),
    Css(CssCode),
    Base(BaseMatrix),
}

pub const NAMES: &[&str] = &[
    "code633", "code734", "hamming743", "qrm4", "qc1", "qc2", "qc3", "qc4", "qc5", "qc-mixed",
];

pub fn by_name(name: &str) -> Option<Fixture> {
    Some(match name {
        "code633" => Fixture::Classical(code633()),
        "code734" => Fixture::Classical(code734()),
        "hamming743" => Fixture::Classical(hamming743()),
        "qrm4" => Fixture::Css(qrm4()),
        "qc1" | "qc2" | "qc3" | "qc4" | "qc5" => {
            let i = name[2..].parse().ok()?;
            Fixture::Base(qc(i)?)
        }
        "qc-mixed" => Fixture::Base(qc_mixed()),
        _ => return None,
    })
}

/// A [6,3,3] code with row weights (4,3,3).
pub fn code633() -> BinaryMatrix {
    BinaryMatrix::from_rows(&[
        [1u8, 0, 0, 1, 1, 1],
        [0, 1, 0, 1, 1, 0],
        [0, 0, 1, 1, 0, 1],
    ])
}

/// A [7,3,4] code, `(I | P)` with one weight-4 row.
pub fn code734() -> BinaryMatrix {
    BinaryMatrix::from_rows(&[
        [1u8, 0, 0, 0, 1, 1, 1],
        [0, 1, 0, 0, 1, 1, 0],
        [0, 0, 1, 0, 1, 0, 1],
        [0, 0, 0, 1, 0, 1, 1],
    ])
}

/// Column `j` is `j + 1` in binary, least significant bit in row 0.
pub fn hamming743() -> BinaryMatrix {
    let mut h = BinaryMatrix::zeros(3, 7);
    for j in 0..7 {
        for b in 0..3 {
            h.set(b, j, (j + 1) >> b & 1 == 1);
        }
    }
    h
}

/// The [[15,1,3]] quantum Reed-Muller code: four X checks by bit of the
/// 1-based column index, the same four Z checks plus six weight-4 ones.
pub fn qrm4() -> CssCode {
    let mut hx = BinaryMatrix::zeros(4, 15);
    for j in 0..15 {
        for b in 0..4 {
            hx.set(b, j, (j + 1) >> b & 1 == 1);
        }
    }
    let extra: [[usize; 4]; 6] = [
        [3, 7, 11, 15],
        [5, 7, 13, 15],
        [6, 7, 14, 15],
        [10, 11, 14, 15],
        [12, 13, 14, 15],
        [9, 11, 13, 15],
    ];
    let extra: Vec<Vec<usize>> = extra.iter().map(|r| r.iter().map(|c| c - 1).collect()).collect();
    let hz = BinaryMatrix::vstack(&[&hx, &BinaryMatrix::from_supports(6, 15, &extra)]);
    CssCode::new(hx, hz).expect("Reed-Muller checks commute")
}

/// Quasi-cyclic base matrices 1 to 5 used for lifted products.
pub fn qc(i: usize) -> Option<BaseMatrix> {
    let (ell, rows): (usize, &[&[&str]]) = match i {
        1 => (13, &[&["1", "1", "1", "1"], &["1", "x", "x^3", "x^9"]]),
        2 => (
            31,
            &[
                &["x", "x^2", "x^4", "x^8"],
                &["x^5", "x^10", "x^20", "x^9"],
                &["x^25", "x^19", "x^7", "x^14"],
            ],
        ),
        3 => (7, &[&["1", "1", "1", "1"], &["1", "x", "x^2", "x^5"], &["1", "x^6", "x^3", "x"]]),
        4 => (9, &[&["1", "1", "1", "1"], &["1", "x", "x^6", "x^7"], &["1", "x^4", "x^5", "x^2"]]),
        5 => (
            17,
            &[&["1", "1", "1", "1"], &["1", "x", "x^2", "x^11"], &["1", "x^8", "x^12", "x^13"]],
        ),
        _ => return None,
    };
    Some(BaseMatrix::from_strs(ell, rows).expect("fixture polynomials parse"))
}

/// Base matrix with weight-2 entries, lift 46.
pub fn qc_mixed() -> BaseMatrix {
    BaseMatrix::from_strs(
        46,
        &[
            &["x+x^2", "0", "x^4", "x^8"],
            &["x^5", "x^9", "x^10+x^20", "0"],
            &["0", "x^25+x^19", "0", "x^7+x^14"],
        ],
    )
    .expect("fixture polynomials parse")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::LinearCode;

    #[test]
    fn every_name_resolves() {
        for name in NAMES {
            assert!(by_name(name).is_some(), "{name}");
        }
        assert!(by_name("qc6").is_none());
    }

    #[test]
    fn classical_fixture_params() {
        for (h, n, k) in [(code633(), 6, 3), (code734(), 7, 3), (hamming743(), 7, 4)] {
            let c = LinearCode::new(h);
            assert_eq!((c.n(), c.k()), (n, k));
        }
    }

    #[test]
    fn qrm_weights() {
        let c = qrm4();
        assert_eq!((c.n(), c.k()), (15, 1));
        assert_eq!(c.weights().as_tuple(), (8, 4, 8, 10));
    }
}
