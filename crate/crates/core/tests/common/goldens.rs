//! Bit-exact worked examples, shared by the unit-style tests and the
//! acceptance runner. Each panics on mismatch.

use wtred::classical::repetition_check;
use wtred::css::CssCode;
use wtred::fixtures::qrm4;
use wtred::gf2::BinaryMatrix;
use wtred::quantum_wtred::*;

pub fn sup(rows: usize, cols: usize, s: &[&[usize]]) -> BinaryMatrix {
    let v: Vec<Vec<usize>> = s.iter().map(|r| r.to_vec()).collect();
    BinaryMatrix::from_supports(rows, cols, &v)
}

pub fn code(nx: usize, nz: usize, n: usize, x: &[&[usize]], z: &[&[usize]]) -> CssCode {
    CssCode::new(sup(nx, n, x), sup(nz, n, z)).unwrap()
}

pub fn copying_worked_example() {
    let c = code(4, 1, 6, &[&[0, 1, 2], &[0, 1, 4, 5], &[0, 2, 3, 4], &[0, 5]], &[&[0, 2, 5]]);
    let out = copying(&c, CopyVariant::Original).unwrap();
    let mut x: Vec<Vec<usize>> = vec![vec![0, 4, 8], vec![1, 5, 16, 20], vec![2, 9, 12, 17], vec![3, 21]];
    for q in 0..6 {
        for j in 0..3 {
            x.push(vec![4 * q + j, 4 * q + j + 1]);
        }
    }
    assert_eq!(out.code.hx(), &BinaryMatrix::from_supports(22, 24, &x));
    let z: Vec<usize> = (0..4).chain(8..12).chain(20..24).collect();
    assert_eq!(out.code.hz(), &BinaryMatrix::from_supports(1, 24, &[z]));
    assert_eq!(c.weights().as_tuple(), (4, 4, 3, 1));
    assert_eq!(out.code.weights().as_tuple(), (4, 3, 12, 1));
    assert_eq!(out.origin, (0..24).map(|j| j / 4).collect::<Vec<_>>());
}

pub fn gauging_worked_example() {
    let x: &[&[usize]] = &[&[1, 2, 5, 6, 9, 10, 13, 14], &[0, 2, 4, 6, 8, 10, 12, 14]];
    let z: &[&[usize]] = &[
        &[7, 8, 9, 10, 11, 12, 13, 14],
        &[3, 4, 5, 6, 11, 12, 13, 14],
        &[1, 2, 5, 6, 9, 10, 13, 14],
        &[0, 2, 4, 6, 8, 10, 12, 14],
    ];
    let c = code(2, 4, 15, x, z);
    let g = gauging(&c).unwrap();
    let ex: &[&[usize]] = &[
        &[1, 2, 15],
        &[5, 15, 16],
        &[6, 16, 17],
        &[9, 17, 18],
        &[10, 18, 19],
        &[13, 14, 19],
        &[0, 2, 20],
        &[4, 20, 21],
        &[6, 21, 22],
        &[8, 22, 23],
        &[10, 23, 24],
        &[12, 14, 24],
    ];
    let ez: &[&[usize]] = &[
        &[7, 8, 9, 10, 11, 12, 13, 14, 18, 23],
        &[3, 4, 5, 6, 11, 12, 13, 14, 16, 21],
        &[1, 2, 5, 6, 9, 10, 13, 14, 16, 18, 20, 21, 24],
        &[0, 2, 4, 6, 8, 10, 12, 14, 15, 16, 19, 21, 23],
    ];
    assert_eq!(g.hx(), &sup(12, 25, ex));
    assert_eq!(g.hz(), &sup(4, 25, ez));
    assert_eq!(c.weights().as_tuple(), (8, 2, 8, 4));
    assert_eq!(g.weights().as_tuple(), (3, 2, 13, 4));
    assert_eq!(g.k(), c.k());
}

pub fn thickening_direct(c: &CssCode, ell: usize) -> (BinaryMatrix, BinaryMatrix, BinaryMatrix) {
    let (hx, hz) = (c.hx(), c.hz());
    let (n, nx, nz) = (c.n(), c.n_x(), c.n_z());
    let h = repetition_check(ell);
    let i = BinaryMatrix::identity;
    let tx = BinaryMatrix::hstack(&[&hx.kron(&i(ell)), &i(nx).kron(&h.transpose())]);
    let top = BinaryMatrix::hstack(&[&hz.kron(&i(ell)), &BinaryMatrix::zeros(nz * ell, nx * (ell - 1))]);
    let bottom = BinaryMatrix::hstack(&[&i(n).kron(&h), &hx.transpose().kron(&i(ell - 1))]);
    let tz = BinaryMatrix::vstack(&[&top, &bottom]);
    let d3 = BinaryMatrix::vstack(&[&i(nz).kron(&h.transpose()), &hz.transpose().kron(&i(ell - 1))]);
    (tx, tz, d3)
}

pub fn thickening_worked_example() {
    let c = code(1, 2, 4, &[&[0, 1, 2, 3]], &[&[0, 1], &[0, 2]]);
    let th = thicken(&c, 3).unwrap();
    let ex: &[&[usize]] = &[&[0, 3, 6, 9, 12], &[1, 4, 7, 10, 12, 13], &[2, 5, 8, 11, 13]];
    let ez: &[&[usize]] = &[
        &[0, 3],
        &[1, 4],
        &[2, 5],
        &[0, 6],
        &[1, 7],
        &[2, 8],
        &[0, 1, 12],
        &[1, 2, 13],
        &[3, 4, 12],
        &[4, 5, 13],
        &[6, 7, 12],
        &[7, 8, 13],
        &[9, 10, 12],
        &[10, 11, 13],
    ];
    let ed3: &[&[usize]] = &[
        &[0],
        &[0, 1],
        &[1],
        &[2],
        &[2, 3],
        &[3],
        &[0, 2],
        &[1, 3],
        &[0],
        &[1],
        &[2],
        &[3],
        &[],
        &[],
    ];
    assert_eq!(th.code.hx(), &sup(3, 14, ex));
    assert_eq!(th.code.hz(), &sup(14, 14, ez));
    assert_eq!(th.partial3, sup(14, 4, ed3));
    assert!(th.partial3.transpose().mul(th.code.hz()).is_zero());

    let (chosen, hs) = choose_heights(&th, &Heights::Explicit(vec![1, 2])).unwrap();
    assert_eq!(hs, vec![1, 2]);
    let mut kept: Vec<&[usize]> = vec![&[0, 3], &[1, 7]];
    kept.extend_from_slice(&ez[6..]);
    assert_eq!(chosen.hz(), &sup(10, 14, &kept));
    assert_eq!(c.weights().as_tuple(), (4, 1, 2, 2));
    assert_eq!(chosen.weights().as_tuple(), (6, 2, 3, 4));
    assert_eq!(chosen.k(), c.k());
}

pub fn thickening_matches_direct_formula() {
    let c = gauging(&copying(&qrm4(), CopyVariant::Reduced).unwrap().code).unwrap();
    for ell in 2..=4 {
        let th = thicken(&c, ell).unwrap();
        let (tx, tz, d3) = thickening_direct(&c, ell);
        assert_eq!(th.code.hx(), &tx);
        assert_eq!(th.code.hz(), &tz);
        assert_eq!(th.partial3, d3);
        let n = c.n();
        assert_eq!(th.code.n(), ell * n + (ell - 1) * c.n_x());
        assert_eq!(th.code.k(), c.k());
    }
}

pub fn coning_example() -> CssCode {
    let x: &[&[usize]] = &[
        &[0, 1],
        &[1, 2],
        &[2, 3],
        &[3, 4],
        &[4, 5],
        &[5, 6],
        &[0, 6],
        &[3, 7],
        &[7, 8],
        &[8, 9],
        &[7, 9],
    ];
    code(11, 1, 10, x, &[&[0, 1, 2, 3, 4, 5, 6, 7, 8, 9]])
}

pub fn coning_worked_example() {
    let c = coning_example();
    let s = cone_sector(c.hx(), 0, (0..10).collect(), None, &ConingOptions::default());
    let d0: &[&[usize]] = &[&[0, 5, 6, 11], &[1, 4, 11, 12], &[2, 3, 12], &[8, 9, 10]];
    assert_eq!(s.d0(), sup(4, 13, d0));
    let mut d1: Vec<Vec<usize>> = (0..11).map(|r| c.hx().row_support(r)).collect();
    d1.push(vec![1, 5]);
    d1.push(vec![2, 4]);
    assert_eq!(s.d1(), BinaryMatrix::from_supports(13, 10, &d1));
    assert_eq!(s.chords(), 2);
    assert!(s.d0().mul(&s.d1()).is_zero());
}

pub fn octagon_triangulation() {
    let x: Vec<Vec<usize>> = (0..8).map(|i| vec![i, (i + 1) % 8]).collect();
    let hx = BinaryMatrix::from_supports(8, 8, &x);
    let opts = ConingOptions {
        style: CellulationStyle::Triangulate,
        cellulate_above: 3,
        ..ConingOptions::default()
    };
    let s = cone_sector(&hx, 0, (0..8).collect(), None, &opts);
    let d0: &[&[usize]] = &[&[0, 1, 8], &[2, 8, 9], &[3, 9, 10], &[4, 10, 11], &[5, 11, 12], &[6, 7, 12]];
    assert_eq!(s.d0(), sup(6, 13, d0));
}
