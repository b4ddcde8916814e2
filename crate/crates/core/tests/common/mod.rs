#![allow(dead_code)]

use blochjac::exactmath::{Matrix, Poly};
use blochjac::operator::PeriodicOperator;
use blochjac::spectral::{band_structure, BandOptions, BandStructure, CharDeterminant, SurfacePoly};
use blochjac::{RatPoly, Rational};

pub struct Analysis {
    pub cd: CharDeterminant,
    pub sp: SurfacePoly,
    pub bs: BandStructure,
}

pub fn analyze(op: &PeriodicOperator<Rational>) -> Analysis {
    let cd = CharDeterminant::new(op).expect("determinant");
    let sp = SurfacePoly::new(&cd).expect("surface polynomial");
    let bs = band_structure(op, &cd, &sp, &BandOptions::default()).expect("bands");
    Analysis { cd, sp, bs }
}

pub fn zpoly(c: &[(i64, i64)]) -> RatPoly {
    Poly::new(c.iter().map(|&(n, d)| Rational::new(n.into(), d.into())).collect())
}

pub fn int_poly(c: &[i64]) -> RatPoly {
    Poly::new(c.iter().map(|&n| Rational::from_integer(n.into())).collect())
}

/// Lyapunov function of a scalar periodic Jacobi operator, from an
/// explicit product of `2 x 2` transfer matrices.
pub fn scalar_lyapunov(a: &[Rational], b: &[Rational]) -> RatPoly {
    let p = a.len();
    let one = RatPoly::constant(Rational::from_integer(1.into()));
    let zero = RatPoly::constant(Rational::from_integer(0.into()));
    let mut acc = [[one.clone(), zero.clone()], [zero.clone(), one.clone()]];
    for n in 0..p {
        let prev = &a[(n + p - 1) % p];
        let t = [
            [zero.clone(), one.clone()],
            [
                RatPoly::constant(-(prev / &a[n])),
                Poly::new(vec![-(&b[n] / &a[n]), Rational::from_integer(1.into()) / &a[n]]),
            ],
        ];
        let mut next = [[zero.clone(), zero.clone()], [zero.clone(), zero.clone()]];
        for (i, row) in next.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = &(&t[i][0] * &acc[0][j]) + &(&t[i][1] * &acc[1][j]);
            }
        }
        acc = next;
    }
    (&acc[0][0] + &acc[1][1]).scale(&Rational::new(1.into(), 2.into()))
}

pub fn assert_close_sets(got: &[f64], want: &[f64], tol: f64) {
    let mut g = got.to_vec();
    let mut w = want.to_vec();
    g.sort_by(f64::total_cmp);
    w.sort_by(f64::total_cmp);
    assert_eq!(g.len(), w.len(), "{g:?} vs {w:?}");
    for (x, y) in g.iter().zip(&w) {
        assert!((x - y).abs() <= tol, "{g:?} vs {w:?}");
    }
}

pub fn identity_blocks(m: usize, p: usize) -> Vec<Matrix<Rational>> {
    vec![Matrix::identity(m); p]
}
