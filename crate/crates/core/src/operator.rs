//! The operator model and its derived matrices.
//!
//! Blocks are indexed `1..=p` in the public API; `a_0` means `a_p`.

use std::fmt;

use num_complex::Complex;
use num_traits::ToPrimitive;

use crate::exactmath::{Matrix, Poly};
use crate::numerics::{HermMatrix, NumericsError};
use crate::scalar::Field;

/// One failed hypothesis on the coefficient data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyPeriod,
    ZeroBlockSize,
    Shape { which: char, n: usize, rows: usize, cols: usize },
    CountMismatch { a: usize, b: usize },
    NotSymmetric { n: usize, i: usize, j: usize },
    Singular { n: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyPeriod => write!(f, "period p must be at least 1"),
            Violation::ZeroBlockSize => write!(f, "block size m must be at least 1"),
            Violation::Shape { which, n, rows, cols } => {
                write!(f, "{which}_{n} has shape {rows}x{cols}, expected m x m")
            }
            Violation::CountMismatch { a, b } => {
                write!(f, "got {a} a-blocks but {b} b-blocks")
            }
            Violation::NotSymmetric { n, i, j } => {
                write!(f, "b not symmetric at n={n} (entry {},{})", i + 1, j + 1)
            }
            Violation::Singular { n } => write!(f, "det a_{n} = 0"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OperatorError {
    #[error("invalid operator: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("|tau| = {0} is not 1; the Floquet matrix is only Hermitian on the unit circle")]
    NotUnitCircle(f64),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Check the coefficient hypotheses: consistent shapes, symmetric `b_n`,
/// invertible `a_n`. Returns every violation found.
pub fn validate<T: Field>(m: usize, a: &[Matrix<T>], b: &[Matrix<T>]) -> Vec<Violation> {
    let mut out = Vec::new();
    if a.is_empty() {
        out.push(Violation::EmptyPeriod);
    }
    if m == 0 {
        out.push(Violation::ZeroBlockSize);
    }
    if a.len() != b.len() {
        out.push(Violation::CountMismatch { a: a.len(), b: b.len() });
    }
    for (which, list) in [('a', a), ('b', b)] {
        for (k, mat) in list.iter().enumerate() {
            if mat.rows() != m || mat.cols() != m {
                out.push(Violation::Shape {
                    which,
                    n: k + 1,
                    rows: mat.rows(),
                    cols: mat.cols(),
                });
            }
        }
    }
    if !out.is_empty() {
        return out;
    }
    for (k, bn) in b.iter().enumerate() {
        'outer: for i in 0..m {
            for j in i + 1..m {
                if bn.get(i, j) != bn.get(j, i) {
                    out.push(Violation::NotSymmetric { n: k + 1, i, j });
                    break 'outer;
                }
            }
        }
    }
    for (k, an) in a.iter().enumerate() {
        if an.det().is_zero() {
            out.push(Violation::Singular { n: k + 1 });
        }
    }
    out
}

/// A `p`-periodic block Jacobi operator with `m x m` coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicOperator<T> {
    m: usize,
    a: Vec<Matrix<T>>,
    b: Vec<Matrix<T>>,
}

impl<T: Field> PeriodicOperator<T> {
    /// Validate and build. `a` and `b` hold `a_1..a_p` and `b_1..b_p`.
    pub fn new(a: Vec<Matrix<T>>, b: Vec<Matrix<T>>) -> Result<Self, OperatorError> {
        let m = a.first().map_or(0, Matrix::rows);
        let violations = validate(m, &a, &b);
        if violations.is_empty() {
            Ok(PeriodicOperator { m, a, b })
        } else {
            Err(OperatorError::Invalid(violations))
        }
    }

    pub fn period(&self) -> usize {
        self.a.len()
    }

    pub fn block_size(&self) -> usize {
        self.m
    }

    /// `a_n` for any integer `n`, periodically extended (`a_0 = a_p`).
    pub fn a(&self, n: i64) -> &Matrix<T> {
        &self.a[(n - 1).rem_euclid(self.period() as i64) as usize]
    }

    pub fn b(&self, n: i64) -> &Matrix<T> {
        &self.b[(n - 1).rem_euclid(self.period() as i64) as usize]
    }

    pub fn a_blocks(&self) -> &[Matrix<T>] {
        &self.a
    }

    pub fn b_blocks(&self) -> &[Matrix<T>] {
        &self.b
    }

    /// `A_p = (a_1 a_2 ... a_p)^{-1}`, the leading block of the monodromy.
    pub fn a_p(&self) -> Matrix<T> {
        self.a
            .iter()
            .fold(Matrix::identity(self.m), |acc, an| &acc * an)
            .inverse()
            .expect("validated operators have invertible a_n")
    }

    /// `c = (-1)^m det A_p`.
    pub fn c(&self) -> T {
        let d = self.a_p().det();
        if self.m % 2 == 1 {
            -d
        } else {
            d
        }
    }

    /// `T_n(z) = [[0, I], [-a_n^{-1} a_{n-1}^T, a_n^{-1}(z - b_n)]]`.
    pub fn transfer_matrix(&self, n: i64) -> Matrix<Poly<T>> {
        let m = self.m;
        let inv = self.a(n).inverse().expect("validated");
        let lower_left = (&inv * &self.a(n - 1).transpose()).scale(&-T::one());
        let z_minus_b = Matrix::from_fn(m, m, |i, j| {
            let mut e = vec![-self.b(n).get(i, j).clone()];
            if i == j {
                e.push(T::one());
            }
            Poly::new(e)
        });
        let lower_right = &lift(&inv) * &z_minus_b;
        let mut out = Matrix::zeros(2 * m, 2 * m);
        out.set_block(0, m, &Matrix::identity(m));
        out.set_block(m, 0, &lift(&lower_left));
        out.set_block(m, m, &lower_right);
        out
    }

    /// `M_p = T_p ... T_1`.
    pub fn monodromy(&self) -> Matrix<Poly<T>> {
        (1..=self.period() as i64).fold(Matrix::identity(2 * self.m), |acc, n| {
            &self.transfer_matrix(n) * &acc
        })
    }

    /// `M = P_0 M_p P_0^{-1}` with `P_0 = a_p^T (+) I`. This conjugation
    /// makes `M` symplectic: `M^T J M = J`.
    pub fn modified_monodromy(&self) -> Matrix<Poly<T>> {
        let m = self.m;
        let ap_t = self.a(0).transpose();
        let ap_t_inv = ap_t.inverse().expect("validated");
        let mut p0 = Matrix::identity(2 * m);
        p0.set_block(0, 0, &ap_t);
        let mut p0_inv = Matrix::identity(2 * m);
        p0_inv.set_block(0, 0, &ap_t_inv);
        &(&lift(&p0) * &self.monodromy()) * &lift(&p0_inv)
    }

    /// `L(tau)` over any field containing the coefficients, for nonzero `tau`.
    /// Row block `n` holds `a_{n-1}^T, b_n, a_n`; the corners carry
    /// `tau^{-1} a_p^T` and `tau a_p`. For `p <= 2` overlapping blocks add.
    pub fn floquet_matrix_generic<K: Field>(&self, tau: &K, emb: impl Fn(&T) -> K) -> Matrix<K> {
        let (p, m) = (self.period(), self.m);
        let tau_inv = K::one() / tau.clone();
        let mut out = Matrix::zeros(p * m, p * m);
        for n in 0..p {
            let idx = n as i64 + 1;
            out.add_block(n * m, n * m, &self.b(idx).map(&emb));
            let next = (n + 1) % p;
            let fwd = if n == p - 1 { tau.clone() } else { K::one() };
            out.add_block(n * m, next * m, &self.a(idx).map(&emb).scale(&fwd));
            let prev = (n + p - 1) % p;
            let back = if n == 0 { tau_inv.clone() } else { K::one() };
            out.add_block(n * m, prev * m, &self.a(idx - 1).transpose().map(&emb).scale(&back));
        }
        out
    }
}

impl<T: Field + ToPrimitive> PeriodicOperator<T> {
    /// `L(tau)` for `|tau| = 1` as a Hermitian float matrix.
    pub fn floquet_matrix(&self, tau: Complex<f64>) -> Result<HermMatrix<f64>, OperatorError> {
        if (tau.norm() - 1.0).abs() > 1e-12 {
            return Err(OperatorError::NotUnitCircle(tau.norm()));
        }
        let l = self.floquet_matrix_generic(&tau, |x| Complex::new(x.to_f64().unwrap_or(f64::NAN), 0.0));
        Ok(HermMatrix::new(l.rows(), l.entries().to_vec())?)
    }

    /// `L(e^{ix})`.
    pub fn floquet_matrix_at_angle(&self, x: f64) -> Result<HermMatrix<f64>, OperatorError> {
        self.floquet_matrix(Complex::from_polar(1.0, x))
    }
}

fn lift<T: Field>(m: &Matrix<T>) -> Matrix<Poly<T>> {
    m.map(|x| Poly::constant(x.clone()))
}

/// The standard symplectic form `J = [[0, I], [-I, 0]]`.
pub fn symplectic_form<T: Field>(m: usize) -> Matrix<T> {
    let mut j = Matrix::zeros(2 * m, 2 * m);
    j.set_block(0, m, &Matrix::identity(m));
    j.set_block(m, 0, &Matrix::<T>::identity(m).scale(&-T::one()));
    j
}

/// `M^T J M - J` for a polynomial matrix.
pub fn symplectic_defect<T: Field>(mm: &Matrix<Poly<T>>) -> Matrix<Poly<T>> {
    let j = lift(&symplectic_form::<T>(mm.rows() / 2));
    &(&(&mm.transpose() * &j) * mm) - &j
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::{RatMatrix, RatPoly, Rational};
    use num_traits::One;

    fn mat(rows: &[&[i64]]) -> RatMatrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v, 1)).collect()).collect())
    }

    fn p(c: &[i64]) -> RatPoly {
        Poly::new(c.iter().map(|&v| rat(v, 1)).collect())
    }

    fn free(p: usize, m: usize) -> PeriodicOperator<Rational> {
        PeriodicOperator::new(vec![Matrix::identity(m); p], vec![Matrix::zeros(m, m); p]).unwrap()
    }

    #[test]
    fn validation_reports() {
        let err = PeriodicOperator::new(vec![mat(&[&[1, 0], &[0, 1]])], vec![mat(&[&[0, 1], &[2, 0]])]);
        match err {
            Err(OperatorError::Invalid(v)) => {
                assert_eq!(v[0].to_string(), "b not symmetric at n=1 (entry 1,2)")
            }
            other => panic!("unexpected {other:?}"),
        }
        let err = PeriodicOperator::new(vec![mat(&[&[0, 0], &[1, 1]])], vec![mat(&[&[0, 0], &[0, 0]])]);
        match err {
            Err(OperatorError::Invalid(v)) => assert_eq!(v[0].to_string(), "det a_1 = 0"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(validate(2, free(3, 2).a_blocks(), free(3, 2).b_blocks()).is_empty());
    }

    #[test]
    fn transfer_examples() {
        let t = free(1, 1).transfer_matrix(1);
        assert_eq!(t, Matrix::from_rows(vec![vec![p(&[]), p(&[1])], vec![p(&[-1]), p(&[0, 1])]]));
        let op = PeriodicOperator::new(vec![mat(&[&[2]])], vec![mat(&[&[1]])]).unwrap();
        let t = op.transfer_matrix(1);
        assert_eq!(*t.get(1, 0), p(&[-1]));
        assert_eq!(*t.get(1, 1), RatPoly::new(vec![rat(-1, 2), rat(1, 2)]));
    }

    #[test]
    fn monodromy_examples() {
        let mono = free(2, 1).monodromy();
        let want = Matrix::from_rows(vec![vec![p(&[-1]), p(&[0, 1])], vec![p(&[0, -1]), p(&[-1, 0, 1])]]);
        assert_eq!(mono, want);
        assert_eq!(free(2, 1).modified_monodromy(), want);
    }

    #[test]
    fn symplectic_and_unimodular() {
        let op = PeriodicOperator::new(
            vec![mat(&[&[1, 2], &[0, 3]]), mat(&[&[2, 0], &[1, -1]])],
            vec![mat(&[&[1, 2], &[2, 0]]), mat(&[&[0, -1], &[-1, 5]])],
        )
        .unwrap();
        let mm = op.modified_monodromy();
        assert!(symplectic_defect(&mm).is_zero());
        assert_eq!(mm.det(), RatPoly::one());
        let scalar = PeriodicOperator::new(vec![mat(&[&[2]])], vec![mat(&[&[0]])]).unwrap();
        assert!(symplectic_defect(&scalar.modified_monodromy()).is_zero());
    }

    #[test]
    fn monodromy_leading_block() {
        let op = PeriodicOperator::new(
            vec![mat(&[&[1, 2], &[0, 3]]), mat(&[&[2, 0], &[1, -1]]), mat(&[&[1, 1], &[1, 2]])],
            vec![mat(&[&[1, 2], &[2, 0]]), mat(&[&[0, -1], &[-1, 5]]), mat(&[&[0, 0], &[0, 0]])],
        )
        .unwrap();
        let mono = op.monodromy();
        let ap = op.a_p();
        for i in 0..4 {
            for j in 0..4 {
                let e = mono.get(i, j);
                assert!(e.degree().is_none_or(|d| d <= 3));
                let lead = e.coeff(3);
                let want = if i >= 2 && j >= 2 { ap.get(i - 2, j - 2).clone() } else { rat(0, 1) };
                assert_eq!(lead, want);
            }
        }
    }

    #[test]
    fn floquet_layouts() {
        let one = Complex::new(1.0, 0.0);
        let l = free(2, 1).floquet_matrix(one).unwrap();
        assert_eq!(l.get(0, 1), Complex::new(2.0, 0.0));
        assert_eq!(l.get(0, 0), Complex::new(0.0, 0.0));
        let l = free(3, 1).floquet_matrix(one).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 0.0 } else { 1.0 };
                assert_eq!(l.get(i, j).re, want);
            }
        }
        assert!(matches!(
            free(2, 1).floquet_matrix(Complex::new(2.0, 0.0)),
            Err(OperatorError::NotUnitCircle(_))
        ));
    }
}
