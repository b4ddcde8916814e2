//! Small dense matrices over a [`Scalar`] ring.
//!
//! Determinants are exact: a memoised cofactor expansion for dimension at
//! most 8 and fraction-free (Bareiss) elimination above that. Both only need
//! exact division, so they work over polynomial rings as well as fields.

use std::collections::HashMap;
use std::ops::{Add, Mul, Sub};

use num_traits::Zero;

use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

const COFACTOR_LIMIT: usize = 8;

impl<T: Scalar> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Build from row vectors. Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|v| v.clone() * s.clone())
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn pow(&self, n: usize) -> Self {
        assert!(self.is_square());
        let mut out = Self::identity(self.rows);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Copy of the block with top-left corner `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Overwrite the block at `(r0, c0)` with `b`.
    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    /// Add `b` into the block at `(r0, c0)`.
    pub fn add_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                let v = self.get(r0 + i, c0 + j).clone() + b.get(i, j).clone();
                self.set(r0 + i, c0 + j, v);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Exact determinant. Panics for non-square input.
    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        if self.rows <= COFACTOR_LIMIT {
            self.det_cofactor()
        } else {
            self.det_bareiss()
        }
    }

    /// Laplace expansion along successive rows, memoised on the set of
    /// remaining columns.
    pub fn det_cofactor(&self) -> T {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut memo: HashMap<u64, T> = HashMap::new();
        self.minor(0, (1u64 << n) - 1, &mut memo)
    }

    fn minor(&self, row: usize, cols: u64, memo: &mut HashMap<u64, T>) -> T {
        if row == self.rows {
            return T::one();
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let mut acc = T::zero();
        let mut sign_positive = true;
        for j in 0..self.cols {
            if cols & (1 << j) == 0 {
                continue;
            }
            let a = self.get(row, j);
            if !a.is_zero() {
                let sub = self.minor(row + 1, cols & !(1 << j), memo);
                let term = a.clone() * sub;
                acc = if sign_positive { acc + term } else { acc - term };
            }
            sign_positive = !sign_positive;
        }
        memo.insert(cols, acc.clone());
        acc
    }

    /// Fraction-free Gaussian elimination (Bareiss).
    pub fn det_bareiss(&self) -> T {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut a = self.clone();
        let mut sign_positive = true;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                let Some(piv) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                    return T::zero();
                };
                a.swap_rows(k, piv);
                sign_positive = !sign_positive;
            }
            let akk = a.get(k, k).clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = akk.clone() * a.get(i, j).clone()
                        - a.get(i, k).clone() * a.get(k, j).clone();
                    let v = num
                        .div_exact(&prev)
                        .expect("Bareiss step must divide exactly");
                    a.set(i, j, v);
                }
                a.set(i, k, T::zero());
            }
            prev = akk;
        }
        let d = a.get(n - 1, n - 1).clone();
        if sign_positive {
            d
        } else {
            -d
        }
    }

    pub fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 == r2 {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(r1 * self.cols + j, r2 * self.cols + j);
        }
    }
}

impl<T: Field> Matrix<T> {
    /// Gauss-Jordan inverse; `None` for singular input.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for k in 0..n {
            let piv = (k..n).find(|&i| !a.get(i, k).is_zero())?;
            a.swap_rows(k, piv);
            inv.swap_rows(k, piv);
            let p = T::one() / a.get(k, k).clone();
            for j in 0..n {
                let v = a.get(k, j).clone() * p.clone();
                a.set(k, j, v);
                let w = inv.get(k, j).clone() * p.clone();
                inv.set(k, j, w);
            }
            for i in 0..n {
                if i == k || a.get(i, k).is_zero() {
                    continue;
                }
                let f = a.get(i, k).clone();
                for j in 0..n {
                    let v = a.get(i, j).clone() - f.clone() * a.get(k, j).clone();
                    a.set(i, j, v);
                    let w = inv.get(i, j).clone() - f.clone() * inv.get(k, j).clone();
                    inv.set(i, j, w);
                }
            }
        }
        Some(inv)
    }
}

impl<T: Scalar> Mul<&Matrix<T>> for &Matrix<T> {
    type Output = Matrix<T>;

    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| {
                let a = self.get(i, k);
                if a.is_zero() {
                    acc
                } else {
                    acc + a.clone() * rhs.get(k, j).clone()
                }
            })
        })
    }
}

impl<T: Scalar> Add<&Matrix<T>> for &Matrix<T> {
    type Output = Matrix<T>;

    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).clone() + rhs.get(i, j).clone()
        })
    }
}

impl<T: Scalar> Sub<&Matrix<T>> for &Matrix<T> {
    type Output = Matrix<T>;

    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).clone() - rhs.get(i, j).clone()
        })
    }
}

impl<T: Scalar> Mul for Matrix<T> {
    type Output = Matrix<T>;

    fn mul(self, rhs: Matrix<T>) -> Matrix<T> {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::{RatMatrix, RatPoly};
    use num_rational::BigRational;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat(v, 1)).collect())
                .collect(),
        )
    }

    #[test]
    fn determinant_routes_agree() {
        let a = Matrix::from_fn(9, 9, |i, j| rat(((i * 7 + j * 3) % 5) as i64 - 2, (j % 3 + 1) as i64));
        assert_eq!(a.det_cofactor(), a.det_bareiss());
        let b = m(&[&[2, 1], &[7, 4]]);
        assert_eq!(b.det(), rat(1, 1));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).det(), BigRational::zero());
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Matrix::identity(3));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn polynomial_determinant() {
        // det [[-t, 1], [-1, z - t]] over Q[t] with z = 3: t^2 - 3t + 1
        let t = RatPoly::x();
        let c = |v: i64| RatPoly::constant(rat(v, 1));
        let a = Matrix::from_rows(vec![vec![-t.clone(), c(1)], vec![c(-1), c(3) - t]]);
        assert_eq!(a.det(), RatPoly::new(vec![rat(1, 1), rat(-3, 1), rat(1, 1)]));
        assert_eq!(a.det_bareiss(), a.det_cofactor());
    }
}
