//! Hermitian eigenvalues by cyclic complex Jacobi rotations.

use num_complex::Complex;
use num_traits::Float;

use super::NumericsError;

/// Absolute tolerance for the Hermitian check in [`HermMatrix::new`].
pub const HERMITIAN_TOL: f64 = 1e-12;

/// A dense Hermitian matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct HermMatrix<F> {
    n: usize,
    data: Vec<Complex<F>>,
}

impl<F: Float> HermMatrix<F> {
    /// Checks `|h_ij - conj(h_ji)| <= 1e-12` and finiteness, then
    /// symmetrises exactly.
    pub fn new(n: usize, data: Vec<Complex<F>>) -> Result<Self, NumericsError> {
        assert_eq!(data.len(), n * n, "HermMatrix data has wrong length");
        if data.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(NumericsError::NonFinite);
        }
        let tol = F::from(HERMITIAN_TOL).unwrap();
        let mut data = data;
        let two = F::one() + F::one();
        for i in 0..n {
            for j in i..n {
                let a = data[i * n + j];
                let b = data[j * n + i].conj();
                let dev = (a - b).norm();
                if dev > tol {
                    return Err(NumericsError::NotHermitian {
                        i,
                        j,
                        deviation: dev.to_f64().unwrap_or(f64::NAN),
                    });
                }
                let avg = (a + b) / two;
                data[i * n + j] = avg;
                data[j * n + i] = avg.conj();
            }
        }
        Ok(HermMatrix { n, data })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex<F> {
        self.data[i * self.n + j]
    }

    pub fn entries(&self) -> &[Complex<F>] {
        &self.data
    }

    pub fn trace(&self) -> F {
        (0..self.n).fold(F::zero(), |acc, i| acc + self.get(i, i).re)
    }

    pub fn frobenius_norm(&self) -> F {
        self.data.iter().fold(F::zero(), |acc, c| acc + c.norm_sqr()).sqrt()
    }
}

/// Eigenvalues in ascending order.
pub fn hermitian_eigs<F: Float>(h: &HermMatrix<F>) -> Result<Vec<F>, NumericsError> {
    let n = h.n;
    let mut a = h.data.clone();
    let idx = |i: usize, j: usize| i * n + j;
    let norm = h.frobenius_norm();
    let eps = F::epsilon();
    let zero = Complex::new(F::zero(), F::zero());
    const MAX_SWEEPS: usize = 100;
    let mut converged = n <= 1 || norm == F::zero();
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let off = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .fold(F::zero(), |acc, (i, j)| acc + a[idx(i, j)].norm_sqr())
            .sqrt();
        if off <= eps * norm {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[idx(p, q)];
                let r = apq.norm();
                if r <= F::min_positive_value() {
                    continue;
                }
                // Phase transform on row/column q makes a_pq real positive.
                let phase = apq / r;
                for k in 0..n {
                    a[idx(q, k)] = a[idx(q, k)] * phase;
                    a[idx(k, q)] = a[idx(k, q)] * phase.conj();
                }
                let app = a[idx(p, p)].re;
                let aqq = a[idx(q, q)].re;
                let two = F::one() + F::one();
                let theta = (aqq - app) / (two * r);
                let t = if theta >= F::zero() {
                    F::one() / (theta + (F::one() + theta * theta).sqrt())
                } else {
                    -F::one() / (-theta + (F::one() + theta * theta).sqrt())
                };
                let c = F::one() / (F::one() + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[idx(k, p)];
                    let akq = a[idx(k, q)];
                    a[idx(k, p)] = akp * c - akq * s;
                    a[idx(k, q)] = akp * s + akq * c;
                }
                for k in 0..n {
                    let apk = a[idx(p, k)];
                    let aqk = a[idx(q, k)];
                    a[idx(p, k)] = apk * c - aqk * s;
                    a[idx(q, k)] = apk * s + aqk * c;
                }
                a[idx(p, q)] = zero;
                a[idx(q, p)] = zero;
                a[idx(p, p)] = Complex::new(a[idx(p, p)].re, F::zero());
                a[idx(q, q)] = Complex::new(a[idx(q, q)].re, F::zero());
            }
        }
    }
    if !converged {
        return Err(NumericsError::EigenNoConvergence);
    }
    let mut eig: Vec<F> = (0..n).map(|i| a[idx(i, i)].re).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    Ok(eig)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::CFloat;

    fn herm(n: usize, v: &[(f64, f64)]) -> HermMatrix<f64> {
        HermMatrix::new(n, v.iter().map(|&(r, i)| Complex::new(r, i)).collect()).unwrap()
    }

    #[test]
    fn two_by_two() {
        let h = herm(2, &[(0.0, 0.0), (1.0, 0.0), (1.0, 0.0), (0.0, 0.0)]);
        let e = hermitian_eigs(&h).unwrap();
        assert!((e[0] + 1.0).abs() < 1e-14 && (e[1] - 1.0).abs() < 1e-14);
        let h = herm(2, &[(0.0, 0.0), (2.0, 0.0), (2.0, 0.0), (0.0, 0.0)]);
        let e = hermitian_eigs(&h).unwrap();
        assert!((e[0] + 2.0).abs() < 1e-14 && (e[1] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn complex_entries() {
        // [[1, i], [-i, 1]] has eigenvalues 0 and 2
        let h = herm(2, &[(1.0, 0.0), (0.0, 1.0), (0.0, -1.0), (1.0, 0.0)]);
        let e = hermitian_eigs(&h).unwrap();
        assert!(e[0].abs() < 1e-14 && (e[1] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let v: Vec<CFloat> = [(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (0.0, 0.0)]
            .iter()
            .map(|&(r, i)| Complex::new(r, i))
            .collect();
        assert!(matches!(
            HermMatrix::new(2, v),
            Err(NumericsError::NotHermitian { i: 0, j: 1, .. })
        ));
    }

    #[test]
    fn free_floquet_matrix_at_angle() {
        // L(e^{ix}) for the free p = 2, m = 1 operator
        let x: f64 = 0.7;
        let off = Complex::new(1.0, 0.0) + Complex::from_polar(1.0, -x);
        let h = HermMatrix::new(2, vec![Complex::new(0.0, 0.0), off, off.conj(), Complex::new(0.0, 0.0)]).unwrap();
        let e = hermitian_eigs(&h).unwrap();
        let mut want = [2.0 * (x / 2.0).cos(), 2.0 * ((x + std::f64::consts::TAU) / 2.0).cos()];
        want.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((e[0] - want[0]).abs() < 1e-12 && (e[1] - want[1]).abs() < 1e-12);
    }
}
