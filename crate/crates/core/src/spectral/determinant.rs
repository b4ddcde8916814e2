//! The characteristic determinant `D(z, tau) = det(M(z) - tau I)`.

use num_complex::Complex;
use num_traits::{One, Zero};

use super::SpectralError;
use crate::exactmath::{LaurentSym, Matrix, Poly};
use crate::operator::PeriodicOperator;
use crate::scalar::Scalar;
use crate::{BiPoly, CRational, RatPoly, Rational};

/// `D(z, tau) = sum_j tau^(2m-j) xi_j(z)` together with the normalised
/// `q(z, tau) = D / (c tau^m)`, which is monic of degree `pm` in `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharDeterminant {
    p: usize,
    m: usize,
    d: BiPoly,
    xi: Vec<RatPoly>,
    c: Rational,
    q: LaurentSym<Rational>,
}

/// `xi_1..xi_k` from the power sums `T_n = Tr M^n` (Newton's identities).
pub fn xi_from_traces(traces: &[RatPoly], k: usize) -> Vec<RatPoly> {
    let mut xi = vec![RatPoly::one()];
    for s in 1..=k {
        let mut acc = RatPoly::zero();
        for j in 0..s {
            acc = &acc + &(&traces[s - j] * &xi[j]);
        }
        xi.push(acc.scale(&(-Rational::one() / Rational::from_i64(s as i64))));
    }
    xi
}

impl CharDeterminant {
    /// Determinant route with an independent check through the trace
    /// recursion, the palindrome property and the leading coefficient.
    pub fn new(op: &PeriodicOperator<Rational>) -> Result<Self, SpectralError> {
        let (p, m) = (op.period(), op.block_size());
        let mm = op.modified_monodromy();
        // M(z) - tau I with entries in Q[z][tau]
        let shifted: Matrix<Poly<RatPoly>> = Matrix::from_fn(2 * m, 2 * m, |i, j| {
            let mut e = vec![mm.get(i, j).clone()];
            if i == j {
                e.push(-RatPoly::one());
            }
            Poly::new(e)
        });
        // det is a polynomial in tau, but with tau outermost
        let d_tau = shifted.det();
        let xi: Vec<RatPoly> = (0..=2 * m).map(|j| d_tau.coeff(2 * m - j)).collect();

        // trace route
        let mut traces = vec![RatPoly::from_i64(2 * m as i64)];
        let mut pw = Matrix::identity(2 * m);
        for _ in 1..=m {
            pw = &pw * &mm;
            traces.push(pw.trace());
        }
        let newton = xi_from_traces(&traces, m);
        if let Some(j) = (1..=m).find(|&j| newton[j] != xi[j]) {
            return Err(SpectralError::Consistency(format!(
                "determinant and trace routes disagree at xi_{j}"
            )));
        }
        let c = op.c();
        let cd = Self::from_xi(p, m, xi)?;
        if cd.c != c {
            return Err(SpectralError::Consistency(format!(
                "leading coefficient of xi_m is {} but (-1)^m det A_p = {}",
                cd.c, c
            )));
        }
        Ok(cd)
    }

    /// Build from `xi_0..xi_2m`, checking `xi_0 = 1`, the palindrome
    /// property, the degree bounds `deg xi_j <= pj` and `deg xi_m = pm`.
    pub fn from_xi(p: usize, m: usize, xi: Vec<RatPoly>) -> Result<Self, SpectralError> {
        if xi.len() != 2 * m + 1 || !xi[0].is_one() {
            return Err(SpectralError::Consistency("xi_0 must be 1".into()));
        }
        if let Some(j) = (0..=2 * m).find(|&j| xi[j] != xi[2 * m - j]) {
            return Err(SpectralError::Consistency(format!(
                "palindrome violated: xi_{j} != xi_{}",
                2 * m - j
            )));
        }
        if let Some(j) = (0..=m).find(|&j| xi[j].degree().is_some_and(|d| d > p * j)) {
            return Err(SpectralError::Consistency(format!("deg xi_{j} exceeds {}", p * j)));
        }
        if xi[m].degree() != Some(p * m) {
            return Err(SpectralError::Consistency(format!(
                "xi_m has degree {:?}, expected {}",
                xi[m].degree(),
                p * m
            )));
        }
        let c = xi[m].coeff(p * m);
        let inv_c = Rational::one() / c.clone();
        let q = LaurentSym::from_coeffs((0..=2 * m).rev().map(|j| xi[j].scale(&inv_c)).collect());
        let d = Poly::new((0..=2 * m).map(|k| xi[2 * m - k].clone()).collect());
        Ok(CharDeterminant { p, m, d, xi, c, q })
    }

    pub fn period(&self) -> usize {
        self.p
    }

    pub fn block_size(&self) -> usize {
        self.m
    }

    /// `D` as a polynomial in `tau` (outer) with coefficients in `Q[z]`.
    pub fn d(&self) -> &BiPoly {
        &self.d
    }

    pub fn xi(&self) -> &[RatPoly] {
        &self.xi
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn q(&self) -> &LaurentSym<Rational> {
        &self.q
    }

    /// `q(z, tau0)` for `tau0 = +-1` as an exact polynomial in `z`.
    pub fn q_at_sign(&self, negative: bool) -> RatPoly {
        let tau = if negative { -Rational::one() } else { Rational::one() };
        self.q.eval_tau(&tau, |x| x.clone())
    }

    /// `q(z, tau0)` for a Gaussian-rational `tau0`.
    pub fn q_at_gaussian(&self, tau: &CRational) -> Poly<CRational> {
        self.q.eval_tau(tau, |x| Complex::new(x.clone(), Rational::zero()))
    }

    /// `q(z, tau)` for a complex float `tau` (coefficients lowest first).
    pub fn q_at_float(&self, tau: Complex<f64>) -> Vec<Complex<f64>> {
        use num_traits::ToPrimitive;
        let qf = self.q.map(|x| Complex::new(x.to_f64().unwrap_or(f64::NAN), 0.0));
        qf.eval_tau(&tau, |x| *x).into_coeffs()
    }
}
