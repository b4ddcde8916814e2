//! Laurent polynomials in `tau` with exponents `-m..=m` and coefficients
//! in `K[z]`, and their conversion to the Chebyshev variable
//! `nu = (tau + 1/tau) / 2`.

use num_traits::Zero;

use crate::exactmath::{chebyshev_table, Error, Poly};
use crate::scalar::{Field, Scalar};

/// `sum_{k=-m}^{m} c_k(z) tau^k`.
///
/// The characteristic determinant divided by `tau^m` lives here and is
/// palindromic (`c_k = c_{-k}`); general data is accepted so that the
/// palindrome property can be checked rather than assumed.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSym<T> {
    half: usize,
    coeffs: Vec<Poly<T>>,
}

impl<T: Scalar> LaurentSym<T> {
    /// `coeffs[k + m]` is the coefficient of `tau^k`. Panics unless the
    /// length is odd.
    pub fn from_coeffs(coeffs: Vec<Poly<T>>) -> Self {
        assert!(coeffs.len() % 2 == 1, "Laurent range must be -m..=m");
        LaurentSym {
            half: coeffs.len() / 2,
            coeffs,
        }
    }

    pub fn zero(m: usize) -> Self {
        LaurentSym {
            half: m,
            coeffs: vec![Poly::zero(); 2 * m + 1],
        }
    }

    /// The exponent bound `m`.
    pub fn half_width(&self) -> usize {
        self.half
    }

    pub fn coeff(&self, k: i64) -> &Poly<T> {
        &self.coeffs[(k + self.half as i64) as usize]
    }

    pub fn set_coeff(&mut self, k: i64, c: Poly<T>) {
        let idx = (k + self.half as i64) as usize;
        self.coeffs[idx] = c;
    }

    pub fn coeffs(&self) -> &[Poly<T>] {
        &self.coeffs
    }

    pub fn is_palindromic(&self) -> bool {
        (1..=self.half as i64).all(|k| self.coeff(k) == self.coeff(-k))
    }

    /// Largest z-degree over all coefficients.
    pub fn z_degree(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(Poly::degree).max()
    }

    /// Coefficient of `z^n` as a Laurent polynomial in `tau` (scalar entries).
    pub fn z_coeff(&self, n: usize) -> Vec<T> {
        self.coeffs.iter().map(|c| c.coeff(n)).collect()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U + Copy) -> LaurentSym<U> {
        LaurentSym {
            half: self.half,
            coeffs: self.coeffs.iter().map(|c| c.map(f)).collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        LaurentSym {
            half: self.half,
            coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect(),
        }
    }

    /// Evaluate at `tau`, giving a polynomial in `z`. `tau` must be
    /// invertible in `U`.
    pub fn eval_tau<U: Field>(&self, tau: &U, lift: impl Fn(&T) -> U + Copy) -> Poly<U> {
        let inv = U::one() / tau.clone();
        let mut out = self.coeff(0).map(lift);
        let mut pos = U::one();
        let mut neg = U::one();
        for k in 1..=self.half as i64 {
            pos = pos * tau.clone();
            neg = neg * inv.clone();
            out = out + self.coeff(k).map(lift).scale(&pos) + self.coeff(-k).map(lift).scale(&neg);
        }
        out
    }

    /// Multiply by `tau^m` to get an ordinary polynomial in `tau` with
    /// `K[z]` coefficients.
    pub fn to_bipoly(&self) -> Poly<Poly<T>> {
        Poly::new(self.coeffs.clone())
    }

    /// Inverse of [`Self::to_bipoly`] for a polynomial of tau-degree at most `2m`.
    pub fn from_bipoly(d: &Poly<Poly<T>>, m: usize) -> Self {
        assert!(d.degree().is_none_or(|deg| deg <= 2 * m));
        LaurentSym::from_coeffs((0..=2 * m).map(|j| d.coeff(j)).collect())
    }
}

/// Rewrite a palindromic Laurent polynomial in `nu = (tau + 1/tau)/2` using
/// `tau^k + tau^-k = 2 T_k(nu)`. The result is a polynomial in `nu` (outer)
/// with coefficients in `K[z]`, numerically equal to the input.
pub fn palindrome_to_nu<T: Scalar>(l: &LaurentSym<T>) -> Result<Poly<Poly<T>>, Error> {
    if !l.is_palindromic() {
        return Err(Error::NotPalindromic);
    }
    let m = l.half_width();
    let cheb = chebyshev_table::<T>(m);
    let mut out: Vec<Poly<T>> = vec![Poly::zero(); m + 1];
    out[0] = l.coeff(0).clone();
    let two = T::from_i64(2);
    for (k, tk) in cheb.iter().enumerate().skip(1) {
        let ck = l.coeff(k as i64).scale(&two);
        for (j, t) in tk.coeffs().iter().enumerate() {
            if !t.is_zero() {
                out[j] = &out[j] + &ck.scale(t);
            }
        }
    }
    Ok(Poly::new(out))
}

/// Substitute `nu = (tau + 1/tau)/2` back into a polynomial in `nu`.
pub fn nu_to_laurent<T: Field>(p: &Poly<Poly<T>>) -> LaurentSym<T> {
    let m = p.degree().unwrap_or(0);
    let mut out = LaurentSym::zero(m);
    let half = T::one() / T::from_i64(2);
    for (j, cj) in p.coeffs().iter().enumerate() {
        // nu^j = 2^-j sum_i C(j, i) tau^(j - 2i)
        let mut scale = T::one();
        for _ in 0..j {
            scale = scale * half.clone();
        }
        let mut binom = T::one();
        for i in 0..=j {
            let k = j as i64 - 2 * i as i64;
            let add = cj.scale(&(scale.clone() * binom.clone()));
            let cur = out.coeff(k).clone();
            out.set_coeff(k, cur + add);
            binom = binom * T::from_i64((j - i) as i64) / T::from_i64(i as i64 + 1);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::RatPoly;
    use num_rational::BigRational;

    fn c(v: i64) -> RatPoly {
        RatPoly::constant(rat(v, 1))
    }

    fn nu_poly(coeffs: Vec<RatPoly>) -> Poly<RatPoly> {
        Poly::new(coeffs)
    }

    #[test]
    fn conversion_examples() {
        // tau + 1/tau -> 2 nu
        let l = LaurentSym::from_coeffs(vec![c(1), c(0), c(1)]);
        assert_eq!(palindrome_to_nu(&l).unwrap(), nu_poly(vec![c(0), c(2)]));
        // tau^2 + tau^-2 -> 4 nu^2 - 2
        let l = LaurentSym::from_coeffs(vec![c(1), c(0), c(0), c(0), c(1)]);
        assert_eq!(palindrome_to_nu(&l).unwrap(), nu_poly(vec![c(-2), c(0), c(4)]));
        // (tau + 1/tau) - 2*delta -> 2 nu - 2 delta
        let delta = RatPoly::new(vec![rat(-1, 1), rat(0, 1), rat(1, 2)]);
        let l = LaurentSym::from_coeffs(vec![c(1), -delta.scale(&rat(2, 1)), c(1)]);
        assert_eq!(
            palindrome_to_nu(&l).unwrap(),
            nu_poly(vec![-delta.scale(&rat(2, 1)), c(2)])
        );
    }

    #[test]
    fn rejects_non_palindromic() {
        let l = LaurentSym::from_coeffs(vec![c(1), c(0), c(2)]);
        assert!(matches!(palindrome_to_nu(&l), Err(Error::NotPalindromic)));
    }

    #[test]
    fn round_trip_through_nu() {
        let z = RatPoly::x();
        let l = LaurentSym::from_coeffs(vec![
            z.clone(),
            c(3) - z.clone() * z.clone(),
            c(-7),
            c(3) - z.clone() * z.clone(),
            z,
        ]);
        let nu = palindrome_to_nu(&l).unwrap();
        assert_eq!(nu_to_laurent(&nu), l);
    }

    #[test]
    fn evaluation_at_tau() {
        // tau^2 - z tau + 1 over tau: tau + 1/tau - z, at tau = 1 -> 2 - z
        let l = LaurentSym::from_coeffs(vec![c(1), -RatPoly::x(), c(1)]);
        let v = l.eval_tau(&rat(1, 1), |x: &BigRational| x.clone());
        assert_eq!(v, RatPoly::new(vec![rat(2, 1), rat(-1, 1)]));
    }
}
