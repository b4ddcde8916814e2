//! Partial evaluation of polynomials in `tau` whose coefficients are
//! polynomials in `z` (outer variable `tau`, inner `z`).

use num_traits::Zero;

use crate::exactmath::Poly;
use crate::scalar::Scalar;

/// `D(z, tau0)` as a polynomial in `z`, with coefficients lifted into `U`.
pub fn bipoly_eval_tau<T: Scalar, U: Scalar>(
    d: &Poly<Poly<T>>,
    tau: &U,
    lift: impl Fn(&T) -> U + Copy,
) -> Poly<U> {
    d.coeffs()
        .iter()
        .rev()
        .fold(Poly::zero(), |acc, c| {
            &(&acc * &Poly::constant(tau.clone())) + &c.map(lift)
        })
}

/// `D(z0, tau)` as a polynomial in `tau`.
pub fn bipoly_eval_z<T: Scalar>(d: &Poly<Poly<T>>, z: &T) -> Poly<T> {
    Poly::new(d.coeffs().iter().map(|c| c.eval(z)).collect())
}

/// Swap the roles of the two variables.
pub fn bipoly_transpose<T: Scalar>(d: &Poly<Poly<T>>) -> Poly<Poly<T>> {
    let inner = d.coeffs().iter().filter_map(Poly::degree).max();
    let Some(inner) = inner else {
        return Poly::zero();
    };
    Poly::new(
        (0..=inner)
            .map(|k| Poly::new(d.coeffs().iter().map(|c| c.coeff(k)).collect()))
            .collect(),
    )
}
