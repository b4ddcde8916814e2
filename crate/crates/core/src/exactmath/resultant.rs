use crate::exactmath::{Error, Matrix, Poly};
use crate::scalar::Scalar;

/// Sylvester matrix of `f` (degree n) and `g` (degree s): `s` shifted rows
/// of `f`'s coefficients followed by `n` shifted rows of `g`'s, each row
/// written highest degree first.
pub fn sylvester<T: Scalar>(f: &Poly<T>, g: &Poly<T>) -> Result<Matrix<T>, Error> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    let s = g.degree().ok_or(Error::ZeroPolynomial)?;
    let size = n + s;
    let mut out = Matrix::zeros(size, size);
    for row in 0..s {
        for k in 0..=n {
            out.set(row, row + k, f.coeff(n - k));
        }
    }
    for row in 0..n {
        for k in 0..=s {
            out.set(s + row, row + k, g.coeff(s - k));
        }
    }
    Ok(out)
}

/// `R(f, g) = det Sylvester(f, g)`. With this layout
/// `R(f, g) = lc(f)^s lc(g)^n prod (alpha_i - beta_j)`.
pub fn resultant<T: Scalar>(f: &Poly<T>, g: &Poly<T>) -> Result<T, Error> {
    Ok(sylvester(f, g)?.det())
}

/// `Dis f = (-1)^(n(n-1)/2) R(f, f') / lc(f)`, which equals
/// `lc^(2n-2) prod_{i<j} (r_i - r_j)^2`.
///
/// The final division only needs to be exact, so this works over `Q[z]`
/// as well as over a field.
pub fn discriminant<T: Scalar>(f: &Poly<T>) -> Result<T, Error> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Err(Error::DegreeTooLow);
    }
    let r = resultant(f, &f.derivative())?;
    let lc = f.leading().expect("nonzero").clone();
    let d = r.div_exact(&lc).ok_or(Error::InexactDivision)?;
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -d } else { d })
}
