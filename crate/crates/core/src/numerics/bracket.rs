use num_traits::Float;

use super::NumericsError;

/// Bisect a sign change of `f` on `[lo, hi]` down to width `tol` and return
/// the midpoint. An endpoint that is an exact zero is returned directly.
pub fn refine_bracket<F: Float>(
    f: impl Fn(F) -> F,
    mut lo: F,
    mut hi: F,
    tol: F,
) -> Result<F, NumericsError> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == F::zero() {
        return Ok(lo);
    }
    if fhi == F::zero() {
        return Ok(hi);
    }
    if (flo > F::zero()) == (fhi > F::zero()) || flo.is_nan() || fhi.is_nan() {
        return Err(NumericsError::NoSignChange {
            lo: lo.to_f64().unwrap_or(f64::NAN),
            hi: hi.to_f64().unwrap_or(f64::NAN),
        });
    }
    let two = F::one() + F::one();
    while hi - lo > tol {
        let mid = (lo + hi) / two;
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == F::zero() {
            return Ok(mid);
        }
        if (fm > F::zero()) == (flo > F::zero()) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) / two)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let r = refine_bracket(|z: f64| z - 1.0, 0.0, 2.0, 1e-12).unwrap();
        assert!((r - 1.0).abs() < 1e-12);
        let r = refine_bracket(|z: f64| z * z / 2.0 - 1.0 - 1.0, 1.5, 2.5, 1e-12).unwrap();
        assert!((r - 2.0).abs() < 1e-12);
        // Delta(z) + 1 with Delta = (z^2 - z - 3)/2
        let r = refine_bracket(|z: f64| (z * z - z - 3.0) / 2.0 + 1.0, 1.0, 2.0, 1e-13).unwrap();
        assert!((r - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!(refine_bracket(|z: f64| z * z + 1.0, -1.0, 1.0, 1e-9).is_err());
    }
}
