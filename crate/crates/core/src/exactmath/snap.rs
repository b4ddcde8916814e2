//! Rational reconstruction of floating-point values.

use num_bigint::BigInt;
use num_rational::BigRational;

/// The first continued-fraction convergent of `x` (hence the one with the
/// smallest denominator) lying within `tol` of `x`, provided its
/// denominator is at most `max_den`. `None` otherwise, or when `x` is not
/// finite.
pub fn snap_rational(x: f64, max_den: u64, tol: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e18 {
            return None;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            return None;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if (h1 as f64 / k1 as f64 - x).abs() <= tol {
            return Some(BigRational::new(BigInt::from(h1), BigInt::from(k1)));
        }
        let frac = r - a;
        if frac.abs() < 1e-300 {
            return None;
        }
        r = 1.0 / frac;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn recovers_simple_fractions() {
        assert_eq!(snap_rational(0.5 + 1e-10, 1_000_000, 1e-7), Some(rat(1, 2)));
        assert_eq!(snap_rational(-7.0 / 3.0, 1_000_000, 1e-7), Some(rat(-7, 3)));
        assert_eq!(snap_rational(12.0, 10, 1e-7), Some(rat(12, 1)));
        assert_eq!(snap_rational(0.0, 10, 1e-7), Some(rat(0, 1)));
        assert_eq!(snap_rational(std::f64::consts::PI, 100, 1e-7), None);
        assert_eq!(snap_rational(f64::NAN, 100, 1e-7), None);
        // noise well above machine precision still lands on the small fraction
        assert_eq!(snap_rational(-4435.0 / 8.0 + 3e-6, 1_000_000, 5e-5), Some(rat(-4435, 8)));
    }
}
