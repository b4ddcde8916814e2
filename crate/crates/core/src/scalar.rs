//! Scalar abstractions shared by the exact and floating-point layers.
//!
//! Everything in [`crate::exactmath`] is written against [`Scalar`] (a
//! commutative ring with exact division where it exists) or [`Field`].
//! The same polynomial and matrix code therefore runs over `BigRational`,
//! Gaussian rationals, `f32`/`f64`, their complex counterparts, and over
//! polynomial rings such as `Q[z]`.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A commutative ring element.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(v: i64) -> Self;

    /// `self / rhs` when the quotient exists in the ring, `None` otherwise
    /// (including division by zero).
    fn div_exact(&self, rhs: &Self) -> Option<Self>;
}

/// A field: every nonzero element is invertible.
pub trait Field: Scalar + Div<Output = Self> {}

/// Fields whose elements can be built from exact rationals.
pub trait FromRational: Field {
    fn from_rational(r: &BigRational) -> Self;
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            None
        } else {
            Some(self / rhs)
        }
    }
}

impl Field for BigRational {}

impl FromRational for BigRational {
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
}

impl Scalar for Complex<BigRational> {
    fn from_i64(v: i64) -> Self {
        Complex::new(BigRational::from_i64(v), BigRational::zero())
    }

    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            None
        } else {
            Some(self.clone() / rhs.clone())
        }
    }
}

impl Field for Complex<BigRational> {}

impl FromRational for Complex<BigRational> {
    fn from_rational(r: &BigRational) -> Self {
        Complex::new(r.clone(), BigRational::zero())
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn from_i64(v: i64) -> Self {
                v as $t
            }

            fn div_exact(&self, rhs: &Self) -> Option<Self> {
                if *rhs == 0.0 {
                    None
                } else {
                    Some(self / rhs)
                }
            }
        }

        impl Field for $t {}

        impl FromRational for $t {
            fn from_rational(r: &BigRational) -> Self {
                use num_traits::ToPrimitive;
                r.to_f64().unwrap_or(f64::NAN) as $t
            }
        }

        impl Scalar for Complex<$t> {
            fn from_i64(v: i64) -> Self {
                Complex::new(v as $t, 0.0)
            }

            fn div_exact(&self, rhs: &Self) -> Option<Self> {
                if rhs.is_zero() {
                    None
                } else {
                    Some(self / rhs)
                }
            }
        }

        impl Field for Complex<$t> {}

        impl FromRational for Complex<$t> {
            fn from_rational(r: &BigRational) -> Self {
                Complex::new(<$t>::from_rational(r), 0.0)
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);

/// Build an exact rational `num / den`.
///
/// Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact integer power of two as a rational (negative exponents allowed).
pub fn pow2(e: i32) -> BigRational {
    let two = BigRational::from_i64(2);
    if e >= 0 {
        num_traits::pow(two, e as usize)
    } else {
        BigRational::one() / num_traits::pow(two, (-e) as usize)
    }
}
