//! Spectral analysis of periodic matrix-valued Jacobi operators
//!
//! ```text
//! (J y)_n = a_n y_{n+1} + b_n y_n + a_{n-1}^T y_{n-1},   a_{n+p} = a_n, b_{n+p} = b_n
//! ```
//!
//! with `m x m` rational blocks. The symbolic pipeline (monodromy,
//! characteristic determinant `D(z, tau)`, surface polynomial `Phi(z, nu)`,
//! resonance polynomial) is exact; floating point only enters through
//! root finding and Hermitian eigensolving in [`numerics`].

pub mod exactmath;
pub mod fixtures;
pub mod inverse;
pub mod numerics;
pub mod operator;
pub mod spectral;
pub mod scalar;

use num_complex::Complex;
use num_rational::BigRational;

pub use exactmath::{LaurentSym, Matrix, Poly};

/// Exact rational number.
pub type Rational = BigRational;
/// Exact Gaussian rational.
pub type CRational = Complex<BigRational>;
/// Complex double.
pub type CFloat = Complex<f64>;
pub type RatPoly = Poly<Rational>;
pub type CRatPoly = Poly<CRational>;
pub type FloatPoly = Poly<f64>;
pub type CFloatPoly = Poly<CFloat>;
pub type RatMatrix = Matrix<Rational>;
pub type CRatMatrix = Matrix<CRational>;
/// Matrix with entries in `Q[z]`.
pub type MatrixPoly = Matrix<RatPoly>;
/// Polynomial in an outer variable (`tau` or `nu`) with `Q[z]` coefficients.
pub type BiPoly = Poly<RatPoly>;
