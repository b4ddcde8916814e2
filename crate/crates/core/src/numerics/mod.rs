//! Floating-point root finding and Hermitian eigensolving.
//!
//! Everything here is generic over [`num_traits::Float`]; the rest of the
//! crate instantiates it at `f64`.

mod bracket;
mod eigen;
mod roots;

pub use bracket::refine_bracket;
pub use eigen::{hermitian_eigs, HermMatrix, HERMITIAN_TOL};
pub use roots::{
    cluster_roots, exact_real_roots, exact_roots, exact_roots_clustered, roots_all, RootCluster,
    RootOptions,
};

use crate::CFloat;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumericsError {
    #[error("polynomial has degree < 1")]
    DegreeTooLow,
    #[error("non-finite coefficient or matrix entry")]
    NonFinite,
    #[error("root finder did not converge in {iterations} iterations (worst residual {worst:e})")]
    NoConvergence {
        iterations: usize,
        worst: f64,
        best: Vec<CFloat>,
        residuals: Vec<f64>,
    },
    #[error("matrix is not Hermitian: |h[{i}][{j}] - conj(h[{j}][{i}])| = {deviation:e}")]
    NotHermitian { i: usize, j: usize, deviation: f64 },
    #[error("eigensolver did not converge")]
    EigenNoConvergence,
    #[error("no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },
}
