//! Recovering the characteristic determinant from spectral data: the full
//! Floquet spectrum at one quasi-momentum `kappa_0` plus shrinking partial
//! spectra at `kappa_1..kappa_m` with pairwise distinct cosines.
//!
//! The unknowns are the coefficients `zeta_{m-j,n}` of
//! `q(z, tau) = sum_n eta_n(tau) z^n`, `eta_n = sum_j zeta_{m-j,n} h_j`
//! (`h_0 = 1`, `h_j = tau^j + tau^-j`). Degree bounds force
//! `eta_n` to use only `h_0..h_s` for `n` in the level set `K_s`, and the
//! levels are peeled off one quasi-momentum at a time.

mod constrained;
mod cosine;
mod data;
mod recover;

pub use constrained::{constrained_poly, poly_from_roots};
pub use cosine::{CosineMatrix, MAX_CONDITION};
pub use data::{default_kappas, forward_spectral_data, SpectralData, SubsetRule, COSINE_SEPARATION};
pub use recover::{
    k_set, level, recover_determinant, EtaTable, Recovery, RecoveryDiagnostics, HYPERBOLICITY_TOL,
    REALNESS_TOL,
};

use crate::spectral::SpectralError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum InverseError {
    #[error("expected {expected} quasi-momenta, got {got}")]
    KappaCount { expected: usize, got: usize },
    #[error("Λ_{set} must have {expected} values, got {got}")]
    Cardinality { set: usize, expected: usize, got: usize },
    #[error("κ values too close: cos κ_{i} and cos κ_{j} differ by less than 1e-9")]
    DuplicateCosine { i: usize, j: usize },
    #[error("κ values too close: cosine matrix condition estimate {condition:e}")]
    KappasTooClose { condition: f64 },
    #[error("non-finite spectral data")]
    NonFinite,
    #[error("inconsistent spectral data: {reason}")]
    Inconsistent { reason: String, diagnostics: RecoveryDiagnostics },
    #[error("rational reconstruction failed: {0}")]
    Snap(String),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}
