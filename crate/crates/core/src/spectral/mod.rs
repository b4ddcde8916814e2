//! Characteristic determinant, Lyapunov branches, resonances, bands and
//! the identity battery.

mod bands;
mod determinant;
mod identities;
mod surface;

pub use bands::{
    band_structure, band_structure_from, candidate_edges, classify_gaps, floquet_edge_completeness,
    floquet_samples, track_branches, BandOptions, BandStructure, Edge, EdgeKind, Gap, GapKind,
    Segment,
};
pub use determinant::{xi_from_traces, CharDeterminant};
pub use identities::{
    energy_estimate, leading_asymptotics, verify_identities, Check, CheckStatus, IdentityReport,
};
pub use surface::{
    in_band, multipliers_for, MultiplierPair, ResonancePoly, ResonanceSet, SurfacePoly, REAL_TOL,
};

use crate::numerics::{exact_roots, NumericsError};
use crate::operator::OperatorError;
use crate::CFloat;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpectralError {
    /// Two independent computations disagree; indicates a bug.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("Floquet eigenvalue {lambda} at x = {x} lies outside every computed band")]
    CrossValidation { x: f64, lambda: f64 },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
}

/// Periodic eigenvalues: roots of `q(., 1)` with multiplicity.
pub fn periodic_eigs(cd: &CharDeterminant) -> Result<Vec<CFloat>, SpectralError> {
    Ok(exact_roots(&cd.q_at_sign(false))?)
}

/// Antiperiodic eigenvalues: roots of `q(., -1)` with multiplicity.
pub fn antiperiodic_eigs(cd: &CharDeterminant) -> Result<Vec<CFloat>, SpectralError> {
    Ok(exact_roots(&cd.q_at_sign(true))?)
}
