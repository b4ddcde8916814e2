//! Exact arithmetic: polynomials, matrices, Chebyshev conversion,
//! resultants and square-free decomposition.

mod bipoly;
mod chebyshev;
pub mod intpoly;
mod laurent;
mod matrix;
mod poly;
mod primitive;
mod resultant;
mod snap;
mod sturm;

pub use bipoly::{bipoly_eval_tau, bipoly_eval_z, bipoly_transpose};
pub use chebyshev::{chebyshev, chebyshev_table};
pub use laurent::{nu_to_laurent, palindrome_to_nu, LaurentSym};
pub use matrix::Matrix;
pub use poly::{Poly, PolyDisplay};
pub use primitive::{
    content, normalize, prim_gcd, primitive_part, squarefree_decomposition_domain,
    squarefree_part_domain, GcdDomain,
};
pub use resultant::{discriminant, resultant, sylvester};
pub use snap::snap_rational;
pub use sturm::{count_real_roots, count_real_roots_in, sturm_sequence};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("polynomial degree too low")]
    DegreeTooLow,
    #[error("not palindromic")]
    NotPalindromic,
    #[error("division was expected to be exact")]
    InexactDivision,
}
