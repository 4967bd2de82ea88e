//! Exact-coefficient orthogonal polynomials, modified Bessel functions,
//! log-Gamma and the quadrature rules the rest of the crate consumes.
//!
//! Everything here is a pure function of its inputs; values are immutable
//! after construction and safe to share between threads.

pub mod bessel;
pub mod gamma;
pub mod hermite;
pub mod laguerre;
pub mod poly;
pub mod quad;

pub use bessel::{bessel_i_ratio_up, bessel_i_scaled, log_bessel_i_normalized};
pub use gamma::{gamma, log_gamma};
pub use hermite::{hermite, hermite_eval};
pub use laguerre::{
    laguerre_normalized, laguerre_normalized_all, laguerre_normalized_deriv_eval,
    laguerre_normalized_eval, laguerre_square_deriv_eval, laguerre_tensor, AlphaParam,
};
pub use poly::PolyCoeffs;
pub use quad::{adaptive_integrate, integrate_mapped, make_rule, QuadratureRule, RuleKind};

/// Multi-indices k = (k_1, ..., k_n).
pub type MultiIndex = Vec<usize>;

/// Total degree of a multi-index.
pub fn total_degree(k: &[usize]) -> usize {
    k.iter().sum()
}
