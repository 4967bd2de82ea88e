//! The operator families: maximal operators with the analytic sup machinery,
//! Riesz transforms, Littlewood-Paley square functions, Laplace-transform-type
//! multipliers, and the positive auxiliary operator dominating global parts.

pub mod expansion;
pub mod gfunc;
pub mod haux;
pub mod maximal;
pub mod multiplier;
pub mod riesz;
pub mod structure;
pub mod vt;

pub use expansion::LaguerreExpansion;
pub use gfunc::GFunction;
pub use haux::{a_epsilon, admissible_epsilon, h_apply, h_kernel_pointwise, h_kernel_xy};
pub use maximal::{
    local_heat_sup_kernel, log_time_grid, maximal_heat, maximal_heat_expansion,
    maximal_poisson_expansion,
};
pub use multiplier::{
    multiplier_apply, multiplier_kernel, multiplier_symbol, symbol_rule, LaplacePhi,
    MultiplierSpec,
};
pub use riesz::{riesz_kernel, riesz_majorant_ratio, riesz_spectral};
pub use structure::{derivative_factor_fit, DerivativeFactorFit};
pub use vt::{global_maximal_bound_check, v_of_t, vt_analyze, MaximalBoundReport, VtAnalysis, VtBranch};
