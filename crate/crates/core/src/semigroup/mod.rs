//! Heat and Poisson semigroups of the Laguerre differential operator.

pub mod heat;
pub mod poisson;

pub use heat::{
    heat_apply, heat_kernel, heat_kernel_dt, heat_kernel_split, jacobi_rules, HeatMethod,
    MIN_TIME,
};
pub use poisson::{
    dt_poisson, poisson_apply, poisson_kernel, SubordinationRule, DEFAULT_SUBORDINATION_ORDER,
};
