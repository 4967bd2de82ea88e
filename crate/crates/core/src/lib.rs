//! Numerical harmonic analysis for Laguerre polynomial expansions on
//! (0,inf)^n: special functions and quadrature, the geometry of the
//! local/global kernel decomposition, variable exponent Lebesgue spaces,
//! heat/Poisson semigroups and the operator families built on them.

pub mod error;
pub mod geometry;
pub mod grid;
pub mod operators;
pub mod semigroup;
pub mod specfun;
pub mod varlp;

pub use error::{Error, Result};
