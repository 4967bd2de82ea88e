//! Variable exponent Lebesgue spaces over the crate's measures: exponent
//! fields, class diagnostics, modulars, Luxemburg norms, Holder duality and
//! the radial exponent lift.

pub mod classes;
pub mod exponent;
pub mod modular;

pub use classes::{
    class_constants, lift_exponent_radial, ExponentClass, LiftReport, LiftedExponent,
};
pub use exponent::{ExponentField, ExponentKind};
pub use modular::{
    holder_check, luxemburg_norm, luxemburg_norm_detailed, modular, HolderReport,
    LuxemburgDetail, ModularValue,
};
