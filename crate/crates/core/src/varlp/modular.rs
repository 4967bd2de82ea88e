//! Modulars, the Luxemburg norm, and the factor-2 Holder inequality check.

use crate::error::{Error, Result};
use crate::grid::{tree_sum, DiscreteFunction};
use crate::varlp::exponent::ExponentField;
use rayon::prelude::*;

/// Modular value with an overflow flag.
#[derive(Debug, Clone, Copy)]
pub struct ModularValue {
    pub value: f64,
    pub overflow: bool,
}

/// rho(f) = integral of |f(x)|^{p(x)} under the grid's measure. Grid tiles
/// are evaluated in parallel and reduced in a fixed order.
pub fn modular(f: &DiscreteFunction, p: &ExponentField) -> ModularValue {
    let n = f.values.len();
    let terms: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|i| {
            let x = f.grid.point(i);
            f.grid.weight(i) * f.values[i].abs().powf(p.eval(&x))
        })
        .collect();
    let value = tree_sum(&terms);
    ModularValue {
        value,
        overflow: !value.is_finite(),
    }
}

fn modular_scaled(f: &DiscreteFunction, p: &ExponentField, lambda: f64) -> f64 {
    let n = f.values.len();
    let terms: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|i| {
            let x = f.grid.point(i);
            f.grid.weight(i) * (f.values[i].abs() / lambda).powf(p.eval(&x))
        })
        .collect();
    tree_sum(&terms)
}

const LAMBDA_LO: f64 = 1e-30;
const LAMBDA_HI: f64 = 1e30;
const MAX_ITERS: usize = 200;

/// Luxemburg norm together with its bisection diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct LuxemburgDetail {
    pub norm: f64,
    pub modular_at_norm: f64,
    pub iterations: usize,
}

/// Luxemburg norm inf { lambda > 0 : rho(f / lambda) <= 1 } by bisection on
/// log(lambda); returns 0 for the zero function.
pub fn luxemburg_norm(f: &DiscreteFunction, p: &ExponentField) -> Result<f64> {
    Ok(luxemburg_norm_detailed(f, p)?.norm)
}

pub fn luxemburg_norm_detailed(
    f: &DiscreteFunction,
    p: &ExponentField,
) -> Result<LuxemburgDetail> {
    f.check_shape()?;
    if f.values.iter().all(|&v| v == 0.0) {
        return Ok(LuxemburgDetail {
            norm: 0.0,
            modular_at_norm: 0.0,
            iterations: 0,
        });
    }
    if f.values.iter().any(|v| !v.is_finite()) {
        return Err(Error::UnboundedNorm("function contains non-finite values".into()));
    }
    let mut lo = LAMBDA_LO.ln();
    let mut hi = LAMBDA_HI.ln();
    if modular_scaled(f, p, LAMBDA_HI) > 1.0 {
        return Err(Error::UnboundedNorm(
            "modular exceeds 1 at the largest bracket endpoint".into(),
        ));
    }
    if modular_scaled(f, p, LAMBDA_LO) <= 1.0 {
        return Ok(LuxemburgDetail {
            norm: LAMBDA_LO,
            modular_at_norm: modular_scaled(f, p, LAMBDA_LO),
            iterations: 0,
        });
    }
    let mut iterations = 0;
    for _ in 0..MAX_ITERS {
        iterations += 1;
        let mid = 0.5 * (lo + hi);
        if modular_scaled(f, p, mid.exp()) <= 1.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        // bisection runs on log(lambda), so this is a relative tolerance
        if hi - lo < 1e-10 {
            break;
        }
    }
    let norm = hi.exp();
    Ok(LuxemburgDetail {
        norm,
        modular_at_norm: modular_scaled(f, p, norm),
        iterations,
    })
}

/// Holder-inequality report: integral |f g| against the factor-2 bound.
#[derive(Debug, Clone, Copy)]
pub struct HolderReport {
    pub lhs: f64,
    pub norm_f: f64,
    pub norm_g_conjugate: f64,
    pub ratio: f64,
}

/// Verifies integral |f g| <= 2 ||f||_{p} ||g||_{p'}.
pub fn holder_check(
    f: &DiscreteFunction,
    g: &DiscreteFunction,
    p: &ExponentField,
) -> Result<HolderReport> {
    f.check_shape()?;
    g.check_shape()?;
    if f.values.len() != g.values.len() {
        return Err(Error::Dimension("f and g must share a grid".into()));
    }
    let terms: Vec<f64> = f
        .values
        .iter()
        .zip(&g.values)
        .enumerate()
        .map(|(i, (a, b))| f.grid.weight(i) * (a * b).abs())
        .collect();
    let lhs = tree_sum(&terms);
    let norm_f = luxemburg_norm(f, p)?;
    let q = p.conjugate()?;
    let norm_g = luxemburg_norm(g, &q)?;
    let bound = 2.0 * norm_f * norm_g;
    let ratio = if bound > 0.0 { lhs / bound } else { 0.0 };
    Ok(HolderReport {
        lhs,
        norm_f,
        norm_g_conjugate: norm_g,
        ratio,
    })
}
