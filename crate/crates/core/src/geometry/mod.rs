//! Quadratic forms q+/q-, local/global regions, the smooth cutoff, measures,
//! covering balls and Calderon-Zygmund condition checkers.

pub mod balls;
pub mod cutoff;
pub mod cz;
pub mod measure;

pub use balls::{build_ball_system, BallSystem};
pub use cutoff::{cutoff_phi, phi_value, smooth_step, smooth_step_deriv};
pub use cz::{cz_regularity_check, cz_size_check, CzReport};
pub use measure::{malpha_ball, malpha_box, mu_box, MeasureBallResult};

use crate::error::{Error, Result};
use crate::specfun::laguerre::AlphaParam;

/// Cutoff/region parameters; the threshold scale C0 must exceed
/// 8 (n + alpha_hat) wherever the maximal-operator analysis is used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionParams {
    pub tau: f64,
    pub c0: f64,
}

impl RegionParams {
    pub fn new(tau: f64, c0: f64) -> Result<Self> {
        if !(tau > 0.0) || !(c0 > 0.0) {
            return Err(Error::Domain("tau and c0 must be positive".into()));
        }
        Ok(Self { tau, c0 })
    }

    /// Smallest integer-offset threshold above 8 (n + alpha_hat).
    pub fn default_c0(dim: usize, alpha_hat: f64) -> f64 {
        8.0 * (dim as f64 + alpha_hat) + 1.0
    }

    pub fn with_default_c0(tau: f64, alpha: &AlphaParam) -> Result<Self> {
        Self::new(tau, Self::default_c0(alpha.dim(), alpha.alpha_hat()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Local,
    Global,
}

/// A bundled evaluation point (x, y, s) with its cached quadratic forms.
#[derive(Debug, Clone)]
pub struct KernelContext {
    pub alpha: AlphaParam,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub s: Vec<f64>,
    /// |x|^2 + |y|^2
    pub a: f64,
    /// 2 sum x_i y_i s_i
    pub b: f64,
    pub q_plus: f64,
    pub q_minus: f64,
}

impl KernelContext {
    pub fn new(alpha: AlphaParam, x: Vec<f64>, y: Vec<f64>, s: Vec<f64>) -> Result<Self> {
        let n = alpha.dim();
        if x.len() != n || y.len() != n || s.len() != n {
            return Err(Error::Dimension(format!(
                "context dimensions disagree: alpha {n}, x {}, y {}, s {}",
                x.len(),
                y.len(),
                s.len()
            )));
        }
        if s.iter().any(|&si| si.abs() >= 1.0) {
            return Err(Error::Domain("s must lie strictly inside (-1,1)^n".into()));
        }
        let (q_plus, q_minus) = q_forms(&x, &y, &s)?;
        let a = 0.5 * (q_plus + q_minus);
        let b = 0.5 * (q_plus - q_minus);
        Ok(Self {
            alpha,
            x,
            y,
            s,
            a,
            b,
            q_plus,
            q_minus,
        })
    }

    pub fn norm_x(&self) -> f64 {
        self.x.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn norm_y(&self) -> f64 {
        self.y.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

/// The quadratic forms q±(x, y, s) = sum_i (x_i^2 + y_i^2 ± 2 x_i y_i s_i),
/// accumulated per axis so both stay nonnegative in floating point.
pub fn q_forms(x: &[f64], y: &[f64], s: &[f64]) -> Result<(f64, f64)> {
    if x.len() != y.len() || x.len() != s.len() {
        return Err(Error::Dimension(format!(
            "q_forms dimensions disagree: {} / {} / {}",
            x.len(),
            y.len(),
            s.len()
        )));
    }
    let mut q_plus = 0.0;
    let mut q_minus = 0.0;
    for i in 0..x.len() {
        let sq = x[i] * x[i] + y[i] * y[i];
        let cross = 2.0 * x[i] * y[i] * s[i];
        q_plus += sq + cross;
        q_minus += sq - cross;
    }
    Ok((q_plus.max(0.0), q_minus.max(0.0)))
}

/// Local iff sqrt(q-) <= c0 tau / (1 + |x| + |y|).
pub fn region_classify(ctx: &KernelContext, params: &RegionParams) -> Region {
    let g = 1.0 + ctx.norm_x() + ctx.norm_y();
    if ctx.q_minus.sqrt() <= params.c0 * params.tau / g {
        Region::Local
    } else {
        Region::Global
    }
}
