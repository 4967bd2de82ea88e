//! Measure evaluations: the polynomial measure of Euclidean balls and boxes,
//! and the Gaussian-type measure of boxes.

use crate::error::{Error, Result};
use crate::specfun::laguerre::AlphaParam;
use crate::specfun::quad::adaptive_integrate;

/// Result of measuring a ball under the polynomial measure.
#[derive(Debug, Clone, Copy)]
pub struct MeasureBallResult {
    /// Adaptive-quadrature value of m_alpha(B(center, r) inside (0,inf)^n).
    pub exact: f64,
    /// The comparable closed form r^n prod (center_i + r)^{2 a_i + 1}.
    pub closed_form: f64,
    /// exact / closed_form.
    pub ratio: f64,
}

const CLAMP: f64 = 1e-300;

/// Antiderivative-based polynomial mass of an interval intersected with (0,inf).
fn segment_mass(a: f64, lo: f64, hi: f64) -> f64 {
    let lo = lo.max(CLAMP);
    let hi = hi.max(CLAMP);
    if hi <= lo {
        return 0.0;
    }
    let p = 2.0 * a + 2.0;
    (hi.powf(p) - lo.powf(p)) / p
}

/// m_alpha of the ball B(center, radius) intersected with (0,inf)^n, by
/// recursive slicing: the innermost axis integrates in closed form, outer
/// axes by adaptive quadrature. Also returns the comparable closed form.
pub fn malpha_ball(alpha: &AlphaParam, center: &[f64], radius: f64) -> Result<MeasureBallResult> {
    if center.len() != alpha.dim() {
        return Err(Error::Dimension(format!(
            "center dimension {} does not match alpha dimension {}",
            center.len(),
            alpha.dim()
        )));
    }
    if !(radius > 0.0) {
        return Err(Error::Domain("radius must be positive".into()));
    }
    if center.iter().any(|&c| c < 0.0) {
        return Err(Error::Domain("center must lie in the closed positive cone".into()));
    }
    let exact = ball_mass_recursive(alpha.entries(), center, radius * radius, 0, &mut vec![])?;
    let mut closed_form = radius.powi(alpha.dim() as i32);
    for (i, &a) in alpha.entries().iter().enumerate() {
        closed_form *= (center[i] + radius).powf(2.0 * a + 1.0);
    }
    Ok(MeasureBallResult {
        exact,
        closed_form,
        ratio: exact / closed_form,
    })
}

fn ball_mass_recursive(
    alpha: &[f64],
    center: &[f64],
    r2_left: f64,
    axis: usize,
    _fixed: &mut Vec<f64>,
) -> Result<f64> {
    if r2_left <= 0.0 {
        return Ok(0.0);
    }
    let r = r2_left.sqrt();
    let a = alpha[axis];
    let c = center[axis];
    if axis + 1 == alpha.len() {
        return Ok(segment_mass(a, c - r, c + r));
    }
    let lo = (c - r).max(CLAMP);
    let hi = c + r;
    if hi <= lo {
        return Ok(0.0);
    }
    let inner = |x: f64| -> f64 {
        let d = x - c;
        let rest = r2_left - d * d;
        if rest <= 0.0 {
            return 0.0;
        }
        ball_mass_recursive(alpha, center, rest, axis + 1, &mut vec![]).unwrap_or(0.0)
            * x.powf(2.0 * a + 1.0)
    };
    adaptive_integrate(&inner, lo, hi, 1e-7, 30)
}

/// m_alpha of an axis-aligned box intersected with (0,inf)^n (closed form).
pub fn malpha_box(alpha: &AlphaParam, lo: &[f64], hi: &[f64]) -> Result<f64> {
    if lo.len() != alpha.dim() || hi.len() != alpha.dim() {
        return Err(Error::Dimension("box bounds must match alpha dimension".into()));
    }
    let mut mass = 1.0;
    for i in 0..alpha.dim() {
        mass *= segment_mass(alpha.entries()[i], lo[i], hi[i]);
    }
    Ok(mass)
}

/// mu_alpha of an axis-aligned box in (0,inf)^n by per-axis adaptive
/// quadrature of the Gaussian-type density.
pub fn mu_box(alpha: &AlphaParam, lo: &[f64], hi: &[f64]) -> Result<f64> {
    if lo.len() != alpha.dim() || hi.len() != alpha.dim() {
        return Err(Error::Dimension("box bounds must match alpha dimension".into()));
    }
    let mut mass = 1.0;
    for i in 0..alpha.dim() {
        let a = alpha.entries()[i];
        let norm = (-alpha.log_normalizers()[i]).exp();
        let lo_i = lo[i].max(CLAMP);
        let hi_i = hi[i].max(CLAMP);
        if hi_i <= lo_i {
            return Ok(0.0);
        }
        let f = move |x: f64| 2.0 * x.powf(2.0 * a + 1.0) * (-x * x).exp() * norm;
        mass *= adaptive_integrate(&f, lo_i, hi_i, 1e-10, 32)?;
    }
    Ok(mass)
}
