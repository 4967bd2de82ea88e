//! The positive auxiliary kernel that dominates every global operator part,
//! and the operator it generates against the polynomial measure.

use crate::error::{Error, Result};
use crate::geometry::cutoff::phi_value;
use crate::grid::DiscreteFunction;
use crate::semigroup::heat::jacobi_rules;
use crate::specfun::gamma::log_gamma_unchecked;
use crate::specfun::laguerre::AlphaParam;
use crate::varlp::exponent::ExponentField;
use rayon::prelude::*;

/// Pointwise branch formula:
///   e^{-(1-eps)|y|^2}                                  if sum x_i y_i s_i <= 0,
///   q+^{n+a_hat} e^{-(1-eps)(|y|^2-|x|^2+sqrt(q+ q-))/2} otherwise.
pub fn h_kernel_pointwise(alpha: &AlphaParam, epsilon: f64, x: &[f64], y: &[f64], s: &[f64]) -> f64 {
    let n = alpha.dim() as f64;
    let mut cross = 0.0;
    let mut q_plus = 0.0;
    let mut q_minus = 0.0;
    let mut ny2 = 0.0;
    let mut nx2 = 0.0;
    for i in 0..x.len() {
        let c = x[i] * y[i] * s[i];
        cross += c;
        q_plus += x[i] * x[i] + y[i] * y[i] + 2.0 * c;
        q_minus += x[i] * x[i] + y[i] * y[i] - 2.0 * c;
        nx2 += x[i] * x[i];
        ny2 += y[i] * y[i];
    }
    if cross <= 0.0 {
        (-(1.0 - epsilon) * ny2).exp()
    } else {
        let root = (q_plus.max(0.0) * q_minus.max(0.0)).sqrt();
        q_plus.powf(n + alpha.alpha_hat())
            * (-(1.0 - epsilon) * 0.5 * (ny2 - nx2 + root)).exp()
    }
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(0.0..1.0).contains(&epsilon) {
        return Err(Error::Domain(format!(
            "epsilon must lie in [0, 1), got {epsilon}"
        )));
    }
    Ok(())
}

/// Angular integral of the pointwise kernel against (1 - phi) and the
/// Gauss-Jacobi density, giving the two-point kernel H(x, y).
pub fn h_kernel_xy(
    alpha: &AlphaParam,
    epsilon: f64,
    c0: f64,
    x: &[f64],
    y: &[f64],
    s_order: usize,
) -> Result<f64> {
    check_epsilon(epsilon)?;
    let rules = jacobi_rules(alpha, s_order)?;
    let log_pi: f64 = alpha
        .entries()
        .iter()
        .map(|&a| {
            log_gamma_unchecked(a + 1.0)
                - log_gamma_unchecked(a + 0.5)
                - 0.5 * std::f64::consts::PI.ln()
        })
        .sum();
    let pi_const = log_pi.exp();
    let n = alpha.dim();
    let mut idx = vec![0usize; n];
    let mut s = vec![0.0f64; n];
    let mut sum = 0.0;
    loop {
        let mut w = pi_const;
        for i in 0..n {
            s[i] = rules[i].nodes[idx[i]];
            w *= rules[i].weights[idx[i]];
        }
        let cut = 1.0 - phi_value(x, y, &s, c0);
        if cut != 0.0 {
            sum += w * cut * h_kernel_pointwise(alpha, epsilon, x, y, &s);
        }
        let mut axis = n;
        loop {
            if axis == 0 {
                return Ok(sum);
            }
            axis -= 1;
            idx[axis] += 1;
            if idx[axis] < rules[axis].nodes.len() {
                break;
            }
            idx[axis] = 0;
        }
    }
}

/// Largest epsilon admissible for the variable-exponent regime:
/// min( 1/(p-)' , 1/(n + alpha_hat) ).
pub fn admissible_epsilon(p: &ExponentField, alpha: &AlphaParam) -> Result<f64> {
    if p.p_minus <= 1.0 {
        return Err(Error::Domain(
            "the admissible range needs p_minus > 1".into(),
        ));
    }
    let conj_p_minus = p.p_minus / (p.p_minus - 1.0);
    Ok((1.0 / conj_p_minus).min(1.0 / (alpha.dim() as f64 + alpha.alpha_hat())))
}

/// a_eps = (1-eps)/2 - | 1/p_inf - (1-eps)/2 |; positive throughout the
/// admissible range, and required positive before any global-regime
/// experiment.
pub fn a_epsilon(epsilon: f64, p_infty: f64) -> f64 {
    let half = 0.5 * (1.0 - epsilon);
    half - (1.0 / p_infty - half).abs()
}

/// Apply the operator to a function sampled on a polynomial-measure grid:
/// integral of H(x, y) f(y) against the grid weights, parallel over outputs.
/// Out-of-range epsilon for the requested exponent regime is reported by
/// `admissible_epsilon`; evaluation itself only requires epsilon in [0, 1).
pub fn h_apply(
    f: &DiscreteFunction,
    alpha: &AlphaParam,
    epsilon: f64,
    c0: f64,
    s_order: usize,
    out_points: &[Vec<f64>],
) -> Result<Vec<f64>> {
    f.check_shape()?;
    check_epsilon(epsilon)?;
    let pts = f.grid.points();
    let wts = f.grid.weights_flat();
    out_points
        .par_iter()
        .map(|x| {
            let mut acc = 0.0;
            for i in 0..pts.len() {
                if f.values[i] == 0.0 {
                    continue;
                }
                acc += wts[i] * f.values[i] * h_kernel_xy(alpha, epsilon, c0, x, &pts[i], s_order)?;
            }
            Ok(acc)
        })
        .collect()
}
