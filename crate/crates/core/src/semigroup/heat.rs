//! The heat kernel of the Laguerre operator in its three computable forms:
//! Bessel product, truncated spectral sum, and the s-integral representation
//! over (-1,1)^n, together with local/global splitting and grid application.

use crate::error::{Error, Result};
use crate::geometry::cutoff::phi_value;
use crate::grid::DiscreteFunction;
use crate::specfun::bessel::{bessel_i_ratio_up, log_bessel_i_normalized};
use crate::specfun::gamma::log_gamma_unchecked;
use crate::specfun::laguerre::{laguerre_normalized_all, AlphaParam};
use crate::specfun::quad::{make_rule, QuadratureRule, RuleKind};
use rayon::prelude::*;

/// Below this time the kernel is numerically near-singular; callers get an
/// error instead of silently degraded values.
pub const MIN_TIME: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub enum HeatMethod {
    /// Scaled-Bessel product with log-domain prefactors (default).
    BesselProduct,
    /// Truncated eigenfunction sum over total degree <= k_max.
    Spectral { k_max: usize },
    /// Integral over (-1,1)^n against Gauss-Jacobi in each axis.
    SIntegral { order: usize },
}

fn check_point(alpha: &AlphaParam, x: &[f64], y: &[f64]) -> Result<()> {
    let n = alpha.dim();
    if x.len() != n || y.len() != n {
        return Err(Error::Dimension(format!(
            "points must have dimension {n}, got {} and {}",
            x.len(),
            y.len()
        )));
    }
    if x.iter().chain(y.iter()).any(|&v| !(v > 0.0)) {
        return Err(Error::Domain("points must lie in (0,inf)^n".into()));
    }
    Ok(())
}

fn check_time(t: f64) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("time must be positive, got {t}")));
    }
    if t < MIN_TIME {
        return Err(Error::Accuracy(format!(
            "time {t} below the supported minimum {MIN_TIME}"
        )));
    }
    Ok(())
}

/// Log of the one-axis Bessel-product factor.
fn log_axis_factor(a: f64, u: f64, one_minus_u: f64, x: f64, y: f64) -> Result<f64> {
    let z = 2.0 * u.sqrt() * x * y / one_minus_u;
    Ok(log_bessel_i_normalized(a, z)?
        - (1.0 + a) * one_minus_u.ln()
        - u * (x * x + y * y) / one_minus_u)
}

/// Heat kernel value by the requested method.
pub fn heat_kernel(
    alpha: &AlphaParam,
    t: f64,
    x: &[f64],
    y: &[f64],
    method: &HeatMethod,
) -> Result<f64> {
    check_point(alpha, x, y)?;
    check_time(t)?;
    match method {
        HeatMethod::BesselProduct => {
            let u = (-t).exp();
            let omu = -(-t).exp_m1();
            let mut log_w = 0.0;
            for i in 0..alpha.dim() {
                log_w += log_axis_factor(alpha.entries()[i], u, omu, x[i], y[i])?;
            }
            Ok(log_w.exp())
        }
        HeatMethod::Spectral { k_max } => heat_kernel_spectral(alpha, t, x, y, *k_max),
        HeatMethod::SIntegral { order } => {
            if *order < 4 {
                return Err(Error::Domain("s-integral order must be >= 4".into()));
            }
            let rules = jacobi_rules(alpha, *order)?;
            Ok(s_integral(alpha, t, x, y, &rules, |_s| 1.0))
        }
    }
}

fn heat_kernel_spectral(
    alpha: &AlphaParam,
    t: f64,
    x: &[f64],
    y: &[f64],
    k_max: usize,
) -> Result<f64> {
    let n = alpha.dim();
    let mut lx = Vec::with_capacity(n);
    let mut ly = Vec::with_capacity(n);
    for i in 0..n {
        lx.push(laguerre_normalized_all(k_max, alpha.entries()[i], x[i] * x[i])?);
        ly.push(laguerre_normalized_all(k_max, alpha.entries()[i], y[i] * y[i])?);
    }
    let mut sum = 0.0;
    let mut index = vec![0usize; n];
    loop {
        let total: usize = index.iter().sum();
        if total <= k_max {
            let mut prod = ((-(total as f64)) * t).exp();
            for i in 0..n {
                prod *= lx[i][index[i]] * ly[i][index[i]];
            }
            sum += prod;
        }
        // advance over the simplex of indices with total degree <= k_max
        let mut axis = n;
        loop {
            if axis == 0 {
                return Ok(sum);
            }
            axis -= 1;
            index[axis] += 1;
            if index[axis] <= k_max {
                break;
            }
            index[axis] = 0;
        }
    }
}

/// Per-axis Gauss-Jacobi rules with exponents alpha_i - 1/2; the endpoint
/// singularity of the angular density lives entirely in the weights.
pub fn jacobi_rules(alpha: &AlphaParam, order: usize) -> Result<Vec<QuadratureRule>> {
    alpha
        .entries()
        .iter()
        .map(|&a| {
            make_rule(
                RuleKind::GaussJacobi {
                    a: a - 0.5,
                    b: a - 0.5,
                },
                order,
            )
        })
        .collect()
}

/// Log of the angular density constant prod Gamma(a_i+1)/(Gamma(a_i+1/2) sqrt(pi)).
fn log_pi_constant(alpha: &AlphaParam) -> f64 {
    alpha
        .entries()
        .iter()
        .map(|&a| {
            log_gamma_unchecked(a + 1.0)
                - log_gamma_unchecked(a + 0.5)
                - 0.5 * std::f64::consts::PI.ln()
        })
        .sum()
}

/// s-integral form weighted by an arbitrary angular factor (1 for the full
/// kernel, the cutoff or its complement for the local/global split).
fn s_integral<F: Fn(&[f64]) -> f64>(
    alpha: &AlphaParam,
    t: f64,
    x: &[f64],
    y: &[f64],
    rules: &[QuadratureRule],
    angular: F,
) -> f64 {
    let n = alpha.dim();
    let u = (-t).exp();
    let omu = -(-t).exp_m1();
    let ny2: f64 = y.iter().map(|v| v * v).sum();
    let log_pref =
        -(n as f64 + alpha.alpha_hat()) * omu.ln() + log_pi_constant(alpha) + ny2;
    let mut sum = 0.0;
    let mut idx = vec![0usize; n];
    let mut s = vec![0.0f64; n];
    loop {
        let mut w = 1.0;
        for i in 0..n {
            s[i] = rules[i].nodes[idx[i]];
            w *= rules[i].weights[idx[i]];
        }
        let mut q_minus = 0.0;
        for i in 0..n {
            q_minus += u * x[i] * x[i] + y[i] * y[i] - 2.0 * u.sqrt() * x[i] * y[i] * s[i];
        }
        let ang = angular(&s);
        if ang != 0.0 {
            sum += w * ang * (log_pref - q_minus / omu).exp();
        }
        let mut axis = n;
        loop {
            if axis == 0 {
                return sum;
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

/// Local/global split of the s-integral form under the smooth cutoff with
/// threshold scale `c0`; the parts sum to the full kernel.
pub fn heat_kernel_split(
    alpha: &AlphaParam,
    t: f64,
    x: &[f64],
    y: &[f64],
    order: usize,
    c0: f64,
) -> Result<(f64, f64)> {
    check_point(alpha, x, y)?;
    check_time(t)?;
    if order < 4 {
        return Err(Error::Domain("s-integral order must be >= 4".into()));
    }
    let rules = jacobi_rules(alpha, order)?;
    let local = s_integral(alpha, t, x, y, &rules, |s| phi_value(x, y, s, c0));
    let global = s_integral(alpha, t, x, y, &rules, |s| 1.0 - phi_value(x, y, s, c0));
    Ok((local, global))
}

/// Apply the semigroup to a function sampled on a mu_alpha grid, evaluated at
/// the given output points; per-point quadrature, parallel over points.
pub fn heat_apply(
    f: &DiscreteFunction,
    alpha: &AlphaParam,
    t: f64,
    method: &HeatMethod,
    out_points: &[Vec<f64>],
) -> Result<Vec<f64>> {
    f.check_shape()?;
    check_time(t)?;
    let grid_points = f.grid.points();
    let grid_weights = f.grid.weights_flat();
    out_points
        .par_iter()
        .map(|x| {
            let mut acc = 0.0;
            for i in 0..grid_points.len() {
                let k = heat_kernel(alpha, t, x, &grid_points[i], method)?;
                acc += grid_weights[i] * k * f.values[i];
            }
            Ok(acc)
        })
        .collect()
}

/// Logarithmic z-derivative of the angular heat integrand
/// e^{-q-(e^{-z/2} x, y, s)/(1-e^{-z})} / (1-e^{-z})^{n+alpha_hat},
/// differentiated term by term through w = e^{-z/2}.
pub fn s_integrand_log_dz(alpha: &AlphaParam, x: &[f64], y: &[f64], s: &[f64], z: f64) -> f64 {
    let nah = alpha.dim() as f64 + alpha.alpha_hat();
    let w = (-0.5 * z).exp();
    let w2 = w * w;
    let omw2 = 1.0 - w2;
    let mut a = 0.0; // |x|^2
    let mut c = 0.0; // |y|^2
    let mut b = 0.0; // 2 sum x y s
    for i in 0..x.len() {
        a += x[i] * x[i];
        c += y[i] * y[i];
        b += 2.0 * x[i] * y[i] * s[i];
    }
    // d/dz of -(w^2 A - w B + C)/(1-w^2), with dw/dz = -w/2
    let num = (2.0 * w * a - b) * omw2 + (w2 * a - w * b + c) * 2.0 * w;
    let d_gauss = -num / (omw2 * omw2) * (-0.5 * w);
    // d/dz of -(n+alpha_hat) ln(1-w^2)
    let d_power = -nah * w2 / omw2;
    d_gauss + d_power
}

/// Analytic time derivative of the Bessel-product kernel.
pub fn heat_kernel_dt(alpha: &AlphaParam, t: f64, x: &[f64], y: &[f64]) -> Result<f64> {
    check_point(alpha, x, y)?;
    check_time(t)?;
    let u = (-t).exp();
    let omu = -(-t).exp_m1();
    let mut log_w = 0.0;
    let mut dlog = 0.0;
    for i in 0..alpha.dim() {
        let a = alpha.entries()[i];
        let (xi, yi) = (x[i], y[i]);
        log_w += log_axis_factor(a, u, omu, xi, yi)?;
        let z = 2.0 * u.sqrt() * xi * yi / omu;
        // I'(z)/I(z) = I_{a+1}/I_a + a/z
        let ratio = bessel_i_ratio_up(a, z)? + a / z;
        dlog += -u / omu + 0.5 * a
            - ratio * u.sqrt() * xi * yi * (1.0 + u) / (omu * omu)
            + u * (xi * xi + yi * yi) / (omu * omu);
    }
    Ok(log_w.exp() * dlog)
}
