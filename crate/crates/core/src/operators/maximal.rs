//! Maximal operators of the heat and Poisson semigroups over finite time
//! grids.

use crate::error::{Error, Result};
use crate::geometry::cutoff::phi_value;
use crate::grid::DiscreteFunction;
use crate::operators::expansion::LaguerreExpansion;
use crate::semigroup::heat::{heat_apply, jacobi_rules, HeatMethod};
use crate::specfun::gamma::log_gamma_unchecked;
use crate::specfun::laguerre::AlphaParam;

/// Log-spaced time grid on [lo, hi].
pub fn log_time_grid(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0) || !(hi > lo) || points < 2 {
        return Err(Error::Domain("need 0 < lo < hi and at least 2 points".into()));
    }
    let (a, b) = (lo.ln(), hi.ln());
    Ok((0..points)
        .map(|i| (a + (b - a) * i as f64 / (points - 1) as f64).exp())
        .collect())
}

/// sup over the time grid of |W_t f(x)| for a grid-sampled f.
pub fn maximal_heat(
    f: &DiscreteFunction,
    alpha: &AlphaParam,
    x: &[f64],
    t_grid: &[f64],
    method: &HeatMethod,
) -> Result<f64> {
    if t_grid.is_empty() {
        return Err(Error::Domain("time grid must be nonempty".into()));
    }
    let out = [x.to_vec()];
    let mut sup = 0.0f64;
    for &t in t_grid {
        let v = heat_apply(f, alpha, t, method, &out)?[0];
        sup = sup.max(v.abs());
    }
    Ok(sup)
}

/// sup over the time grid of |W_t f(x)| for an expansion (exact spectral
/// action, cheap enough for dense grids).
pub fn maximal_heat_expansion(f: &LaguerreExpansion, x: &[f64], t_grid: &[f64]) -> Result<f64> {
    if t_grid.is_empty() {
        return Err(Error::Domain("time grid must be nonempty".into()));
    }
    let evals: Vec<(f64, f64)> = f
        .terms
        .iter()
        .map(|(k, c)| {
            let single = LaguerreExpansion::new(f.alpha.clone(), vec![(k.clone(), 1.0)])?;
            Ok((LaguerreExpansion::eigenvalue(k), c * single.eval(x)?))
        })
        .collect::<Result<_>>()?;
    let mut sup = 0.0f64;
    for &t in t_grid {
        let v: f64 = evals.iter().map(|(lam, a)| a * (-lam * t).exp()).sum();
        sup = sup.max(v.abs());
    }
    Ok(sup)
}

/// Kernel of the local maximal operator against the polynomial measure:
/// sup over t in (0, 1) (in the 1 - e^{-t} time variable) of the
/// cutoff-weighted angular integral
///   integral of phi(x,y,s) e^{-q-(sqrt(1-t) x, y, s)/t} / t^{n+a_hat} dPi(s).
///
/// The uncut angular integral equals e^{-|y|^2} times the Bessel-product
/// heat kernel at -ln(1-t), so only the cutoff-complement part needs the
/// angular quadrature; the dominant term is exact. The grid supremum is
/// polished by a golden-section pass around the discrete argmax.
pub fn local_heat_sup_kernel(
    alpha: &AlphaParam,
    c0: f64,
    x: &[f64],
    y: &[f64],
    t_points: usize,
    s_order: usize,
) -> Result<f64> {
    let n = alpha.dim();
    let nah = n as f64 + alpha.alpha_hat();
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
    let ny2: f64 = y.iter().map(|v| v * v).sum();

    let complement = |t: f64| -> f64 {
        let rt = (1.0 - t).sqrt();
        let mut sum = 0.0;
        let mut idx = vec![0usize; n];
        let mut s = vec![0.0f64; n];
        'outer: loop {
            let mut w = pi_const;
            for i in 0..n {
                s[i] = rules[i].nodes[idx[i]];
                w *= rules[i].weights[idx[i]];
            }
            let cut = 1.0 - phi_value(x, y, &s, c0);
            if cut != 0.0 {
                let mut q_minus = 0.0;
                for i in 0..n {
                    q_minus +=
                        (rt * x[i] - y[i] * s[i]).powi(2) + y[i] * y[i] * (1.0 - s[i] * s[i]);
                }
                sum += w * cut * (-q_minus / t - nah * t.ln()).exp();
            }
            let mut axis = n;
            loop {
                if axis == 0 {
                    break 'outer;
                }
                axis -= 1;
                idx[axis] += 1;
                if idx[axis] < rules[axis].nodes.len() {
                    break;
                }
                idx[axis] = 0;
            }
        }
        sum
    };
    let value_at = |t: f64| -> Result<f64> {
        let tau = -(1.0 - t).ln();
        let full = if tau < crate::semigroup::heat::MIN_TIME {
            0.0
        } else {
            (-ny2).exp() * crate::semigroup::heat::heat_kernel(
                alpha,
                tau,
                x,
                y,
                &HeatMethod::BesselProduct,
            )?
        };
        Ok((full - complement(t)).abs())
    };

    let ts = log_time_grid(2e-6, 1.0 - 1e-6, t_points.max(3))?;
    let mut sup = 0.0f64;
    let mut arg = 1usize;
    for (i, &t) in ts.iter().enumerate() {
        let v = value_at(t)?;
        if v > sup {
            sup = v;
            arg = i;
        }
    }
    // golden-section polish on the log-t axis around the bracketing interval
    let mut lo = ts[arg.saturating_sub(1)].ln();
    let mut hi = ts[(arg + 1).min(ts.len() - 1)].ln();
    let inv_phi = 0.5 * (5.0f64.sqrt() - 1.0);
    let mut a = hi - inv_phi * (hi - lo);
    let mut b = lo + inv_phi * (hi - lo);
    let mut fa = value_at(a.exp())?;
    let mut fb = value_at(b.exp())?;
    for _ in 0..60 {
        if fa < fb {
            lo = a;
            a = b;
            fa = fb;
            b = lo + inv_phi * (hi - lo);
            fb = value_at(b.exp())?;
        } else {
            hi = b;
            b = a;
            fb = fa;
            a = hi - inv_phi * (hi - lo);
            fa = value_at(a.exp())?;
        }
        sup = sup.max(fa.max(fb));
    }
    Ok(sup)
}

/// sup over the time grid of |P_t f(x)| for an expansion.
pub fn maximal_poisson_expansion(f: &LaguerreExpansion, x: &[f64], t_grid: &[f64]) -> Result<f64> {
    if t_grid.is_empty() {
        return Err(Error::Domain("time grid must be nonempty".into()));
    }
    let evals: Vec<(f64, f64)> = f
        .terms
        .iter()
        .map(|(k, c)| {
            let single = LaguerreExpansion::new(f.alpha.clone(), vec![(k.clone(), 1.0)])?;
            Ok((LaguerreExpansion::eigenvalue(k).sqrt(), c * single.eval(x)?))
        })
        .collect::<Result<_>>()?;
    let mut sup = 0.0f64;
    for &t in t_grid {
        let v: f64 = evals.iter().map(|(sl, a)| a * (-sl * t).exp()).sum();
        sup = sup.max(v.abs());
    }
    Ok(sup)
}
