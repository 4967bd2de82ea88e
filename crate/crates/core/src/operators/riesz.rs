//! Higher-order Riesz transforms: spectral action on expansions and the
//! off-diagonal integral kernel with Hermite factors.

use crate::error::{Error, Result};
use crate::operators::expansion::LaguerreExpansion;
use crate::semigroup::heat::jacobi_rules;
use crate::specfun::gamma::log_gamma_unchecked;
use crate::specfun::hermite::hermite_eval;
use crate::specfun::laguerre::AlphaParam;
use crate::specfun::quad::{integrate_mapped, make_rule, QuadratureRule, RuleKind};

fn check_beta(beta: &[usize], dim: usize) -> Result<usize> {
    if beta.len() != dim {
        return Err(Error::Dimension("derivative order dimension mismatch".into()));
    }
    let total: usize = beta.iter().sum();
    if total == 0 {
        return Err(Error::Domain("Riesz order beta must be nonzero".into()));
    }
    Ok(total)
}

/// Spectral Riesz transform: sum over nonzero indices of
/// lambda^{-beta_hat/2} c_k D^beta L_k evaluated at x.
pub fn riesz_spectral(f: &LaguerreExpansion, beta: &[usize], x: &[f64]) -> Result<f64> {
    let total = check_beta(beta, f.alpha.dim())?;
    let mut acc = 0.0;
    for (k, c) in &f.terms {
        let lambda = LaguerreExpansion::eigenvalue(k);
        if lambda == 0.0 {
            continue;
        }
        let single = LaguerreExpansion::new(f.alpha.clone(), vec![(k.clone(), 1.0)])?;
        acc += c * lambda.powf(-(total as f64) / 2.0) * single.eval_deriv(beta, x)?;
    }
    Ok(acc)
}

/// Off-diagonal Riesz kernel against mu_alpha:
///   (1/Gamma(b/2)) integral over t in (0, inf) of t^{b/2 - 1} D_x^beta W_t(x,y),
/// computed through the angular representation whose t-integrand carries the
/// Hermite product and the Gaussian e^{-q-(sqrt(1-t) x, y, s)/t}. The
/// t-integral splits at 1/2 with substitutions t = tau^2 and 1 - t = sigma^2
/// so that neither endpoint is sampled raw.
pub fn riesz_kernel(
    alpha: &AlphaParam,
    beta: &[usize],
    x: &[f64],
    y: &[f64],
    s_order: usize,
) -> Result<f64> {
    let total = check_beta(beta, alpha.dim())?;
    if x == y {
        return Err(Error::Domain("Riesz kernel is undefined on the diagonal".into()));
    }
    let n = alpha.dim();
    let bh = total as f64;
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
    let panel = make_rule(RuleKind::TanhSinh, 120)?;

    let t_integrand = |t: f64, s: &[f64]| -> f64 {
        if t <= 0.0 || t >= 1.0 {
            return 0.0;
        }
        let rt = (1.0 - t).sqrt();
        let st = t.sqrt();
        let mut q_minus = 0.0;
        let mut hermite_prod = 1.0;
        for i in 0..n {
            let zi = (rt * x[i] - y[i] * s[i]) / st;
            q_minus += (rt * x[i] - y[i] * s[i]).powi(2) + y[i] * y[i] * (1.0 - s[i] * s[i]);
            if beta[i] > 0 {
                hermite_prod *= hermite_eval(beta[i], zi);
            }
        }
        let gauss = (-q_minus / t).exp();
        if gauss == 0.0 {
            return 0.0;
        }
        let ln_omt = (-t).ln_1p(); // ln(1 - t)
        let log_power =
            (0.5 * bh - 1.0) * (ln_omt + (-ln_omt).ln()) - (0.5 * bh + nah) * t.ln();
        hermite_prod * gauss * log_power.exp()
    };

    let half_sqrt = 0.5f64.sqrt();
    let mut sum = 0.0;
    let mut idx = vec![0usize; n];
    let mut s = vec![0.0f64; n];
    loop {
        let mut w = 1.0;
        for i in 0..n {
            s[i] = rules[i].nodes[idx[i]];
            w *= rules[i].weights[idx[i]];
        }
        let left = integrate_mapped(&panel, 0.0, half_sqrt, |tau| {
            2.0 * tau * t_integrand(tau * tau, &s)
        });
        let right = integrate_mapped(&panel, 0.0, half_sqrt, |sig| {
            2.0 * sig * t_integrand(1.0 - sig * sig, &s)
        });
        sum += w * (left + right);
        let mut axis = n;
        loop {
            if axis == 0 {
                let sign = if total % 2 == 0 { 1.0 } else { -1.0 };
                let ny2: f64 = y.iter().map(|v| v * v).sum();
                let log_front = ny2 + log_pi - log_gamma_unchecked(0.5 * bh);
                return Ok(sign * log_front.exp() * sum);
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

/// Far-field domination report: sup over contexts of the pointwise Riesz
/// s-integrand magnitude against the auxiliary kernel at the given epsilon.
pub fn riesz_majorant_ratio(
    alpha: &AlphaParam,
    beta: &[usize],
    x: &[f64],
    y: &[f64],
    s: &[f64],
    epsilon: f64,
    panel: &QuadratureRule,
) -> Result<f64> {
    let total = check_beta(beta, alpha.dim())?;
    let n = alpha.dim();
    let bh = total as f64;
    let nah = n as f64 + alpha.alpha_hat();
    let t_abs = |t: f64| -> f64 {
        if t <= 0.0 || t >= 1.0 {
            return 0.0;
        }
        let rt = (1.0 - t).sqrt();
        let st = t.sqrt();
        let mut q_minus = 0.0;
        let mut hermite_prod = 1.0;
        for i in 0..n {
            let zi = (rt * x[i] - y[i] * s[i]) / st;
            q_minus += (rt * x[i] - y[i] * s[i]).powi(2) + y[i] * y[i] * (1.0 - s[i] * s[i]);
            if beta[i] > 0 {
                hermite_prod *= hermite_eval(beta[i], zi);
            }
        }
        let gauss = (-q_minus / t).exp();
        if gauss == 0.0 {
            return 0.0;
        }
        let ln_omt = (-t).ln_1p(); // ln(1 - t)
        let log_power =
            (0.5 * bh - 1.0) * (ln_omt + (-ln_omt).ln()) - (0.5 * bh + nah) * t.ln();
        (hermite_prod * gauss).abs() * log_power.exp()
    };
    let half_sqrt = 0.5f64.sqrt();
    let left = integrate_mapped(panel, 0.0, half_sqrt, |tau| 2.0 * tau * t_abs(tau * tau));
    let right = integrate_mapped(panel, 0.0, half_sqrt, |sig| {
        2.0 * sig * t_abs(1.0 - sig * sig)
    });
    let h = crate::operators::haux::h_kernel_pointwise(alpha, epsilon, x, y, s);
    Ok((left + right) / h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::TensorGrid;
    use approx::assert_relative_eq;

    #[test]
    fn spectral_on_first_eigenfunction() {
        // R^(1) of L_1 in one dimension, type 0: L_1(x) = 1 - x^2, lambda = 1,
        // so the image is -2x
        let alpha = AlphaParam::new(vec![0.0]).unwrap();
        let f = LaguerreExpansion::new(alpha, vec![(vec![1], 1.0)]).unwrap();
        for &x in &[0.3, 1.0, 2.5] {
            assert_relative_eq!(
                riesz_spectral(&f, &[1], &[x]).unwrap(),
                -2.0 * x,
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn spectral_l2_norm_of_first_image() {
        // || -2x ||_{L^2(mu_0)} = 2
        let alpha = AlphaParam::new(vec![0.0]).unwrap();
        let f = LaguerreExpansion::new(alpha.clone(), vec![(vec![1], 1.0)]).unwrap();
        let grid = TensorGrid::mu_alpha(&alpha, 30).unwrap();
        let vals: Vec<f64> = grid
            .points()
            .iter()
            .map(|p| riesz_spectral(&f, &[1], p).unwrap())
            .collect();
        let d = crate::grid::DiscreteFunction {
            grid,
            values: vals,
        };
        assert_relative_eq!(d.lp_norm(2.0), 2.0, max_relative = 1e-10);
    }

    #[test]
    fn constant_term_is_annihilated() {
        let alpha = AlphaParam::new(vec![0.0]).unwrap();
        let f = LaguerreExpansion::new(alpha, vec![(vec![0], 5.0)]).unwrap();
        assert_eq!(riesz_spectral(&f, &[1], &[1.0]).unwrap(), 0.0);
    }

    #[test]
    fn rejects_zero_beta_and_diagonal() {
        let alpha = AlphaParam::new(vec![0.0]).unwrap();
        let f = LaguerreExpansion::new(alpha.clone(), vec![(vec![1], 1.0)]).unwrap();
        assert!(riesz_spectral(&f, &[0], &[1.0]).is_err());
        assert!(riesz_kernel(&alpha, &[1], &[1.0], &[1.0], 24).is_err());
    }

    #[test]
    fn kernel_deterministic_re_evaluation() {
        let alpha = AlphaParam::new(vec![0.5]).unwrap();
        let a = riesz_kernel(&alpha, &[2], &[0.9], &[1.8], 48).unwrap();
        let b = riesz_kernel(&alpha, &[2], &[0.9], &[1.8], 48).unwrap();
        assert_eq!(a, b);
    }
}
