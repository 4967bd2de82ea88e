//! Spectral multipliers of Laplace-transform type, including imaginary
//! powers of the generator, and their off-diagonal integral kernel.

use crate::error::{Error, Result};
use crate::operators::expansion::LaguerreExpansion;
use crate::semigroup::heat::{heat_kernel_dt, MIN_TIME};
use crate::specfun::laguerre::AlphaParam;
use crate::specfun::quad::{adaptive_integrate, make_rule, QuadratureRule, RuleKind};
use crate::specfun::MultiIndex;
use num_complex::Complex64;

/// Bounded symbols phi on (0, inf) generating Laplace-transform-type
/// multipliers m(x) = x integral of phi(y) e^{-x y} dy.
#[derive(Debug, Clone, PartialEq)]
pub enum LaplacePhi {
    Const(f64),
    /// phi(t) = e^{-rate t}.
    ExpDecay { rate: f64 },
    /// phi(t) = 1 on [0, hi), 0 beyond.
    Window { hi: f64 },
}

impl LaplacePhi {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            LaplacePhi::Const(c) => *c,
            LaplacePhi::ExpDecay { rate } => (-rate * t).exp(),
            LaplacePhi::Window { hi } => {
                if t < *hi {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    pub fn sup_bound(&self) -> f64 {
        match self {
            LaplacePhi::Const(c) => c.abs(),
            LaplacePhi::ExpDecay { .. } => 1.0,
            LaplacePhi::Window { .. } => 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MultiplierSpec {
    /// m(x) = x^{i beta}, with m(0) = 0.
    ImaginaryPower(f64),
    /// m(x) = x integral of phi(y) e^{-x y} dy, with m(0) = 0.
    LaplaceType(LaplacePhi),
}

impl MultiplierSpec {
    pub fn sup_bound(&self) -> f64 {
        match self {
            MultiplierSpec::ImaginaryPower(_) => 1.0,
            MultiplierSpec::LaplaceType(phi) => phi.sup_bound(),
        }
    }
}

/// Symbol value m(lambda). Laplace-type symbols are evaluated by the
/// substitution w = lambda y, which turns the defining integral into a
/// Gauss-Laguerre quadrature of the bounded phi.
pub fn multiplier_symbol(
    spec: &MultiplierSpec,
    lambda: f64,
    rule: &QuadratureRule,
) -> Complex64 {
    if lambda == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    match spec {
        MultiplierSpec::ImaginaryPower(beta) => {
            let theta = beta * lambda.ln();
            Complex64::new(theta.cos(), theta.sin())
        }
        MultiplierSpec::LaplaceType(phi) => {
            let v = rule.integrate(|w| phi.eval(w / lambda));
            Complex64::new(v, 0.0)
        }
    }
}

/// Default symbol quadrature.
pub fn symbol_rule() -> Result<QuadratureRule> {
    make_rule(RuleKind::GaussLaguerre { alpha: 0.0 }, 80)
}

/// Spectral application: each coefficient is multiplied by m(lambda_k).
pub fn multiplier_apply(
    f: &LaguerreExpansion,
    spec: &MultiplierSpec,
    rule: &QuadratureRule,
) -> Vec<(MultiIndex, Complex64)> {
    f.terms
        .iter()
        .map(|(k, c)| {
            let m = multiplier_symbol(spec, LaguerreExpansion::eigenvalue(k), rule);
            (k.clone(), m * *c)
        })
        .collect()
}

/// Off-diagonal kernel of a Laplace-type multiplier:
/// integral of phi(t) (-d/dt) W_t(x, y) dt, with the analytic derivative of
/// the Bessel-product heat kernel.
pub fn multiplier_kernel(
    alpha: &AlphaParam,
    phi: &LaplacePhi,
    x: &[f64],
    y: &[f64],
) -> Result<f64> {
    if x == y {
        return Err(Error::Domain(
            "multiplier kernel is undefined on the diagonal".into(),
        ));
    }
    // below MIN_TIME the integrand is flushed to zero by the Gaussian for
    // separated points; far beyond t ~ 60 the derivative is O(e^{-t})
    let f = |t: f64| -> f64 {
        if t < MIN_TIME {
            return 0.0;
        }
        let d = heat_kernel_dt(alpha, t, x, y).unwrap_or(0.0);
        -phi.eval(t) * d
    };
    let head = adaptive_integrate(&f, MIN_TIME, 1.0, 1e-8, 36)?;
    let tail = adaptive_integrate(&f, 1.0, 60.0, 1e-8, 36)?;
    Ok(head + tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn alpha1() -> AlphaParam {
        AlphaParam::new(vec![0.0]).unwrap()
    }

    #[test]
    fn symbol_vanishes_at_zero() {
        let rule = symbol_rule().unwrap();
        for spec in [
            MultiplierSpec::ImaginaryPower(2.0),
            MultiplierSpec::LaplaceType(LaplacePhi::Const(1.0)),
        ] {
            assert_eq!(multiplier_symbol(&spec, 0.0, &rule).norm(), 0.0);
        }
    }

    #[test]
    fn imaginary_power_preserves_modulus() {
        let rule = symbol_rule().unwrap();
        let spec = MultiplierSpec::ImaginaryPower(1.7);
        for &lam in &[1.0, 2.0, 9.0] {
            assert_relative_eq!(multiplier_symbol(&spec, lam, &rule).norm(), 1.0);
        }
        let f = LaguerreExpansion::new(
            alpha1(),
            vec![(vec![1], 0.3), (vec![4], -2.0)],
        )
        .unwrap();
        for (k, c) in multiplier_apply(&f, &spec, &rule) {
            let orig = f
                .terms
                .iter()
                .find(|(kk, _)| *kk == k)
                .map(|(_, c)| *c)
                .unwrap();
            assert_relative_eq!(c.norm(), orig.abs(), max_relative = 1e-13);
        }
    }

    #[test]
    fn unit_symbol_recovers_mean_free_part() {
        // phi = 1 gives m = 1 on (0, inf) and m(0) = 0
        let rule = symbol_rule().unwrap();
        let spec = MultiplierSpec::LaplaceType(LaplacePhi::Const(1.0));
        let f = LaguerreExpansion::new(
            alpha1(),
            vec![(vec![0], 4.0), (vec![2], -1.5), (vec![5], 0.25)],
        )
        .unwrap();
        for (k, c) in multiplier_apply(&f, &spec, &rule) {
            let orig = f
                .terms
                .iter()
                .find(|(kk, _)| *kk == k)
                .map(|(_, c)| *c)
                .unwrap();
            let want = if k.iter().sum::<usize>() == 0 { 0.0 } else { orig };
            assert_relative_eq!(c.re, want, epsilon = 1e-10);
            assert_relative_eq!(c.im, 0.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn exp_decay_symbol_closed_form() {
        // phi(t) = e^{-r t} gives m(x) = x / (x + r)
        let rule = symbol_rule().unwrap();
        let spec = MultiplierSpec::LaplaceType(LaplacePhi::ExpDecay { rate: 2.0 });
        for &lam in &[1.0, 3.0, 10.0] {
            let got = multiplier_symbol(&spec, lam, &rule).re;
            assert_relative_eq!(got, lam / (lam + 2.0), max_relative = 1e-10);
        }
    }

    #[test]
    fn kernel_of_unit_symbol_telescopes() {
        // integral of -d/dt W_t over (0, inf) = W_{0+} - W_inf = 0 - 1
        let alpha = alpha1();
        let k = multiplier_kernel(&alpha, &LaplacePhi::Const(1.0), &[0.7], &[1.9]).unwrap();
        assert_relative_eq!(k, -1.0, max_relative = 1e-4);
    }

    #[test]
    fn zero_symbol_kernel_vanishes() {
        let alpha = alpha1();
        let k = multiplier_kernel(&alpha, &LaplacePhi::Const(0.0), &[0.7], &[1.9]).unwrap();
        assert_eq!(k, 0.0);
    }

    #[test]
    fn plancherel_sup_bound() {
        let rule = symbol_rule().unwrap();
        let spec = MultiplierSpec::LaplaceType(LaplacePhi::ExpDecay { rate: 0.7 });
        let f = LaguerreExpansion::new(
            alpha1(),
            vec![(vec![1], 1.0), (vec![2], -0.5), (vec![7], 2.0)],
        )
        .unwrap();
        let out = multiplier_apply(&f, &spec, &rule);
        let out_norm: f64 = out.iter().map(|(_, c)| c.norm_sqr()).sum::<f64>().sqrt();
        assert!(out_norm <= spec.sup_bound() * f.norm_l2() + 1e-10);
    }
}
