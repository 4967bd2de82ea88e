//! Littlewood-Paley square functions for the Poisson semigroup on finite
//! expansions. The time profile of an expansion is a finite exponential sum,
//! so the square integral reduces to pairwise cross terms whose t-integrals
//! a fixed-order Gauss-Laguerre rule reproduces exactly.

use crate::error::{Error, Result};
use crate::grid::{tree_sum, DiscreteFunction, TensorGrid};
use crate::operators::expansion::LaguerreExpansion;
use crate::specfun::quad::{make_rule, QuadratureRule, RuleKind};

/// g(f)(x) = ( integral over t of | t^{k+beta_hat} d^k/dt^k D^beta P_t f(x) |^2 dt/t )^{1/2}.
pub struct GFunction {
    pub beta: Vec<usize>,
    pub k: usize,
    t_rule: QuadratureRule,
}

impl GFunction {
    pub fn new(beta: Vec<usize>, k: usize) -> Result<Self> {
        let beta_hat: usize = beta.iter().sum();
        if k + beta_hat == 0 {
            return Err(Error::Domain(
                "square function requires k + beta_hat > 0".into(),
            ));
        }
        // exact for the polynomial part of every cross term: degree
        // 2(k + beta_hat) - 1 <= 2 order - 1
        let order = (k + beta_hat + 4).max(8);
        let t_rule = make_rule(RuleKind::GaussLaguerre { alpha: 0.0 }, order)?;
        Ok(Self { beta, k, t_rule })
    }

    fn kappa(&self) -> f64 {
        (self.k + self.beta.iter().sum::<usize>()) as f64
    }

    /// Pointwise value at x for a finite expansion.
    pub fn eval(&self, f: &LaguerreExpansion, x: &[f64]) -> Result<f64> {
        if f.terms.is_empty() {
            return Ok(0.0);
        }
        if self.beta.len() != f.alpha.dim() {
            return Err(Error::Dimension("beta dimension mismatch".into()));
        }
        let kappa = self.kappa();
        // per-term data: (sqrt(lambda), lambda^{k/2} c D^beta L(x)), skipping
        // the kernel of the generator
        let mut rows: Vec<(f64, f64)> = Vec::with_capacity(f.terms.len());
        for (idx, c) in &f.terms {
            let lambda = LaguerreExpansion::eigenvalue(idx);
            if lambda == 0.0 {
                continue;
            }
            let single = LaguerreExpansion::new(f.alpha.clone(), vec![(idx.clone(), 1.0)])?;
            let d = single.eval_deriv(&self.beta, x)?;
            rows.push((lambda.sqrt(), c * lambda.powf(self.k as f64 / 2.0) * d));
        }
        if rows.is_empty() {
            return Ok(0.0);
        }
        // integral of t^{2 kappa - 1} e^{-sigma t} dt via the substitution
        // w = sigma t; the w-integrand is a pure monomial, so the rule is exact
        let moment = self.t_rule.integrate(|w| w.powf(2.0 * kappa - 1.0));
        let mut sq = 0.0;
        for i in 0..rows.len() {
            for j in 0..rows.len() {
                let sigma = rows[i].0 + rows[j].0;
                sq += rows[i].1 * rows[j].1 * moment * sigma.powf(-2.0 * kappa);
            }
        }
        Ok(sq.max(0.0).sqrt())
    }

    /// L^2(mu_alpha) norm of g(f) by quadrature on the given grid.
    pub fn norm_l2(&self, f: &LaguerreExpansion, grid: &TensorGrid) -> Result<f64> {
        let mut terms = Vec::with_capacity(grid.len());
        for i in 0..grid.len() {
            let v = self.eval(f, &grid.point(i))?;
            terms.push(grid.weight(i) * v * v);
        }
        Ok(tree_sum(&terms).sqrt())
    }

    /// Sampled values on a grid, as a discrete function.
    pub fn discretize(&self, f: &LaguerreExpansion, grid: TensorGrid) -> Result<DiscreteFunction> {
        let values = (0..grid.len())
            .map(|i| self.eval(f, &grid.point(i)))
            .collect::<Result<Vec<f64>>>()?;
        Ok(DiscreteFunction { grid, values })
    }
}
