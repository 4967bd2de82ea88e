//! Finite Laguerre expansions: the common carrier for spectral operator
//! application, with stable pointwise evaluation and exact derivatives.

use crate::error::{Error, Result};
use crate::grid::{tree_sum, DiscreteFunction, TensorGrid};
use crate::semigroup::poisson::SubordinationRule;
use crate::specfun::laguerre::{laguerre_square_deriv_eval, laguerre_tensor, AlphaParam};
use crate::specfun::MultiIndex;

#[derive(Debug, Clone)]
pub struct LaguerreExpansion {
    pub alpha: AlphaParam,
    pub terms: Vec<(MultiIndex, f64)>,
}

impl LaguerreExpansion {
    pub fn new(alpha: AlphaParam, terms: Vec<(MultiIndex, f64)>) -> Result<Self> {
        for (k, _) in &terms {
            if k.len() != alpha.dim() {
                return Err(Error::Dimension(format!(
                    "index {:?} does not match dimension {}",
                    k,
                    alpha.dim()
                )));
            }
        }
        Ok(Self { alpha, terms })
    }

    pub fn eigenvalue(k: &[usize]) -> f64 {
        k.iter().sum::<usize>() as f64
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        let mut acc = 0.0;
        for (k, c) in &self.terms {
            acc += c * laguerre_tensor(k, &self.alpha, x)?;
        }
        Ok(acc)
    }

    /// Value of D^beta f at x, by exact per-axis derivative recurrences.
    pub fn eval_deriv(&self, beta: &[usize], x: &[f64]) -> Result<f64> {
        if beta.len() != self.alpha.dim() {
            return Err(Error::Dimension("derivative order dimension mismatch".into()));
        }
        let mut acc = 0.0;
        for (k, c) in &self.terms {
            let mut prod = *c;
            for i in 0..k.len() {
                prod *=
                    laguerre_square_deriv_eval(k[i], self.alpha.entries()[i], beta[i], x[i])?;
                if prod == 0.0 {
                    break;
                }
            }
            acc += prod;
        }
        Ok(acc)
    }

    /// Heat semigroup action: coefficients scaled by e^{-lambda t}.
    pub fn heat(&self, t: f64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (k.clone(), c * (-Self::eigenvalue(k) * t).exp()))
            .collect();
        Self {
            alpha: self.alpha.clone(),
            terms,
        }
    }

    /// Poisson semigroup action: coefficients scaled by e^{-sqrt(lambda) t}.
    pub fn poisson(&self, t: f64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (k.clone(), c * (-Self::eigenvalue(k).sqrt() * t).exp()))
            .collect();
        Self {
            alpha: self.alpha.clone(),
            terms,
        }
    }

    /// Poisson action evaluated through the subordination average of the
    /// exact heat action, so only the subordination variable is quadratured.
    pub fn poisson_by_subordination(
        &self,
        t: f64,
        x: &[f64],
        rule: &SubordinationRule,
    ) -> Result<f64> {
        let mut acc = 0.0;
        for (k, c) in &self.terms {
            let lambda = Self::eigenvalue(k);
            let single = Self::new(self.alpha.clone(), vec![(k.clone(), 1.0)])?;
            let base = c * single.eval(x)?;
            let avg: f64 = rule
                .nodes
                .iter()
                .zip(&rule.weights)
                .map(|(&v, &w)| w * (-lambda * t * t / (4.0 * v)).exp())
                .sum();
            acc += base * avg;
        }
        Ok(acc)
    }

    /// Parseval L^2(mu_alpha) norm from the coefficients.
    pub fn norm_l2(&self) -> f64 {
        let sq: Vec<f64> = self.terms.iter().map(|(_, c)| c * c).collect();
        tree_sum(&sq).sqrt()
    }

    /// Sample the expansion on a grid.
    pub fn discretize(&self, grid: TensorGrid) -> Result<DiscreteFunction> {
        let values = (0..grid.len())
            .map(|i| self.eval(&grid.point(i)))
            .collect::<Result<Vec<f64>>>()?;
        Ok(DiscreteFunction { grid, values })
    }
}
