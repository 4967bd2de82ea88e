//! Tensor quadrature grids over (0,inf)^n and the discrete functions that
//! live on them.
//!
//! A grid axis carries nodes in the original x coordinates together with
//! weights into which the measure density is already folded, so that
//! sum(w * f(node)) approximates the measure integral directly.

use crate::error::{Error, Result};
use crate::specfun::laguerre::AlphaParam;
use crate::specfun::quad::{make_rule, RuleKind};

/// The three measures the library integrates against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    /// Gaussian-type probability measure with density
    /// 2^n prod x_j^{2 a_j + 1} e^{-x_j^2} / Gamma(a_j + 1).
    MuAlpha,
    /// Doubling polynomial measure with density prod x_j^{2 a_j + 1}.
    MAlpha,
    /// Plain Lebesgue measure.
    Lebesgue,
}

#[derive(Debug, Clone)]
pub struct AxisGrid {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct TensorGrid {
    pub measure: Measure,
    pub axes: Vec<AxisGrid>,
}

impl TensorGrid {
    /// mu_alpha grid: per axis, generalized Gauss-Laguerre in u = x^2 mapped
    /// back to x = sqrt(u), normalized so the total mass is exactly 1.
    pub fn mu_alpha(alpha: &AlphaParam, order: usize) -> Result<Self> {
        let mut axes = Vec::with_capacity(alpha.dim());
        for (&a, &log_norm) in alpha.entries().iter().zip(alpha.log_normalizers()) {
            let rule = make_rule(RuleKind::GaussLaguerre { alpha: a }, order)?;
            let norm = (-log_norm).exp();
            let nodes: Vec<f64> = rule.nodes.iter().map(|&u| u.sqrt()).collect();
            let weights: Vec<f64> = rule.weights.iter().map(|&w| w * norm).collect();
            axes.push(AxisGrid { nodes, weights });
        }
        Ok(Self {
            measure: Measure::MuAlpha,
            axes,
        })
    }

    /// m_alpha grid on the box (0, bound]^n: Gauss-Legendre nodes with the
    /// polynomial density folded into the weights.
    pub fn m_alpha_box(alpha: &AlphaParam, bound: f64, order: usize) -> Result<Self> {
        if !(bound > 0.0) {
            return Err(Error::Domain("box bound must be positive".into()));
        }
        let rule = make_rule(RuleKind::GaussLegendre, order)?;
        let mut axes = Vec::with_capacity(alpha.dim());
        for &a in alpha.entries() {
            let mut nodes = Vec::with_capacity(order);
            let mut weights = Vec::with_capacity(order);
            for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
                let x = 0.5 * bound * (t + 1.0);
                nodes.push(x);
                weights.push(0.5 * bound * w * x.powf(2.0 * a + 1.0));
            }
            axes.push(AxisGrid { nodes, weights });
        }
        Ok(Self {
            measure: Measure::MAlpha,
            axes,
        })
    }

    /// Lebesgue grid on the box (0, bound]^n.
    pub fn lebesgue_box(dim: usize, bound: f64, order: usize) -> Result<Self> {
        if !(bound > 0.0) {
            return Err(Error::Domain("box bound must be positive".into()));
        }
        let rule = make_rule(RuleKind::GaussLegendre, order)?;
        let axis = AxisGrid {
            nodes: rule.nodes.iter().map(|&t| 0.5 * bound * (t + 1.0)).collect(),
            weights: rule.weights.iter().map(|&w| 0.5 * bound * w).collect(),
        };
        Ok(Self {
            measure: Measure::Lebesgue,
            axes: vec![axis; dim],
        })
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.nodes.len()).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Point for a flat row-major index.
    pub fn point(&self, mut flat: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.dim()];
        for i in (0..self.dim()).rev() {
            let n = self.axes[i].nodes.len();
            out[i] = self.axes[i].nodes[flat % n];
            flat /= n;
        }
        out
    }

    /// Weight for a flat row-major index.
    pub fn weight(&self, mut flat: usize) -> f64 {
        let mut w = 1.0;
        for i in (0..self.dim()).rev() {
            let n = self.axes[i].nodes.len();
            w *= self.axes[i].weights[flat % n];
            flat /= n;
        }
        w
    }

    /// All points in row-major order.
    pub fn points(&self) -> Vec<Vec<f64>> {
        (0..self.len()).map(|i| self.point(i)).collect()
    }

    /// All weights in row-major order.
    pub fn weights_flat(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.weight(i)).collect()
    }
}

/// A function sampled on a tensor grid, values in row-major order.
#[derive(Debug, Clone)]
pub struct DiscreteFunction {
    pub grid: TensorGrid,
    pub values: Vec<f64>,
}

impl DiscreteFunction {
    pub fn from_fn<F: Fn(&[f64]) -> f64>(grid: TensorGrid, f: F) -> Self {
        let values = (0..grid.len()).map(|i| f(&grid.point(i))).collect();
        Self { grid, values }
    }

    pub fn zeros(grid: TensorGrid) -> Self {
        let values = vec![0.0; grid.len()];
        Self { grid, values }
    }

    pub fn check_shape(&self) -> Result<()> {
        if self.values.len() != self.grid.len() {
            return Err(Error::Dimension(format!(
                "grid has {} points but {} values stored",
                self.grid.len(),
                self.values.len()
            )));
        }
        Ok(())
    }

    /// Measure integral of the stored values.
    pub fn integrate(&self) -> f64 {
        let terms: Vec<f64> = self
            .values
            .iter()
            .enumerate()
            .map(|(i, &v)| self.grid.weight(i) * v)
            .collect();
        tree_sum(&terms)
    }

    /// Classical L^p norm (constant exponent) under the grid measure.
    pub fn lp_norm(&self, p: f64) -> f64 {
        let terms: Vec<f64> = self
            .values
            .iter()
            .enumerate()
            .map(|(i, &v)| self.grid.weight(i) * v.abs().powf(p))
            .collect();
        tree_sum(&terms).powf(1.0 / p)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Pairwise (tree) summation with a fixed reduction order; bit-stable across
/// thread counts because callers always pass index-ordered slices.
pub fn tree_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        n => {
            let mid = n / 2;
            tree_sum(&values[..mid]) + tree_sum(&values[mid..])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn mu_alpha_is_probability() {
        for alpha in [vec![0.0], vec![0.5], vec![2.0], vec![0.0, 1.0]] {
            let ap = AlphaParam::new(alpha).unwrap();
            let grid = TensorGrid::mu_alpha(&ap, 40).unwrap();
            let one = DiscreteFunction::from_fn(grid, |_| 1.0);
            assert_relative_eq!(one.integrate(), 1.0, max_relative = 1e-10);
        }
    }

    #[test]
    fn mu_alpha_second_moment() {
        // integral of x^2 dmu_alpha = Gamma(a+2)/Gamma(a+1) = a + 1 in n = 1
        for &a in &[0.0, 0.5, 2.0] {
            let ap = AlphaParam::new(vec![a]).unwrap();
            let grid = TensorGrid::mu_alpha(&ap, 30).unwrap();
            let f = DiscreteFunction::from_fn(grid, |x| x[0] * x[0]);
            assert_relative_eq!(f.integrate(), a + 1.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn m_alpha_box_polynomial_mass() {
        // integral of x^{2a+1} over (0, L) = L^{2a+2} / (2a+2)
        let ap = AlphaParam::new(vec![0.5]).unwrap();
        let grid = TensorGrid::m_alpha_box(&ap, 3.0, 40).unwrap();
        let one = DiscreteFunction::from_fn(grid, |_| 1.0);
        assert_relative_eq!(one.integrate(), 3.0f64.powi(3) / 3.0, max_relative = 1e-12);
    }

    #[test]
    fn row_major_indexing_round_trip() {
        let ap = AlphaParam::new(vec![0.0, 1.0]).unwrap();
        let grid = TensorGrid::mu_alpha(&ap, 5).unwrap();
        assert_eq!(grid.len(), 25);
        let pts = grid.points();
        assert_eq!(pts.len(), 25);
        // last axis varies fastest
        assert_eq!(pts[0][0], pts[1][0]);
        assert_ne!(pts[0][1], pts[1][1]);
    }

    #[test]
    fn tree_sum_matches_naive() {
        let xs: Vec<f64> = (0..1001).map(|i| (i as f64 * 0.37).sin()).collect();
        let naive: f64 = xs.iter().sum();
        assert_relative_eq!(tree_sum(&xs), naive, max_relative = 1e-12);
    }
}
