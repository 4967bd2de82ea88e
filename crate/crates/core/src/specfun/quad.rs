//! Quadrature rules: Gauss-Legendre, generalized Gauss-Laguerre, Gauss-Jacobi
//! (Golub-Welsch eigen-solve of the Jacobi matrix) and a tanh-sinh panel for
//! endpoint-singular integrands, plus an adaptive bisection driver.

use crate::error::{Error, Result};
use crate::specfun::gamma::log_gamma_unchecked;
use nalgebra::DMatrix;

#[derive(Debug, Clone, PartialEq)]
pub enum RuleKind {
    /// Weight 1 on (-1, 1).
    GaussLegendre,
    /// Weight x^alpha e^{-x} on (0, inf); alpha > -1.
    GaussLaguerre { alpha: f64 },
    /// Weight (1-x)^a (1+x)^b on (-1, 1); a, b > -1.
    GaussJacobi { a: f64, b: f64 },
    /// Double-exponential panel on (-1, 1); not Gaussian, handles endpoint
    /// singularities integrable against the substitution.
    TanhSinh,
}

#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub kind: RuleKind,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub order: usize,
}

impl QuadratureRule {
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    pub fn total_mass(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// Build a rule of the requested kind and order.
pub fn make_rule(kind: RuleKind, order: usize) -> Result<QuadratureRule> {
    if order == 0 {
        return Err(Error::Construction("order must be >= 1".into()));
    }
    match kind {
        RuleKind::GaussLegendre => golub_welsch(
            RuleKind::GaussLegendre,
            order,
            |_| 0.0,
            |k| {
                let kf = k as f64;
                kf * kf / (4.0 * kf * kf - 1.0)
            },
            2.0,
        ),
        RuleKind::GaussLaguerre { alpha } => {
            if !(alpha > -1.0) || !alpha.is_finite() {
                return Err(Error::Domain(format!(
                    "Gauss-Laguerre exponent must be > -1, got {alpha}"
                )));
            }
            golub_welsch(
                RuleKind::GaussLaguerre { alpha },
                order,
                |k| 2.0 * k as f64 + alpha + 1.0,
                |k| {
                    let kf = k as f64;
                    kf * (kf + alpha)
                },
                log_gamma_unchecked(alpha + 1.0).exp(),
            )
        }
        RuleKind::GaussJacobi { a, b } => {
            if !(a > -1.0) || !(b > -1.0) || !a.is_finite() || !b.is_finite() {
                return Err(Error::Domain(format!(
                    "Gauss-Jacobi exponents must be > -1, got ({a}, {b})"
                )));
            }
            let mass = ((a + b + 1.0) * std::f64::consts::LN_2
                + log_gamma_unchecked(a + 1.0)
                + log_gamma_unchecked(b + 1.0)
                - log_gamma_unchecked(a + b + 2.0))
            .exp();
            let diag = move |k: usize| -> f64 {
                if k == 0 {
                    (b - a) / (a + b + 2.0)
                } else {
                    let kf = k as f64;
                    let d = 2.0 * kf + a + b;
                    (b * b - a * a) / (d * (d + 2.0))
                }
            };
            let beta = move |k: usize| -> f64 {
                let kf = k as f64;
                if k == 1 {
                    4.0 * (a + 1.0) * (b + 1.0) / ((a + b + 2.0).powi(2) * (a + b + 3.0))
                } else {
                    let d = 2.0 * kf + a + b;
                    4.0 * kf * (kf + a) * (kf + b) * (kf + a + b)
                        / (d * d * (d + 1.0) * (d - 1.0))
                }
            };
            golub_welsch(RuleKind::GaussJacobi { a, b }, order, diag, beta, mass)
        }
        RuleKind::TanhSinh => Ok(tanh_sinh_rule(order)),
    }
}

fn golub_welsch(
    kind: RuleKind,
    order: usize,
    diag: impl Fn(usize) -> f64,
    beta: impl Fn(usize) -> f64,
    mass: f64,
) -> Result<QuadratureRule> {
    let n = order;
    let mut jac = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        jac[(k, k)] = diag(k);
        if k + 1 < n {
            let off = beta(k + 1).sqrt();
            if !off.is_finite() {
                return Err(Error::Construction(format!(
                    "non-finite recurrence coefficient at index {k}"
                )));
            }
            jac[(k, k + 1)] = off;
            jac[(k + 1, k)] = off;
        }
    }
    let eig = jac.symmetric_eigen();
    let mut nodes: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    if nodes.iter().any(|x| !x.is_finite()) {
        return Err(Error::Construction("eigen-solve produced non-finite data".into()));
    }
    nodes.sort_by(|a, b| a.partial_cmp(b).unwrap());

    // Newton-polish the eigenvalues as roots of the orthonormal polynomial
    // p_n and take weights from the Christoffel sum; this recovers the last
    // couple of digits the eigen-solve leaves on the table.
    let a_coef: Vec<f64> = (0..n).map(&diag).collect();
    let b_coef: Vec<f64> = (0..=n).map(|k| if k == 0 { 0.0 } else { beta(k).sqrt() }).collect();
    let p0 = 1.0 / mass.sqrt();
    // values of p_0..p_n and the derivative of p_n at x
    let eval = |x: f64| -> (Vec<f64>, f64) {
        let mut p = Vec::with_capacity(n + 1);
        p.push(p0);
        let mut dp_prev = 0.0;
        let mut dp = 0.0;
        if n >= 1 {
            p.push((x - a_coef[0]) * p0 / b_coef[1]);
            dp = p0 / b_coef[1];
        }
        for k in 1..n {
            let next = ((x - a_coef[k]) * p[k] - b_coef[k] * p[k - 1]) / b_coef[k + 1];
            let dnext = ((x - a_coef[k]) * dp + p[k] - b_coef[k] * dp_prev) / b_coef[k + 1];
            p.push(next);
            dp_prev = dp;
            dp = dnext;
        }
        (p, dp)
    };
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = nodes[i];
        for _ in 0..3 {
            let (p, dp) = eval(x);
            if dp != 0.0 {
                let step = p[n] / dp;
                if step.is_finite() && step.abs() < 1.0 {
                    x -= step;
                }
            }
        }
        let (p, _) = eval(x);
        let christoffel: f64 = p[..n].iter().map(|v| v * v).sum();
        nodes[i] = x;
        weights[i] = 1.0 / christoffel;
    }
    if nodes.iter().chain(weights.iter()).any(|v| !v.is_finite()) {
        return Err(Error::Construction("node polishing produced non-finite data".into()));
    }
    Ok(QuadratureRule {
        kind,
        nodes,
        weights,
        order,
    })
}

/// Tanh-sinh rule with `order` points per side (2*order + 1 total).
fn tanh_sinh_rule(order: usize) -> QuadratureRule {
    let half_pi = 0.5 * std::f64::consts::PI;
    // last node sits where 1 - |x| ~ 1e-15
    let t_max = ((2.0 / std::f64::consts::PI) * (34.0f64 / 2.0)).asinh();
    let h = t_max / order as f64;
    let mut nodes = Vec::with_capacity(2 * order + 1);
    let mut weights = Vec::with_capacity(2 * order + 1);
    for k in -(order as i64)..=(order as i64) {
        let t = k as f64 * h;
        let s = half_pi * t.sinh();
        let x = s.tanh();
        let w = h * half_pi * t.cosh() / s.cosh().powi(2);
        if x.abs() < 1.0 && w.is_finite() && w > 0.0 {
            nodes.push(x);
            weights.push(w);
        }
    }
    QuadratureRule {
        kind: RuleKind::TanhSinh,
        nodes,
        weights,
        order,
    }
}

/// Integrate `f` over (a, b) with the rule mapped affinely from (-1, 1);
/// only meaningful for GaussLegendre / TanhSinh kinds.
pub fn integrate_mapped<F: Fn(f64) -> f64>(rule: &QuadratureRule, a: f64, b: f64, f: F) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    rule.nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&x, &w)| w * f(mid + half * x))
        .sum::<f64>()
        * half
}

/// Adaptive bisection on (a, b) comparing Gauss-Legendre estimates of two
/// orders per panel. Aims at `rel_tol` against the accumulated value.
pub fn adaptive_integrate<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    rel_tol: f64,
    max_depth: usize,
) -> Result<f64> {
    let coarse = make_rule(RuleKind::GaussLegendre, 10)?;
    let fine = make_rule(RuleKind::GaussLegendre, 21)?;
    let scale = integrate_mapped(&fine, a, b, f).abs().max(1e-300);
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        coarse: &QuadratureRule,
        fine: &QuadratureRule,
        abs_tol: f64,
        depth: usize,
    ) -> Result<f64> {
        let c = integrate_mapped(coarse, a, b, f);
        let v = integrate_mapped(fine, a, b, f);
        if (v - c).abs() <= abs_tol || (b - a) < 1e-14 {
            return Ok(v);
        }
        if depth == 0 {
            return Err(Error::Accuracy(format!(
                "adaptive quadrature did not converge on [{a}, {b}]"
            )));
        }
        let m = 0.5 * (a + b);
        Ok(recurse(f, a, m, coarse, fine, 0.5 * abs_tol, depth - 1)?
            + recurse(f, m, b, coarse, fine, 0.5 * abs_tol, depth - 1)?)
    }
    recurse(f, a, b, &coarse, &fine, rel_tol * scale, max_depth)
}
