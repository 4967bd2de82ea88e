//! Normalized Laguerre polynomials, their tensor products over squared
//! coordinates, and stable value/derivative recurrences.
//!
//! `L_k^a` below always denotes the *normalized* polynomial: the classical
//! Laguerre polynomial of type `a` scaled so that the family is orthonormal
//! in L^2((0,inf), x^a e^{-x} dx / Gamma(a+1)).

use crate::error::{Error, Result};
use crate::specfun::gamma::log_gamma_unchecked;
use crate::specfun::poly::PolyCoeffs;

/// Type vector for the product setting: alpha in [0,inf)^n plus the derived
/// scalars every kernel formula needs.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaParam {
    alpha: Vec<f64>,
    alpha_hat: f64,
    log_normalizers: Vec<f64>,
}

impl AlphaParam {
    pub fn new(alpha: Vec<f64>) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::Dimension("alpha must have dimension >= 1".into()));
        }
        if let Some(bad) = alpha.iter().find(|a| !(**a >= 0.0) || !a.is_finite()) {
            return Err(Error::Domain(format!(
                "alpha entries must be finite and >= 0, got {bad}"
            )));
        }
        let alpha_hat = alpha.iter().sum();
        let log_normalizers = alpha.iter().map(|&a| log_gamma_unchecked(a + 1.0)).collect();
        Ok(Self {
            alpha,
            alpha_hat,
            log_normalizers,
        })
    }

    pub fn dim(&self) -> usize {
        self.alpha.len()
    }

    pub fn entries(&self) -> &[f64] {
        &self.alpha
    }

    pub fn alpha_hat(&self) -> f64 {
        self.alpha_hat
    }

    pub fn log_normalizers(&self) -> &[f64] {
        &self.log_normalizers
    }
}

fn check_type(alpha: f64) -> Result<()> {
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return Err(Error::Domain(format!(
            "Laguerre type must be finite and >= 0, got {alpha}"
        )));
    }
    Ok(())
}

/// Classical (unnormalized) Laguerre polynomial of type `alpha` and degree
/// `k`, by the three-term recurrence on coefficient vectors.
pub fn laguerre_classical(k: usize, alpha: f64) -> Result<PolyCoeffs> {
    check_type(alpha)?;
    let mut prev = PolyCoeffs::constant(1.0);
    if k == 0 {
        return Ok(prev);
    }
    let mut curr = PolyCoeffs::new(vec![1.0 + alpha, -1.0]);
    for j in 1..k {
        let jf = j as f64;
        // (j+1) L_{j+1} = (2j+1+alpha-x) L_j - (j+alpha) L_{j-1}
        let a = curr
            .scale(2.0 * jf + 1.0 + alpha)
            .sub(&curr.mul_xpow(1))
            .sub(&prev.scale(jf + alpha));
        let next = a.scale(1.0 / (jf + 1.0));
        prev = curr;
        curr = next;
    }
    Ok(curr)
}

/// Scale factor turning the classical polynomial into the orthonormal one:
/// sqrt(Gamma(alpha+1) k! / Gamma(alpha+k+1)).
pub fn normalization_factor(k: usize, alpha: f64) -> f64 {
    (0.5 * (log_gamma_unchecked(alpha + 1.0) + log_gamma_unchecked(k as f64 + 1.0)
        - log_gamma_unchecked(alpha + k as f64 + 1.0)))
    .exp()
}

/// Normalized Laguerre polynomial of type `alpha` and degree `k` as an exact
/// coefficient vector in its own variable.
pub fn laguerre_normalized(k: usize, alpha: f64) -> Result<PolyCoeffs> {
    let classical = laguerre_classical(k, alpha)?;
    Ok(classical.scale(normalization_factor(k, alpha)))
}

/// Value of the normalized polynomial by the orthonormal three-term
/// recurrence; stable at degrees and arguments where the coefficient form
/// cancels catastrophically.
pub fn laguerre_normalized_eval(k: usize, alpha: f64, u: f64) -> Result<f64> {
    Ok(*laguerre_normalized_all(k, alpha, u)?.last().unwrap())
}

/// Values of all normalized polynomials of degree 0..=k_max at `u`.
pub fn laguerre_normalized_all(k_max: usize, alpha: f64, u: f64) -> Result<Vec<f64>> {
    check_type(alpha)?;
    let mut out = Vec::with_capacity(k_max + 1);
    let mut prev = 0.0f64;
    let mut curr = 1.0f64;
    out.push(curr);
    for k in 0..k_max {
        let kf = k as f64;
        let next = ((2.0 * kf + alpha + 1.0 - u) * curr - (kf * (kf + alpha)).sqrt() * prev)
            / (((kf + 1.0) * (kf + alpha + 1.0)).sqrt());
        prev = curr;
        curr = next;
        out.push(curr);
    }
    Ok(out)
}

/// m-th derivative of the normalized polynomial at `u`, through the identity
/// d/du L_k^a = -sqrt(k/(a+1)) L_{k-1}^{a+1} iterated m times.
pub fn laguerre_normalized_deriv_eval(k: usize, alpha: f64, m: usize, u: f64) -> Result<f64> {
    check_type(alpha)?;
    if m > k {
        return Ok(0.0);
    }
    if m == 0 {
        return laguerre_normalized_eval(k, alpha, u);
    }
    let kf = k as f64;
    let mf = m as f64;
    let log_factor = 0.5
        * (log_gamma_unchecked(kf + 1.0) - log_gamma_unchecked(kf - mf + 1.0)
            + log_gamma_unchecked(alpha + 1.0)
            - log_gamma_unchecked(alpha + mf + 1.0));
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * log_factor.exp() * laguerre_normalized_eval(k - m, alpha + mf, u)?)
}

/// Tensor Laguerre polynomial: the product over axes of the normalized
/// polynomials evaluated at the squared coordinates.
pub fn laguerre_tensor(k: &[usize], alpha: &AlphaParam, x: &[f64]) -> Result<f64> {
    if k.len() != alpha.dim() || x.len() != alpha.dim() {
        return Err(Error::Dimension(format!(
            "index/alpha/point dimensions disagree: {} / {} / {}",
            k.len(),
            alpha.dim(),
            x.len()
        )));
    }
    let mut prod = 1.0;
    for i in 0..k.len() {
        prod *= laguerre_normalized_eval(k[i], alpha.entries()[i], x[i] * x[i])?;
    }
    Ok(prod)
}

/// Value of d^m/dx^m [ L_k^a(x^2) ] by exact chain-rule bookkeeping on top of
/// the stable derivative recurrence in the u = x^2 variable.
pub fn laguerre_square_deriv_eval(k: usize, alpha: f64, m: usize, x: f64) -> Result<f64> {
    check_type(alpha)?;
    // maintain sum_j P_j(x) * (d^j L)(x^2); differentiation maps
    // P_j -> P_j' + 2x P_{j-1}
    let mut parts: Vec<PolyCoeffs> = vec![PolyCoeffs::constant(1.0)];
    let two_x = PolyCoeffs::new(vec![0.0, 2.0]);
    for _ in 0..m {
        let mut next: Vec<PolyCoeffs> = Vec::with_capacity(parts.len() + 1);
        for j in 0..=parts.len() {
            let mut term = PolyCoeffs::zero();
            if j < parts.len() {
                term = term.add(&parts[j].derivative());
            }
            if j > 0 {
                term = term.add(&two_x.mul(&parts[j - 1]));
            }
            next.push(term);
        }
        parts = next;
    }
    let u = x * x;
    let mut total = 0.0;
    for (j, p) in parts.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        total += p.eval(x) * laguerre_normalized_deriv_eval(k, alpha, j, u)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Independent oracle: classical Laguerre coefficients from the explicit
    /// sum L_k^(a)(x) = sum_i (-1)^i binom(k+a, k-i) x^i / i!.
    fn classical_oracle(k: usize, alpha: f64) -> Vec<f64> {
        let mut coeffs = vec![0.0; k + 1];
        for (i, c) in coeffs.iter_mut().enumerate() {
            // binom(k+a, k-i) = Gamma(k+a+1) / (Gamma(k-i+1) Gamma(a+i+1))
            let log_binom = log_gamma_unchecked(k as f64 + alpha + 1.0)
                - log_gamma_unchecked((k - i) as f64 + 1.0)
                - log_gamma_unchecked(alpha + i as f64 + 1.0);
            let log_inv_fact = -log_gamma_unchecked(i as f64 + 1.0);
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            *c = sign * (log_binom + log_inv_fact).exp();
        }
        coeffs
    }

    #[test]
    fn classical_matches_explicit_sum() {
        for &alpha in &[0.0, 0.5, 2.0] {
            for k in 0..=10 {
                let rec = laguerre_classical(k, alpha).unwrap();
                let oracle = classical_oracle(k, alpha);
                for (a, b) in rec.coeffs().iter().zip(oracle.iter()) {
                    assert_relative_eq!(a, b, max_relative = 1e-11, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn degree_zero_is_one() {
        let p = laguerre_normalized(0, 1.5).unwrap();
        assert_eq!(p.coeffs(), &[1.0]);
    }

    #[test]
    fn degree_one_type_zero() {
        let p = laguerre_normalized(1, 0.0).unwrap();
        assert_relative_eq!(p.coeffs()[0], 1.0, max_relative = 1e-14);
        assert_relative_eq!(p.coeffs()[1], -1.0, max_relative = 1e-14);
    }

    #[test]
    fn value_at_zero_closed_form() {
        // L_k^a(0) = sqrt(Gamma(a+k+1)/(Gamma(a+1) k!))
        for &alpha in &[0.0, 0.5, 2.0] {
            for k in 0..=8 {
                let expect = (0.5
                    * (log_gamma_unchecked(alpha + k as f64 + 1.0)
                        - log_gamma_unchecked(alpha + 1.0)
                        - log_gamma_unchecked(k as f64 + 1.0)))
                .exp();
                let p = laguerre_normalized(k, alpha).unwrap();
                assert_relative_eq!(p.eval(0.0), expect, max_relative = 1e-11);
            }
        }
        // frozen instance: k=2, alpha=0 evaluated at 0 equals 1
        assert_relative_eq!(
            laguerre_normalized(2, 0.0).unwrap().eval(0.0),
            1.0,
            max_relative = 1e-13
        );
    }

    #[test]
    fn recurrence_eval_matches_coefficient_eval() {
        for &alpha in &[0.0, 0.5, 2.0] {
            for k in 0..=12 {
                let p = laguerre_normalized(k, alpha).unwrap();
                for &u in &[0.0, 0.3, 1.0, 2.7, 6.0] {
                    assert_relative_eq!(
                        laguerre_normalized_eval(k, alpha, u).unwrap(),
                        p.eval(u),
                        max_relative = 1e-9,
                        epsilon = 1e-10
                    );
                }
            }
        }
    }

    #[test]
    fn rejects_negative_type() {
        assert!(laguerre_normalized(3, -0.2).is_err());
    }

    #[test]
    fn tensor_examples() {
        let a1 = AlphaParam::new(vec![0.0]).unwrap();
        // n=1, k=1, alpha=0, x=2 -> 1 - 4 = -3
        assert_relative_eq!(
            laguerre_tensor(&[1], &a1, &[2.0]).unwrap(),
            -3.0,
            max_relative = 1e-13
        );
        let a2 = AlphaParam::new(vec![0.0, 0.0]).unwrap();
        // k=(1,0), x=(1,5): first factor 1 - 1 = 0 kills the product
        assert_relative_eq!(
            laguerre_tensor(&[1, 0], &a2, &[1.0, 5.0]).unwrap(),
            0.0,
            epsilon = 1e-14
        );
        // k = 0 vector -> 1 at any point
        assert_relative_eq!(
            laguerre_tensor(&[0, 0], &a2, &[0.3, 4.4]).unwrap(),
            1.0,
            max_relative = 1e-14
        );
        assert!(laguerre_tensor(&[0], &a2, &[1.0, 1.0]).is_err());
    }

    #[test]
    fn derivative_recurrence_matches_polynomial_derivative() {
        for &alpha in &[0.0, 0.5, 2.0] {
            for k in 1..=8 {
                let p = laguerre_normalized(k, alpha).unwrap();
                let dp = p.derivative();
                let ddp = dp.derivative();
                for &u in &[0.2, 1.0, 3.5] {
                    assert_relative_eq!(
                        laguerre_normalized_deriv_eval(k, alpha, 1, u).unwrap(),
                        dp.eval(u),
                        max_relative = 1e-9,
                        epsilon = 1e-11
                    );
                    assert_relative_eq!(
                        laguerre_normalized_deriv_eval(k, alpha, 2, u).unwrap(),
                        ddp.eval(u),
                        max_relative = 1e-9,
                        epsilon = 1e-11
                    );
                }
            }
        }
    }

    #[test]
    fn square_variable_derivatives() {
        // d/dx of L_1^0(x^2) = d/dx (1 - x^2) = -2x
        for &x in &[0.4, 1.0, 2.2] {
            assert_relative_eq!(
                laguerre_square_deriv_eval(1, 0.0, 1, x).unwrap(),
                -2.0 * x,
                max_relative = 1e-12
            );
        }
        // cross-check order 1..3 against the composed polynomial route
        for &alpha in &[0.0, 0.5] {
            for k in 1..=6 {
                let composed = laguerre_normalized(k, alpha).unwrap().compose_square();
                let mut d = composed;
                for m in 1..=3usize {
                    d = d.derivative();
                    for &x in &[0.3, 0.9, 1.7] {
                        assert_relative_eq!(
                            laguerre_square_deriv_eval(k, alpha, m, x).unwrap(),
                            d.eval(x),
                            max_relative = 1e-8,
                            epsilon = 1e-9
                        );
                    }
                }
            }
        }
    }
}
