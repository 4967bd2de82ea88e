//! Polynomial structure of the z-derivative of the angular heat integrand.
//!
//! For each fixed (x, y, s) the quantity
//!   (d/dz log integrand) * (1 - e^{-z})^2
//! is a polynomial of degree at most 4 in w = e^{-z/2}; its sign changes on
//! (0, 1) therefore number at most 4, which is what bounds the total
//! variation of the integrand by its supremum.

use crate::error::{Error, Result};
use crate::semigroup::heat::s_integrand_log_dz;
use crate::specfun::laguerre::AlphaParam;
use nalgebra::{DMatrix, DVector};

#[derive(Debug, Clone)]
pub struct DerivativeFactorFit {
    /// Least-squares coefficients of the degree-4 fit in w = e^{-z/2},
    /// constant term first.
    pub coeffs: [f64; 5],
    /// Largest absolute fit residual across the z-samples.
    pub residual: f64,
    /// Sign changes of the factor over a dense w-grid in (0, 1).
    pub sign_changes: usize,
}

/// Fit the derivative factor on the given z-samples and count its sign
/// changes. The samples must cover at least 5 distinct points.
pub fn derivative_factor_fit(
    alpha: &AlphaParam,
    x: &[f64],
    y: &[f64],
    s: &[f64],
    z_samples: &[f64],
) -> Result<DerivativeFactorFit> {
    if z_samples.len() < 5 {
        return Err(Error::Domain("need at least 5 z-samples for a degree-4 fit".into()));
    }
    let factor = |z: f64| -> f64 {
        let omu = -(-z).exp_m1();
        s_integrand_log_dz(alpha, x, y, s, z) * omu * omu
    };
    let m = z_samples.len();
    let mut design = DMatrix::<f64>::zeros(m, 5);
    let mut rhs = DVector::<f64>::zeros(m);
    for (r, &z) in z_samples.iter().enumerate() {
        let w = (-0.5 * z).exp();
        let mut pw = 1.0;
        for cidx in 0..5 {
            design[(r, cidx)] = pw;
            pw *= w;
        }
        rhs[r] = factor(z);
    }
    let normal = design.transpose() * &design;
    let sol = normal
        .lu()
        .solve(&(design.transpose() * &rhs))
        .ok_or_else(|| Error::Construction("normal equations are singular".into()))?;
    let mut coeffs = [0.0; 5];
    for i in 0..5 {
        coeffs[i] = sol[i];
    }
    let mut residual: f64 = 0.0;
    for &z in z_samples {
        let w = (-0.5 * z).exp();
        let fit = coeffs
            .iter()
            .rev()
            .fold(0.0, |acc: f64, &c| acc * w + c);
        residual = residual.max((fit - factor(z)).abs());
    }
    // sign changes over a dense grid of w in (0, 1); ignore near-zero values
    let poly = |w: f64| coeffs.iter().rev().fold(0.0, |acc: f64, &c| acc * w + c);
    let scale = (0..=1000)
        .map(|i| poly(i as f64 / 1000.0).abs())
        .fold(0.0, f64::max)
        .max(1e-300);
    let mut sign_changes = 0;
    let mut last_sign = 0i8;
    for i in 1..1000 {
        let v = poly(i as f64 / 1000.0);
        if v.abs() < 1e-12 * scale {
            continue;
        }
        let s = if v > 0.0 { 1i8 } else { -1i8 };
        if last_sign != 0 && s != last_sign {
            sign_changes += 1;
        }
        last_sign = s;
    }
    Ok(DerivativeFactorFit {
        coeffs,
        residual,
        sign_changes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};

    fn z_samples() -> Vec<f64> {
        (0..60).map(|i| 0.05 + 0.12 * i as f64).collect()
    }

    /// Closed-form oracle for the factor polynomial, derived by expanding the
    /// logarithmic derivative by hand:
    /// N(w) = (n+ah) w^4 - (B/2) w^3 + (A + C - (n+ah)) w^2 - (B/2) w.
    fn oracle_coeffs(alpha: &AlphaParam, x: &[f64], y: &[f64], s: &[f64]) -> [f64; 5] {
        let nah = alpha.dim() as f64 + alpha.alpha_hat();
        let a: f64 = x.iter().map(|v| v * v).sum();
        let c: f64 = y.iter().map(|v| v * v).sum();
        let b: f64 = x.iter().zip(y).zip(s).map(|((xi, yi), si)| 2.0 * xi * yi * si).sum();
        [0.0, -b / 2.0, a + c - nah, -b / 2.0, nah]
    }

    #[test]
    fn fit_matches_closed_form() {
        let alpha = AlphaParam::new(vec![0.5]).unwrap();
        let (x, y, s) = ([1.3], [0.7], [0.4]);
        let fit = derivative_factor_fit(&alpha, &x, &y, &s, &z_samples()).unwrap();
        let want = oracle_coeffs(&alpha, &x, &y, &s);
        assert!(fit.residual <= 1e-8, "residual {}", fit.residual);
        for (got, want) in fit.coeffs.iter().zip(want.iter()) {
            assert_relative_eq!(got, want, max_relative = 1e-6, epsilon = 1e-8);
        }
        assert!(fit.sign_changes <= 4);
    }

    #[test]
    fn seeded_probe_battery() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(101);
        let alpha = AlphaParam::new(vec![0.0]).unwrap();
        let zs = z_samples();
        for _ in 0..50 {
            let x = [rng.gen_range(0.05..4.0)];
            let y = [rng.gen_range(0.05..4.0)];
            let s = [rng.gen_range(-0.99..0.99)];
            let fit = derivative_factor_fit(&alpha, &x, &y, &s, &zs).unwrap();
            assert!(fit.residual <= 1e-8, "residual {}", fit.residual);
            assert!(fit.sign_changes <= 4, "{} sign changes", fit.sign_changes);
        }
    }

    #[test]
    fn dz_matches_finite_difference() {
        let alpha = AlphaParam::new(vec![1.0]).unwrap();
        let (x, y, s) = ([0.9], [1.4], [-0.3]);
        for &z in &[0.4, 1.0, 3.0] {
            let analytic = s_integrand_log_dz(&alpha, &x, &y, &s, z);
            let h = 1e-6;
            let lf = |z: f64| {
                let w = (-0.5f64 * z).exp();
                let omw2 = 1.0 - w * w;
                let qm = w * w * x[0] * x[0] + y[0] * y[0] - 2.0 * w * x[0] * y[0] * s[0];
                -qm / omw2 - 2.0 * omw2.ln()
            };
            let fd = (lf(z + h) - lf(z - h)) / (2.0 * h);
            assert_relative_eq!(analytic, fd, max_relative = 1e-6, epsilon = 1e-8);
        }
    }
}
