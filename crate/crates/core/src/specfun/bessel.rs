//! Modified Bessel function of the first kind, exponentially scaled.
//!
//! Every kernel in this crate multiplies I_nu by a decaying exponential, so
//! only the scaled form e^{-z} I_nu(z) is exposed. The ascending series has
//! all-positive terms; evaluated around its largest term in the log domain it
//! is accurate and overflow-free across the whole tested range.

use crate::error::{Error, Result};
use crate::specfun::gamma::log_gamma_unchecked;

fn check_order(nu: f64) -> Result<()> {
    if !(nu > -1.0) || !nu.is_finite() {
        return Err(Error::Domain(format!(
            "Bessel order must be finite and > -1, got {nu}"
        )));
    }
    Ok(())
}

/// log of the normalized function Gamma(nu+1) (z/2)^{-nu} I_nu(z), which
/// equals 1 at z = 0. Stable for all z >= 0 in the supported order range.
pub fn log_bessel_i_normalized(nu: f64, z: f64) -> Result<f64> {
    check_order(nu)?;
    if !(z >= 0.0) || !z.is_finite() {
        return Err(Error::Domain(format!("Bessel argument must be >= 0, got {z}")));
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    let q = 0.25 * z * z;
    if z <= 15.0 {
        // direct sum: terms are positive and bounded, no scaling needed
        let mut term = 1.0f64;
        let mut sum = 1.0f64;
        let mut k = 0.0f64;
        while term > sum * 1e-18 {
            term *= q / ((k + 1.0) * (nu + k + 1.0));
            sum += term;
            k += 1.0;
        }
        return Ok(sum.ln());
    }
    // large z: sum ratios around the largest term to avoid overflow
    let log_term = |k: f64| -> f64 {
        k * q.ln() - log_gamma_unchecked(k + 1.0) - log_gamma_unchecked(nu + k + 1.0)
            + log_gamma_unchecked(nu + 1.0)
    };
    let k_star = (0.5 * (-nu + (nu * nu + z * z).sqrt())).floor().max(0.0);
    let mut sum = 1.0f64; // relative to the k_star term
    let mut term = 1.0f64;
    let mut k = k_star;
    loop {
        let ratio = q / ((k + 1.0) * (nu + k + 1.0));
        term *= ratio;
        sum += term;
        k += 1.0;
        if term < 1e-18 * sum {
            break;
        }
    }
    term = 1.0;
    k = k_star;
    while k > 0.0 {
        let ratio = (k * (nu + k)) / q;
        term *= ratio;
        sum += term;
        k -= 1.0;
        if term < 1e-18 * sum {
            break;
        }
    }
    Ok(log_term(k_star) + sum.ln())
}

/// e^{-z} I_nu(z) for nu > -1 and z >= 0.
pub fn bessel_i_scaled(nu: f64, z: f64) -> Result<f64> {
    check_order(nu)?;
    if !(z >= 0.0) || !z.is_finite() {
        return Err(Error::Domain(format!("Bessel argument must be >= 0, got {z}")));
    }
    if z == 0.0 {
        return Ok(if nu == 0.0 {
            1.0
        } else if nu > 0.0 {
            0.0
        } else {
            f64::INFINITY
        });
    }
    let log_norm = log_bessel_i_normalized(nu, z)?;
    Ok((log_norm - log_gamma_unchecked(nu + 1.0) + nu * (0.5 * z).ln() - z).exp())
}

/// Ratio I_{nu+1}(z) / I_nu(z), computed from the normalized logs so that it
/// stays accurate down to z -> 0 where it behaves like z / (2 nu + 2).
pub fn bessel_i_ratio_up(nu: f64, z: f64) -> Result<f64> {
    let a = log_bessel_i_normalized(nu, z)?;
    let b = log_bessel_i_normalized(nu + 1.0, z)?;
    Ok((b - a).exp() * 0.5 * z / (nu + 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn values_at_zero() {
        assert_eq!(bessel_i_scaled(0.0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_i_scaled(2.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn half_order_closed_form() {
        // I_{1/2}(z) = sqrt(2/(pi z)) sinh z
        for &z in &[0.2, 1.0, 3.0, 10.0, 40.0, 200.0] {
            let exact = (2.0 / (std::f64::consts::PI * z)).sqrt()
                * if z < 20.0 {
                    (-z as f64).exp() * z.sinh()
                } else {
                    0.5 * (1.0 - (-2.0 * z).exp())
                };
            assert_relative_eq!(
                bessel_i_scaled(0.5, z).unwrap(),
                exact,
                max_relative = 1e-12
            );
        }
        assert_relative_eq!(
            bessel_i_scaled(0.5, 1.0).unwrap(),
            0.3449513138882451,
            max_relative = 1e-10
        );
    }

    #[test]
    fn three_halves_closed_form() {
        // I_{3/2}(z) = sqrt(2/(pi z)) (cosh z - sinh z / z)
        for &z in &[0.5, 2.0, 8.0, 30.0] {
            let sc = (2.0 / (std::f64::consts::PI * z)).sqrt();
            let exact = sc * (-z as f64).exp() * (z.cosh() - z.sinh() / z);
            assert_relative_eq!(
                bessel_i_scaled(1.5, z).unwrap(),
                exact,
                max_relative = 1e-11
            );
        }
    }

    #[test]
    fn recurrence_across_range() {
        // I_{nu-1}(z) - I_{nu+1}(z) = (2 nu / z) I_nu(z)
        for &nu in &[0.7, 1.0, 2.5, 5.0, 9.0] {
            for &z in &[0.3, 1.0, 7.0, 15.0, 16.0, 80.0, 400.0] {
                let a = bessel_i_scaled(nu - 1.0, z).unwrap();
                let b = bessel_i_scaled(nu + 1.0, z).unwrap();
                let c = bessel_i_scaled(nu, z).unwrap();
                assert_relative_eq!(a - b, 2.0 * nu / z * c, max_relative = 1e-8, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn matches_reference_values() {
        // reference: e^{-z} I_0(z) and e^{-z} I_1(z) at z = 1
        // I_0(1) = 1.2660658777520084, I_1(1) = 0.5651591039924851
        let e = (-1.0f64).exp();
        assert_relative_eq!(
            bessel_i_scaled(0.0, 1.0).unwrap(),
            1.2660658777520084 * e,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            bessel_i_scaled(1.0, 1.0).unwrap(),
            0.5651591039924851 * e,
            max_relative = 1e-12
        );
    }

    #[test]
    fn rejects_bad_domain() {
        assert!(bessel_i_scaled(-1.0, 1.0).is_err());
        assert!(bessel_i_scaled(-1.5, 1.0).is_err());
        assert!(bessel_i_scaled(0.0, -0.1).is_err());
    }

    #[test]
    fn ratio_small_argument_limit() {
        let r = bessel_i_ratio_up(2.0, 1e-8).unwrap();
        assert_relative_eq!(r, 1e-8 / 6.0, max_relative = 1e-8);
    }

    #[test]
    fn no_overflow_far_out() {
        let v = bessel_i_scaled(10.0, 500.0).unwrap();
        assert!(v.is_finite() && v > 0.0);
        // asymptotically ~ 1/sqrt(2 pi z)
        assert_relative_eq!(
            v,
            1.0 / (2.0 * std::f64::consts::PI * 500.0).sqrt(),
            max_relative = 0.2
        );
    }
}
