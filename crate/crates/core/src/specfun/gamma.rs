//! Log-Gamma via a Lanczos rational approximation.

use crate::error::{Error, Result};

// Lanczos g = 7, 9-term coefficient set (double precision).
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const LN_SQRT_TWO_PI: f64 = 0.918_938_533_204_672_74;

/// Natural logarithm of the Gamma function for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("log_gamma requires x > 0, got {x}")));
    }
    Ok(log_gamma_unchecked(x))
}

pub(crate) fn log_gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        // reflection keeps the Lanczos sum in its accurate range
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - log_gamma_unchecked(1.0 - x);
    }
    let z = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + 7.5;
    LN_SQRT_TWO_PI + (z + 0.5) * t.ln() - t + acc.ln()
}

/// Gamma function itself; overflows to `inf` past x ~ 171.6.
pub fn gamma(x: f64) -> Result<f64> {
    Ok(log_gamma(x)?.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn integer_factorials() {
        // exact factorial oracle
        let mut fact = 1.0f64;
        for k in 1..=20u64 {
            fact *= k as f64;
            let lg = log_gamma((k + 1) as f64).unwrap();
            assert_relative_eq!(lg, fact.ln(), max_relative = 1e-13);
        }
    }

    #[test]
    fn ln_ten_factorial() {
        assert_relative_eq!(
            log_gamma(11.0).unwrap(),
            3_628_800.0f64.ln(),
            max_relative = 1e-13
        );
    }

    #[test]
    fn half_integer_values() {
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert_relative_eq!(log_gamma(0.5).unwrap(), sqrt_pi.ln(), max_relative = 1e-13);
        assert_relative_eq!(
            log_gamma(1.5).unwrap(),
            (0.5 * sqrt_pi).ln(),
            max_relative = 1e-13
        );
        assert_relative_eq!(
            log_gamma(2.5).unwrap(),
            (0.75 * sqrt_pi).ln(),
            max_relative = 1e-13
        );
    }

    #[test]
    fn gamma_one_is_zero() {
        assert!(log_gamma(1.0).unwrap().abs() < 1e-14);
        assert!(log_gamma(2.0).unwrap().abs() < 1e-14);
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-1.5).is_err());
        assert!(log_gamma(f64::NAN).is_err());
    }

    #[test]
    fn recurrence_property() {
        // Gamma(x+1) = x Gamma(x)
        for &x in &[0.1, 0.7, 1.3, 5.5, 20.25, 80.0] {
            let lhs = log_gamma(x + 1.0).unwrap();
            let rhs = log_gamma(x).unwrap() + x.ln();
            assert_relative_eq!(lhs, rhs, max_relative = 1e-12, epsilon = 1e-13);
        }
    }
}
