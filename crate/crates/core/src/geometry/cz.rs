//! Empirical Calderon-Zygmund size and regularity checks against the
//! polynomial measure of balls.

use crate::error::Result;
use crate::geometry::measure::malpha_ball;
use crate::specfun::laguerre::AlphaParam;
use rayon::prelude::*;

/// Outcome of a kernel-condition sweep; the constant is the empirical sup.
#[derive(Debug, Clone)]
pub struct CzReport {
    pub check_name: String,
    pub samples_used: usize,
    pub samples_skipped: usize,
    pub constant: f64,
}

fn dist(x: &[f64], y: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

/// Size condition: sup over samples of ||K(x,y)|| m_alpha(B(x, |x-y|)).
pub fn cz_size_check<K>(
    kernel: K,
    alpha: &AlphaParam,
    samples: &[(Vec<f64>, Vec<f64>)],
) -> Result<CzReport>
where
    K: Fn(&[f64], &[f64]) -> f64 + Sync,
{
    let terms: Vec<Option<f64>> = samples
        .par_iter()
        .map(|(x, y)| {
            let d = dist(x, y);
            if d == 0.0 {
                return None;
            }
            let ball = malpha_ball(alpha, x, d).ok()?;
            Some(kernel(x, y).abs() * ball.exact)
        })
        .collect();
    let mut constant: f64 = 0.0;
    let mut used = 0;
    for t in terms.iter().flatten() {
        constant = constant.max(*t);
        used += 1;
    }
    Ok(CzReport {
        check_name: "cz_size".into(),
        samples_used: used,
        samples_skipped: samples.len() - used,
        constant,
    })
}

/// Regularity condition on triples (x, z, y) with |x - z| <= |x - y| / 2:
/// sup of ||K(x,y) - K(z,y)|| |x-y| m_alpha(B(x,|x-y|)) / |x-z|.
pub fn cz_regularity_check<K>(
    kernel: K,
    alpha: &AlphaParam,
    triples: &[(Vec<f64>, Vec<f64>, Vec<f64>)],
) -> Result<CzReport>
where
    K: Fn(&[f64], &[f64]) -> f64 + Sync,
{
    let terms: Vec<Option<f64>> = triples
        .par_iter()
        .map(|(x, z, y)| {
            let dxy = dist(x, y);
            let dxz = dist(x, z);
            if dxy == 0.0 || dxz == 0.0 || dxz > 0.5 * dxy {
                return None;
            }
            let ball = malpha_ball(alpha, x, dxy).ok()?;
            let diff = (kernel(x, y) - kernel(z, y)).abs();
            Some(diff * dxy * ball.exact / dxz)
        })
        .collect();
    let mut constant: f64 = 0.0;
    let mut used = 0;
    for t in terms.iter().flatten() {
        constant = constant.max(*t);
        used += 1;
    }
    Ok(CzReport {
        check_name: "cz_regularity".into(),
        samples_used: used,
        samples_skipped: triples.len() - used,
        constant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn pair_samples() -> Vec<(Vec<f64>, Vec<f64>)> {
        let mut out = Vec::new();
        for i in 1..=8 {
            for j in 1..=8 {
                let x = 0.3 * i as f64;
                let y = 0.3 * j as f64 + 0.05;
                if (x - y).abs() > 1e-6 {
                    out.push((vec![x], vec![y]));
                }
            }
        }
        out
    }

    #[test]
    fn definitional_kernel_has_constant_one() {
        let alpha = AlphaParam::new(vec![0.0]).unwrap();
        let a2 = alpha.clone();
        let kernel = move |x: &[f64], y: &[f64]| {
            let d = dist(x, y);
            1.0 / malpha_ball(&a2, x, d).unwrap().exact
        };
        let report = cz_size_check(kernel, &alpha, &pair_samples()).unwrap();
        assert_relative_eq!(report.constant, 1.0, max_relative = 1e-6);
    }

    #[test]
    fn zero_kernel_has_constant_zero() {
        let alpha = AlphaParam::new(vec![0.0]).unwrap();
        let report = cz_size_check(|_, _| 0.0, &alpha, &pair_samples()).unwrap();
        assert_eq!(report.constant, 0.0);
    }

    #[test]
    fn constant_kernel_regularity_zero() {
        let alpha = AlphaParam::new(vec![0.0]).unwrap();
        let triples = vec![
            (vec![1.0], vec![1.05], vec![2.0]),
            (vec![0.5], vec![0.52], vec![1.5]),
        ];
        let report = cz_regularity_check(|_, _| 3.5, &alpha, &triples).unwrap();
        assert_eq!(report.constant, 0.0);
        assert_eq!(report.samples_used, 2);
    }

    #[test]
    fn degenerate_triples_skipped() {
        let alpha = AlphaParam::new(vec![0.0]).unwrap();
        // |x - z| > |x - y| / 2 must be filtered out
        let triples = vec![(vec![1.0], vec![1.9], vec![2.0])];
        let report = cz_regularity_check(|_, _| 1.0, &alpha, &triples).unwrap();
        assert_eq!(report.samples_used, 0);
        assert_eq!(report.samples_skipped, 1);
    }
}
