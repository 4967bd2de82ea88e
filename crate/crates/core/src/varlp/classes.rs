//! Exponent-class diagnostics (local log-Holder, decay log-Holder, and the
//! quadratic-decay class) plus the radial lifting to higher dimension.

use crate::error::{Error, Result};
use crate::varlp::exponent::ExponentField;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExponentClass {
    /// |p(x) - p(y)| <= C / (-log |x-y|) for 0 < |x-y| < 1/2.
    Lh0,
    /// |p(x) - p_inf| <= C / log(e + |x|).
    LhInfty,
    /// |p(x) - p_inf| <= C / |x|^2.
    PeInfty,
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn dist(x: &[f64], y: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

/// Empirical class constant over the supplied probes. Pair probes are used
/// for Lh0 (pairs with 0 < |x-y| < 1/2); singleton probes for the decay
/// classes. The flag reports whether the sup stayed finite.
pub fn class_constants(
    p: &ExponentField,
    which: ExponentClass,
    point_probes: &[Vec<f64>],
    pair_probes: &[(Vec<f64>, Vec<f64>)],
) -> (f64, bool) {
    let mut sup: f64 = 0.0;
    match which {
        ExponentClass::Lh0 => {
            for (x, y) in pair_probes {
                let d = dist(x, y);
                if d <= 0.0 || d >= 0.5 {
                    continue;
                }
                sup = sup.max((p.eval(x) - p.eval(y)).abs() * (-d.ln()));
            }
        }
        ExponentClass::LhInfty => {
            for x in point_probes {
                let r = norm(x);
                sup = sup.max((p.eval(x) - p.p_infty).abs() * (std::f64::consts::E + r).ln());
            }
        }
        ExponentClass::PeInfty => {
            for x in point_probes {
                let r = norm(x);
                if r == 0.0 {
                    continue;
                }
                sup = sup.max((p.eval(x) - p.p_infty).abs() * r * r);
            }
        }
    }
    (sup, sup.is_finite())
}

/// Radial lift of the exponent to R^{k_hat}: each block of k_i coordinates
/// collapses through its Euclidean norm. Preserves p- and p+ exactly.
#[derive(Debug, Clone)]
pub struct LiftedExponent {
    pub base: ExponentField,
    pub block_dims: Vec<usize>,
}

impl LiftedExponent {
    pub fn new(base: ExponentField, block_dims: Vec<usize>) -> Result<Self> {
        if block_dims.is_empty() || block_dims.iter().any(|&k| k == 0) {
            return Err(Error::Dimension("block dimensions must all be >= 1".into()));
        }
        Ok(Self { base, block_dims })
    }

    pub fn total_dim(&self) -> usize {
        self.block_dims.iter().sum()
    }

    pub fn eval(&self, x_bar: &[f64]) -> Result<f64> {
        if x_bar.len() != self.total_dim() {
            return Err(Error::Dimension(format!(
                "lifted point has dimension {}, expected {}",
                x_bar.len(),
                self.total_dim()
            )));
        }
        let mut folded = Vec::with_capacity(self.block_dims.len());
        let mut offset = 0;
        for &k in &self.block_dims {
            folded.push(norm(&x_bar[offset..offset + k]));
            offset += k;
        }
        Ok(self.base.eval(&folded))
    }

    pub fn p_minus(&self) -> f64 {
        self.base.p_minus
    }

    pub fn p_plus(&self) -> f64 {
        self.base.p_plus
    }

    pub fn p_infty(&self) -> f64 {
        self.base.p_infty
    }
}

/// Probe-based comparison of class constants before and after lifting; the
/// lifted constants must not exceed the base ones (up to float slack).
#[derive(Debug, Clone, Copy)]
pub struct LiftReport {
    pub base_lh0: f64,
    pub lifted_lh0: f64,
    pub base_lh_infty: f64,
    pub lifted_lh_infty: f64,
    pub p_bounds_preserved: bool,
}

pub fn lift_exponent_radial(
    p: &ExponentField,
    block_dims: &[usize],
    point_probes: &[Vec<f64>],
    pair_probes: &[(Vec<f64>, Vec<f64>)],
) -> Result<(LiftedExponent, LiftReport)> {
    let lifted = LiftedExponent::new(p.clone(), block_dims.to_vec())?;
    let n = p_dim_of_probes(point_probes, pair_probes)?;
    if n != block_dims.len() {
        return Err(Error::Dimension(format!(
            "probes have dimension {n} but {} blocks were given",
            block_dims.len()
        )));
    }

    let (base_lh0, _) = class_constants(p, ExponentClass::Lh0, point_probes, pair_probes);
    let (base_lh_infty, _) = class_constants(p, ExponentClass::LhInfty, point_probes, pair_probes);

    // embed each base probe radially: x_i -> (x_i, 0, ..., 0) in R^{k_i};
    // by construction the lifted field takes the same values there, and
    // rotating the probes cannot increase the constants
    let embed = |x: &Vec<f64>| -> Vec<f64> {
        let mut out = Vec::with_capacity(lifted.total_dim());
        for (i, &k) in block_dims.iter().enumerate() {
            out.push(x[i]);
            out.extend(std::iter::repeat(0.0).take(k - 1));
        }
        out
    };
    let mut lifted_lh0: f64 = 0.0;
    for (x, y) in pair_probes {
        let (xb, yb) = (embed(x), embed(y));
        let d = dist(&xb, &yb);
        if d <= 0.0 || d >= 0.5 {
            continue;
        }
        lifted_lh0 = lifted_lh0.max((lifted.eval(&xb)? - lifted.eval(&yb)?).abs() * (-d.ln()));
    }
    let mut lifted_lh_infty: f64 = 0.0;
    for x in point_probes {
        let xb = embed(x);
        let r = norm(&xb);
        lifted_lh_infty = lifted_lh_infty
            .max((lifted.eval(&xb)? - lifted.p_infty()).abs() * (std::f64::consts::E + r).ln());
    }

    let report = LiftReport {
        base_lh0,
        lifted_lh0,
        base_lh_infty,
        lifted_lh_infty,
        p_bounds_preserved: lifted.p_minus() == p.p_minus && lifted.p_plus() == p.p_plus,
    };
    Ok((lifted, report))
}

fn p_dim_of_probes(
    point_probes: &[Vec<f64>],
    pair_probes: &[(Vec<f64>, Vec<f64>)],
) -> Result<usize> {
    if let Some(x) = point_probes.first() {
        return Ok(x.len());
    }
    if let Some((x, _)) = pair_probes.first() {
        return Ok(x.len());
    }
    Err(Error::Dimension("no probes supplied".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn probes_1d(seed: u64) -> (Vec<Vec<f64>>, Vec<(Vec<f64>, Vec<f64>)>) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let points: Vec<Vec<f64>> = (0..400).map(|_| vec![rng.gen_range(0.01..40.0)]).collect();
        let pairs = (0..400)
            .map(|_| {
                let x: f64 = rng.gen_range(0.01..5.0);
                let d: f64 = rng.gen_range(1e-4..0.49);
                (vec![x], vec![x + d])
            })
            .collect();
        (points, pairs)
    }

    #[test]
    fn constant_exponent_all_constants_zero() {
        let p = ExponentField::constant(2.0).unwrap();
        let (points, pairs) = probes_1d(3);
        for which in [ExponentClass::Lh0, ExponentClass::LhInfty, ExponentClass::PeInfty] {
            let (c, finite) = class_constants(&p, which, &points, &pairs);
            assert_eq!(c, 0.0);
            assert!(finite);
        }
    }

    #[test]
    fn decay_power_family_class_membership() {
        // p(x) = p_inf + A/(e+|x|)^q with q >= 2 lies in the quadratic-decay
        // class, which is contained in the decay log-Holder class
        let p = ExponentField::decay_power(2.0, 1.0, 2.0).unwrap();
        let (points, pairs) = probes_1d(5);
        let (pe, pe_ok) = class_constants(&p, ExponentClass::PeInfty, &points, &pairs);
        let (lh, lh_ok) = class_constants(&p, ExponentClass::LhInfty, &points, &pairs);
        let (lh0, lh0_ok) = class_constants(&p, ExponentClass::Lh0, &points, &pairs);
        assert!(pe_ok && pe > 0.0 && pe <= 1.0 + 1e-9, "quadratic constant {pe}");
        assert!(lh_ok && lh.is_finite());
        assert!(lh0_ok && lh0.is_finite());
    }

    #[test]
    fn lift_preserves_bounds_and_constants() {
        let p = ExponentField::decay_power(2.0, 1.0, 2.0).unwrap();
        let (points, pairs) = probes_1d(9);
        let (lifted, report) = lift_exponent_radial(&p, &[2], &points, &pairs).unwrap();
        assert!(report.p_bounds_preserved);
        assert_eq!(lifted.p_minus(), p.p_minus);
        assert_eq!(lifted.p_plus(), p.p_plus);
        // on radially embedded probes the constants agree
        assert!((report.lifted_lh_infty - report.base_lh_infty).abs() <= 1e-12);
        assert!(report.lifted_lh0 <= report.base_lh0 + 1e-12);
    }

    #[test]
    fn lift_of_constant_is_constant() {
        let p = ExponentField::constant(3.0).unwrap();
        let lifted = LiftedExponent::new(p, vec![3]).unwrap();
        assert_eq!(lifted.eval(&[1.0, 2.0, 2.0]).unwrap(), 3.0);
    }

    #[test]
    fn lifted_eval_folds_block_norms() {
        let p = ExponentField::decay_power(2.0, 1.0, 2.0).unwrap();
        let lifted = LiftedExponent::new(p.clone(), vec![2]).unwrap();
        let v = lifted.eval(&[3.0, 4.0]).unwrap();
        assert_eq!(v, p.eval(&[5.0]));
    }
}
