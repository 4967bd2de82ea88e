//! Covering ball system with radii 1/(2(1+|center|)) on a bounded box,
//! greedy construction plus numerical verification of covering, bounded
//! overlap and measure comparability on each ball.

use crate::error::{Error, Result};
use crate::geometry::measure::{malpha_box, mu_box};
use crate::specfun::laguerre::AlphaParam;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct BallSystem {
    pub centers: Vec<Vec<f64>>,
    pub radii: Vec<f64>,
    pub overlap_factor: f64,
    /// Largest multiplicity of the dilated family over the probe grid.
    pub max_overlap: usize,
    /// Fraction of probe points left uncovered (0 means covered).
    pub cover_gap: f64,
    /// Measured two-sided comparability constant between mu_alpha and
    /// e^{-|center|^2} m_alpha on random sub-boxes of each ball.
    pub comparability: f64,
}

fn radius_of(center: &[f64]) -> f64 {
    let norm = center.iter().map(|c| c * c).sum::<f64>().sqrt();
    0.5 / (1.0 + norm)
}

fn contains(center: &[f64], radius: f64, p: &[f64]) -> bool {
    center
        .iter()
        .zip(p)
        .map(|(c, x)| (c - x) * (c - x))
        .sum::<f64>()
        <= radius * radius
}

/// Cover the box (0, bound]^n greedily on a fine lattice: walk the lattice in
/// lexicographic order and open a ball at every point not yet covered.
pub fn build_ball_system(
    alpha: &AlphaParam,
    bound: f64,
    delta: f64,
    seed: u64,
) -> Result<BallSystem> {
    if !(bound > 0.0) {
        return Err(Error::Domain("bound must be positive".into()));
    }
    if !(delta > 1.0) {
        return Err(Error::Domain("overlap factor delta must exceed 1".into()));
    }
    let n = alpha.dim();
    // lattice fine enough that the smallest radius in the box spans
    // several cells
    let min_radius = 0.5 / (1.0 + bound * (n as f64).sqrt());
    let step = min_radius / 3.0;
    let cells = ((bound / step).ceil() as usize).max(2);
    let mut centers: Vec<Vec<f64>> = Vec::new();
    let mut radii: Vec<f64> = Vec::new();

    let mut idx = vec![0usize; n];
    loop {
        let p: Vec<f64> = idx
            .iter()
            .map(|&i| step * 0.5 + i as f64 * step)
            .collect();
        if p.iter().all(|&c| c <= bound) {
            let covered = centers
                .iter()
                .zip(&radii)
                .any(|(c, &r)| contains(c, r, &p));
            if !covered {
                radii.push(radius_of(&p));
                centers.push(p);
            }
        }
        // advance the lexicographic counter
        let mut k = n;
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < cells {
                break;
            }
            idx[k] = 0;
            if k == 0 {
                k = usize::MAX;
                break;
            }
        }
        if k == usize::MAX {
            break;
        }
    }

    // verify cover and overlap on a shifted probe grid
    let probe_cells = (cells + 7).min(220);
    let pstep = bound / probe_cells as f64;
    let mut uncovered = 0usize;
    let mut probes = 0usize;
    let mut max_overlap = 0usize;
    let mut pidx = vec![0usize; n];
    loop {
        let p: Vec<f64> = pidx
            .iter()
            .map(|&i| pstep * 0.37 + i as f64 * pstep)
            .collect();
        if p.iter().all(|&c| c <= bound && c > 0.0) {
            probes += 1;
            let mut mult = 0usize;
            let mut hit = false;
            for (c, &r) in centers.iter().zip(&radii) {
                if contains(c, r, &p) {
                    hit = true;
                }
                if contains(c, delta * r, &p) {
                    mult += 1;
                }
            }
            if !hit {
                uncovered += 1;
            }
            max_overlap = max_overlap.max(mult);
        }
        let mut k = n;
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            pidx[k] += 1;
            if pidx[k] < probe_cells {
                break;
            }
            pidx[k] = 0;
            if k == 0 {
                k = usize::MAX;
                break;
            }
        }
        if k == usize::MAX {
            break;
        }
    }
    let cover_gap = uncovered as f64 / probes.max(1) as f64;
    if cover_gap > 0.0 {
        return Err(Error::Construction(format!(
            "ball system leaves {uncovered} of {probes} probe points uncovered"
        )));
    }

    // measure comparability on random sub-boxes of sampled balls
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut comparability = 1.0f64;
    let sample_stride = (centers.len() / 40).max(1);
    for bi in (0..centers.len()).step_by(sample_stride) {
        let c = &centers[bi];
        let r = radii[bi];
        let e_center = (-c.iter().map(|v| v * v).sum::<f64>()).exp();
        for _ in 0..4 {
            let mut lo = Vec::with_capacity(n);
            let mut hi = Vec::with_capacity(n);
            // random box inside the inscribed cube of the ball
            let h = r / (n as f64).sqrt();
            for &ci in c {
                let a = rng.gen_range(-h..h * 0.5);
                let b = rng.gen_range(a + 1e-3 * h..h);
                lo.push((ci + a).max(0.0));
                hi.push(ci + b);
            }
            let m_mass = malpha_box(alpha, &lo, &hi)?;
            if m_mass <= 0.0 {
                continue;
            }
            let mu_mass = mu_box(alpha, &lo, &hi)?;
            let ratio = mu_mass / (e_center * m_mass);
            comparability = comparability.max(ratio.max(1.0 / ratio));
        }
    }

    Ok(BallSystem {
        centers,
        radii,
        overlap_factor: delta,
        max_overlap,
        cover_gap,
        comparability,
    })
}
