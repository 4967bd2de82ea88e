//! Seeded deterministic sample generators for the verification suites.

use laguerre_core::geometry::{region_classify, KernelContext, Region, RegionParams};
use laguerre_core::operators::LaguerreExpansion;
use laguerre_core::specfun::laguerre::AlphaParam;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Points in (lo, hi)^n.
pub fn points(rng: &mut ChaCha8Rng, n: usize, count: usize, lo: f64, hi: f64) -> Vec<Vec<f64>> {
    (0..count)
        .map(|_| (0..n).map(|_| rng.gen_range(lo..hi)).collect())
        .collect()
}

/// Triples (x, y, s) with s strictly inside (-1,1)^n.
pub fn xys_samples(
    rng: &mut ChaCha8Rng,
    n: usize,
    count: usize,
) -> Vec<(Vec<f64>, Vec<f64>, Vec<f64>)> {
    (0..count)
        .map(|_| {
            let x = (0..n).map(|_| rng.gen_range(0.02..5.0)).collect();
            let y = (0..n).map(|_| rng.gen_range(0.02..5.0)).collect();
            let s = (0..n).map(|_| rng.gen_range(-0.999..0.999)).collect();
            (x, y, s)
        })
        .collect()
}

/// Global-region contexts for the maximal analysis.
pub fn global_contexts(
    rng: &mut ChaCha8Rng,
    alpha: &AlphaParam,
    params: &RegionParams,
    count: usize,
) -> Vec<KernelContext> {
    let n = alpha.dim();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..5.0)).collect();
        let y: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..5.0)).collect();
        let s: Vec<f64> = (0..n).map(|_| rng.gen_range(-0.999..0.999)).collect();
        if let Ok(ctx) = KernelContext::new(alpha.clone(), x, y, s) {
            if region_classify(&ctx, params) == Region::Global {
                out.push(ctx);
            }
        }
    }
    out
}

/// Random truncated expansion with coefficients in [-1, 1].
pub fn random_expansion(
    rng: &mut ChaCha8Rng,
    alpha: &AlphaParam,
    max_degree: usize,
) -> LaguerreExpansion {
    assert_eq!(alpha.dim(), 1, "expansion sampling is one-dimensional");
    let terms = (0..=max_degree)
        .map(|k| (vec![k], rng.gen_range(-1.0..1.0)))
        .collect();
    LaguerreExpansion::new(alpha.clone(), terms).expect("dimensions agree")
}

/// Off-diagonal pairs for kernel condition checks, one-dimensional.
pub fn cz_pairs(rng: &mut ChaCha8Rng, count: usize) -> Vec<(Vec<f64>, Vec<f64>)> {
    (0..count)
        .map(|_| {
            let x: f64 = rng.gen_range(0.05..4.0);
            // mix of near and far partners
            let y = if rng.gen_bool(0.5) {
                (x * rng.gen_range(0.7..1.3) + 0.01f64).max(0.02)
            } else {
                rng.gen_range(0.05..4.0)
            };
            (vec![x], vec![if (y - x).abs() < 1e-3 { y + 0.05 } else { y }])
        })
        .collect()
}

/// Triples (x, z, y) with |x - z| <= |x - y| / 2 for regularity checks.
pub fn cz_triples(rng: &mut ChaCha8Rng, count: usize) -> Vec<(Vec<f64>, Vec<f64>, Vec<f64>)> {
    (0..count)
        .map(|_| {
            let x: f64 = rng.gen_range(0.1..4.0);
            let d: f64 = rng.gen_range(0.05..2.0);
            let y = (x + d).min(5.0);
            let z = x + rng.gen_range(-0.5..0.5) * 0.5 * (y - x);
            (vec![x], vec![z.max(0.02)], vec![y])
        })
        .collect()
}
