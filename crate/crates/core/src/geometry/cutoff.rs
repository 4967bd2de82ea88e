//! The explicit smooth cutoff separating local from global kernel regions.
//!
//! phi(x, y, s) = psi( q-(x,y,s) (1 + |x| + |y|)^2 / c0^2 ) where psi is the
//! C-infinity bump equal to 1 on [0,1] and 0 on [4,inf), glued with the
//! standard exp(-1/t) transition. Gradients are analytic.

use super::KernelContext;

fn bump(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        (-1.0 / t).exp()
    }
}

fn bump_deriv(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        (-1.0 / t).exp() / (t * t)
    }
}

/// psi: 1 on (-inf, 1], 0 on [4, inf), smooth in between.
pub fn smooth_step(w: f64) -> f64 {
    if w <= 1.0 {
        return 1.0;
    }
    if w >= 4.0 {
        return 0.0;
    }
    let up = bump((4.0 - w) / 3.0);
    let down = bump((w - 1.0) / 3.0);
    up / (up + down)
}

/// d psi / d w.
pub fn smooth_step_deriv(w: f64) -> f64 {
    if w <= 1.0 || w >= 4.0 {
        return 0.0;
    }
    let up = bump((4.0 - w) / 3.0);
    let down = bump((w - 1.0) / 3.0);
    let dup = -bump_deriv((4.0 - w) / 3.0) / 3.0;
    let ddown = bump_deriv((w - 1.0) / 3.0) / 3.0;
    (dup * (up + down) - up * (dup + ddown)) / ((up + down) * (up + down))
}

/// Cutoff value only, for inner kernel loops.
pub fn phi_value(x: &[f64], y: &[f64], s: &[f64], c0: f64) -> f64 {
    let mut q_minus = 0.0;
    let mut nx2 = 0.0;
    let mut ny2 = 0.0;
    for i in 0..x.len() {
        q_minus += x[i] * x[i] + y[i] * y[i] - 2.0 * x[i] * y[i] * s[i];
        nx2 += x[i] * x[i];
        ny2 += y[i] * y[i];
    }
    let g = 1.0 + nx2.sqrt() + ny2.sqrt();
    smooth_step(q_minus.max(0.0) * g * g / (c0 * c0))
}

/// Cutoff value with analytic gradients in x and y.
pub fn cutoff_phi(ctx: &KernelContext, c0: f64) -> (f64, Vec<f64>, Vec<f64>) {
    let n = ctx.x.len();
    let nx = ctx.norm_x();
    let ny = ctx.norm_y();
    let g = 1.0 + nx + ny;
    let w = ctx.q_minus * g * g / (c0 * c0);
    let value = smooth_step(w);
    let dpsi = smooth_step_deriv(w);
    let mut grad_x = vec![0.0; n];
    let mut grad_y = vec![0.0; n];
    if dpsi != 0.0 {
        for i in 0..n {
            let dq_dx = 2.0 * (ctx.x[i] - ctx.y[i] * ctx.s[i]);
            let dq_dy = 2.0 * (ctx.y[i] - ctx.x[i] * ctx.s[i]);
            let dg_dx = if nx > 0.0 { ctx.x[i] / nx } else { 0.0 };
            let dg_dy = if ny > 0.0 { ctx.y[i] / ny } else { 0.0 };
            let dw_dx = (dq_dx * g * g + ctx.q_minus * 2.0 * g * dg_dx) / (c0 * c0);
            let dw_dy = (dq_dy * g * g + ctx.q_minus * 2.0 * g * dg_dy) / (c0 * c0);
            grad_x[i] = dpsi * dw_dx;
            grad_y[i] = dpsi * dw_dy;
        }
    }
    (value, grad_x, grad_y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::RegionParams;
    use crate::specfun::laguerre::AlphaParam;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};

    fn ctx(x: Vec<f64>, y: Vec<f64>, s: Vec<f64>) -> KernelContext {
        let alpha = AlphaParam::new(vec![0.0; x.len()]).unwrap();
        KernelContext::new(alpha, x, y, s).unwrap()
    }

    #[test]
    fn inside_inner_region() {
        // q- = 0 on the diagonal with s -> 1
        let c = ctx(vec![1.0], vec![1.0], vec![1.0 - 1e-14]);
        let (v, gx, gy) = cutoff_phi(&c, 9.0);
        assert_eq!(v, 1.0);
        assert!(gx.iter().chain(gy.iter()).all(|&g| g == 0.0));
    }

    #[test]
    fn deep_in_the_global_region() {
        let c = ctx(vec![9.0], vec![0.05], vec![0.0]);
        let (v, _, _) = cutoff_phi(&c, 9.0);
        assert_eq!(v, 0.0);
    }

    #[test]
    fn matches_fast_path() {
        let c = ctx(vec![1.1, 0.4], vec![0.8, 1.7], vec![0.2, -0.6]);
        let (v, _, _) = cutoff_phi(&c, 17.0);
        assert_relative_eq!(v, phi_value(&c.x, &c.y, &c.s, 17.0));
    }

    #[test]
    fn support_matches_regions() {
        // phi = 1 on L_1 and phi = 0 off L_2
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let c0 = 9.0;
        for _ in 0..2000 {
            let c = ctx(
                vec![rng.gen_range(0.01..5.0)],
                vec![rng.gen_range(0.01..5.0)],
                vec![rng.gen_range(-0.999..0.999)],
            );
            let g = 1.0 + c.norm_x() + c.norm_y();
            let root = c.q_minus.sqrt();
            let (v, _, _) = cutoff_phi(&c, c0);
            let p1 = RegionParams::new(1.0, c0).unwrap();
            if root <= p1.c0 * p1.tau / g {
                assert_eq!(v, 1.0);
            }
            if root > 2.0 * c0 / g {
                assert_eq!(v, 0.0);
            }
            assert!((0.0..=1.0).contains(&v));
        }
    }

    #[test]
    fn gradients_match_finite_differences() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let c0 = 9.0;
        let h = 1e-6;
        let mut checked = 0;
        while checked < 100 {
            let x = vec![rng.gen_range(0.1..4.0), rng.gen_range(0.1..4.0)];
            let y = vec![rng.gen_range(0.1..4.0), rng.gen_range(0.1..4.0)];
            let s = vec![rng.gen_range(-0.99..0.99), rng.gen_range(-0.99..0.99)];
            let c = ctx(x.clone(), y.clone(), s.clone());
            let (_, gx, gy) = cutoff_phi(&c, c0);
            // only transition-zone contexts exercise the gradient
            if gx.iter().chain(gy.iter()).all(|&g| g == 0.0) {
                continue;
            }
            checked += 1;
            for i in 0..2 {
                let mut xp = x.clone();
                let mut xm = x.clone();
                xp[i] += h;
                xm[i] -= h;
                let fd = (phi_value(&xp, &y, &s, c0) - phi_value(&xm, &y, &s, c0)) / (2.0 * h);
                assert_relative_eq!(gx[i], fd, max_relative = 1e-6, epsilon = 1e-9);
                let mut yp = y.clone();
                let mut ym = y.clone();
                yp[i] += h;
                ym[i] -= h;
                let fd = (phi_value(&x, &yp, &s, c0) - phi_value(&x, &ym, &s, c0)) / (2.0 * h);
                assert_relative_eq!(gy[i], fd, max_relative = 1e-6, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn gradient_bound_scaled_by_sqrt_qminus() {
        // (|grad_x phi| + |grad_y phi|) sqrt(q-) stays bounded
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(37);
        let c0 = 9.0;
        let mut max_scaled: f64 = 0.0;
        for _ in 0..5000 {
            let c = ctx(
                vec![rng.gen_range(0.01..6.0)],
                vec![rng.gen_range(0.01..6.0)],
                vec![rng.gen_range(-0.999..0.999)],
            );
            let (_, gx, gy) = cutoff_phi(&c, c0);
            let norm: f64 = gx.iter().map(|g| g * g).sum::<f64>().sqrt()
                + gy.iter().map(|g| g * g).sum::<f64>().sqrt();
            max_scaled = max_scaled.max(norm * c.q_minus.sqrt());
        }
        assert!(max_scaled.is_finite());
        assert!(max_scaled < 100.0, "scaled gradient blew up: {max_scaled}");
    }
}
