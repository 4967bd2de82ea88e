//! Mutual-oracle checks for the Riesz kernel: the angular Hermite-weighted
//! form against direct time-quadrature of finite-difference derivatives of
//! the heat kernel, and the spectral route against kernel integration for a
//! localized function evaluated far from where it lives.

use laguerre_core::grid::TensorGrid;
use laguerre_core::operators::{riesz_kernel, riesz_spectral, LaguerreExpansion};
use laguerre_core::semigroup::{heat_kernel, HeatMethod};
use laguerre_core::specfun::gamma::log_gamma;
use laguerre_core::specfun::laguerre::{laguerre_normalized_all, AlphaParam};
use laguerre_core::specfun::quad::{adaptive_integrate, integrate_mapped, make_rule, RuleKind};

/// D_x^m W_t(x, y) by central finite differences of the Bessel-product form.
fn heat_dx(alpha: &AlphaParam, m: usize, t: f64, x: f64, y: f64) -> f64 {
    let w = |xx: f64| heat_kernel(alpha, t, &[xx], &[y], &HeatMethod::BesselProduct).unwrap();
    match m {
        1 => {
            let h = 1e-5;
            (w(x + h) - w(x - h)) / (2.0 * h)
        }
        2 => {
            let h = 1e-4;
            (w(x + h) - 2.0 * w(x) + w(x - h)) / (h * h)
        }
        _ => unreachable!("only first and second derivatives are cross-checked"),
    }
}

/// Direct route: (1/Gamma(b/2)) integral of t^{b/2-1} D_x^b W_t(x,y) dt,
/// with the substitution t = tau^2 taming the small-time endpoint.
fn direct_kernel(alpha: &AlphaParam, beta: usize, x: f64, y: f64) -> f64 {
    let bh = beta as f64;
    let head = adaptive_integrate(
        &|tau: f64| {
            let t = tau * tau;
            // the Gaussian factor makes everything below the supported
            // minimum time vanish identically for separated points
            if t < 2.0 * laguerre_core::semigroup::MIN_TIME {
                return 0.0;
            }
            2.0 * tau * t.powf(0.5 * bh - 1.0) * heat_dx(alpha, beta, t, x, y)
        },
        0.0,
        1.0,
        1e-6,
        32,
    )
    .unwrap();
    // fixed composite panels on the tail: the finite-difference noise floor
    // (~1e-8 absolute) would defeat an adaptive refinement criterion
    let rule = make_rule(RuleKind::GaussLegendre, 40).unwrap();
    let edges = [1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 70.0];
    let tail: f64 = edges
        .windows(2)
        .map(|e| {
            integrate_mapped(&rule, e[0], e[1], |t| {
                t.powf(0.5 * bh - 1.0) * heat_dx(alpha, beta, t, x, y)
            })
        })
        .sum();
    (head + tail) / log_gamma(0.5 * bh).unwrap().exp()
}

#[test]
fn kernel_routes_agree_first_order() {
    for &a in &[0.0, 0.5] {
        let alpha = AlphaParam::new(vec![a]).unwrap();
        for &(x, y) in &[(0.8, 1.9), (1.5, 0.6)] {
            let direct = direct_kernel(&alpha, 1, x, y);
            let angular = riesz_kernel(&alpha, &[1], &[x], &[y], 48).unwrap();
            let rel = (direct - angular).abs() / direct.abs().max(1e-12);
            assert!(
                rel <= 1e-4,
                "first-order mismatch at alpha={a}, ({x},{y}): {direct} vs {angular}"
            );
        }
    }
}

#[test]
fn kernel_routes_agree_second_order() {
    let alpha = AlphaParam::new(vec![0.0]).unwrap();
    for &(x, y) in &[(0.9, 2.0), (1.8, 0.7)] {
        let direct = direct_kernel(&alpha, 2, x, y);
        let angular = riesz_kernel(&alpha, &[2], &[x], &[y], 48).unwrap();
        let rel = (direct - angular).abs() / direct.abs().max(1e-12);
        assert!(
            rel <= 1e-4,
            "second-order mismatch at ({x},{y}): {direct} vs {angular}"
        );
    }
}

#[test]
fn spectral_matches_kernel_integration_off_support() {
    // f(y) = e^{-2 y^2} has geometrically decaying coefficients, so its
    // degree-40 expansion is exact to ~1e-8 and the probe x sits far from
    // where f is concentrated.
    let alpha = AlphaParam::new(vec![0.0]).unwrap();
    let k_max = 40usize;
    let grid = TensorGrid::mu_alpha(&alpha, 80).unwrap();
    let mut coeffs = vec![0.0f64; k_max + 1];
    for i in 0..grid.len() {
        let p = grid.point(i);
        let w = grid.weight(i);
        let lv = laguerre_normalized_all(k_max, 0.0, p[0] * p[0]).unwrap();
        let fv = (-2.0 * p[0] * p[0]).exp();
        for (k, c) in coeffs.iter_mut().enumerate() {
            *c += w * fv * lv[k];
        }
    }
    let expansion = LaguerreExpansion::new(
        alpha.clone(),
        coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| (vec![k], c))
            .collect(),
    )
    .unwrap();

    let x = 3.5;
    let spectral = riesz_spectral(&expansion, &[1], &[x]).unwrap();

    let mu_density = |y: f64| 2.0 * y * (-y * y).exp();
    let integrand = |y: f64| {
        riesz_kernel(&alpha, &[1], &[x], &[y], 48).unwrap()
            * (-2.0 * y * y).exp()
            * mu_density(y)
    };
    // a thin excluded band around x contributes at most ~1e-7 because f
    // there is below 1e-10
    let inner = adaptive_integrate(&integrand, 1e-3, 3.4, 1e-6, 24).unwrap();
    let outer = adaptive_integrate(&integrand, 3.6, 8.0, 1e-6, 24).unwrap();
    let kernel_route = inner + outer;

    let rel = (spectral - kernel_route).abs() / spectral.abs();
    assert!(
        rel <= 1e-3,
        "spectral {spectral} vs kernel {kernel_route}, rel {rel}"
    );
}
