//! Physicists' Hermite polynomials H_m.

use crate::specfun::poly::PolyCoeffs;

/// Coefficients of H_m through the recurrence H_{m+1} = 2x H_m - 2m H_{m-1}.
pub fn hermite(m: usize) -> PolyCoeffs {
    let mut prev = PolyCoeffs::constant(1.0);
    if m == 0 {
        return prev;
    }
    let mut curr = PolyCoeffs::new(vec![0.0, 2.0]);
    for j in 1..m {
        let next = curr.mul_xpow(1).scale(2.0).sub(&prev.scale(2.0 * j as f64));
        prev = curr;
        curr = next;
    }
    curr
}

/// Value of H_m(x) by the same recurrence, without building coefficients.
pub fn hermite_eval(m: usize, x: f64) -> f64 {
    let mut prev = 1.0;
    if m == 0 {
        return prev;
    }
    let mut curr = 2.0 * x;
    for j in 1..m {
        let next = 2.0 * x * curr - 2.0 * j as f64 * prev;
        prev = curr;
        curr = next;
    }
    curr
}
