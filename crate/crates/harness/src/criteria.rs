//! The acceptance battery: every gate the library must clear, each one a
//! function from the experiment configuration to measured rows.

use crate::config::{ExperimentConfig, OperatorKind};
use crate::report::{CriterionResult, ReportRow};
use crate::sampling;
use anyhow::{anyhow, Result};
use laguerre_core::geometry::{
    cz_regularity_check, cz_size_check, q_forms, RegionParams,
};
use laguerre_core::grid::{DiscreteFunction, TensorGrid};
use laguerre_core::operators::{
    admissible_epsilon, a_epsilon, derivative_factor_fit, global_maximal_bound_check, h_apply,
    local_heat_sup_kernel, log_time_grid, maximal_heat_expansion, maximal_poisson_expansion,
    multiplier_apply, multiplier_symbol, riesz_kernel, riesz_spectral, symbol_rule, GFunction,
    LaguerreExpansion, LaplacePhi, MultiplierSpec,
};
use laguerre_core::semigroup::{
    heat_apply, heat_kernel, HeatMethod, SubordinationRule, DEFAULT_SUBORDINATION_ORDER,
};
use laguerre_core::specfun::gamma::log_gamma;
use laguerre_core::specfun::laguerre::{
    laguerre_normalized, laguerre_normalized_all, AlphaParam,
};
use laguerre_core::specfun::poly::PolyCoeffs;
use laguerre_core::specfun::quad::adaptive_integrate;
use laguerre_core::varlp::{
    class_constants, holder_check, lift_exponent_radial, luxemburg_norm, modular, ExponentClass,
    ExponentField,
};
use rand::Rng;

pub const CRITERIA_COUNT: u32 = 16;

pub fn criterion_name(id: u32) -> &'static str {
    match id {
        1 => "orthonormality",
        2 => "eigenfunction-identity",
        3 => "heat-kernel-cross-validation",
        4 => "conservation-and-contraction",
        5 => "semigroup-law",
        6 => "subordination",
        7 => "product-inequality",
        8 => "maximal-analysis",
        9 => "g-function-identities",
        10 => "riesz-transforms",
        11 => "multipliers",
        12 => "variable-exponents",
        13 => "cz-conditions",
        14 => "derivative-structure",
        15 => "norm-ratio-stability",
        16 => "determinism",
        _ => "unknown",
    }
}

/// Module that owns a criterion's rows in the per-module CSV files.
pub fn criterion_module(id: u32) -> &'static str {
    match id {
        1 | 2 => "specfun",
        3 | 4 | 5 | 6 | 14 => "semigroup",
        7 | 13 => "geometry",
        12 => "varlp",
        8 | 9 | 10 | 11 | 15 => "operators",
        _ => "harness",
    }
}

/// True when the criterion should run under the configured operator list.
pub fn criterion_enabled(id: u32, cfg: &ExperimentConfig) -> bool {
    match id {
        1 | 2 | 7 | 12 | 13 => true,
        3 | 4 | 5 | 6 | 14 => !cfg.operators.is_empty(),
        8 => cfg.has_operator(&OperatorKind::Maximal),
        9 => cfg.has_operator(&OperatorKind::GFunction),
        10 => cfg.has_operator(&OperatorKind::Riesz),
        11 => cfg.has_operator(&OperatorKind::Multiplier),
        15 => !cfg.operators.is_empty(),
        16 => true,
        _ => false,
    }
}

fn alpha_sets() -> Vec<Vec<f64>> {
    vec![vec![0.0], vec![0.5], vec![2.0], vec![0.0, 1.0]]
}

fn indices_up_to(dim: usize, total: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx = vec![0usize; dim];
    loop {
        if idx.iter().sum::<usize>() <= total {
            out.push(idx.clone());
        }
        let mut axis = dim;
        loop {
            if axis == 0 {
                return out;
            }
            axis -= 1;
            idx[axis] += 1;
            if idx[axis] <= total {
                break;
            }
            idx[axis] = 0;
        }
    }
}

/// 1: orthonormality of the tensor family under the Gaussian-type measure.
pub fn orthonormality(cfg: &ExperimentConfig) -> Result<CriterionResult> {
    let tol = cfg.tol("orthonormality", 1e-8);
    let mut rows = Vec::new();
    for alpha_vec in alpha_sets() {
        let alpha = AlphaParam::new(alpha_vec.clone()).map_err(|e| anyhow!("{e}"))?;
        let n = alpha.dim();
        let grid = TensorGrid::mu_alpha(&alpha, 40).map_err(|e| anyhow!("{e}"))?;
        // per-axis tables of polynomial values at the nodes
        let mut tables: Vec<Vec<Vec<f64>>> = Vec::with_capacity(n);
        for (axis, &a) in alpha.entries().iter().enumerate() {
            let mut per_node = Vec::new();
            for &x in &grid.axes[axis].nodes {
                per_node
                    .push(laguerre_normalized_all(10, a, x * x).map_err(|e| anyhow!("{e}"))?);
            }
            tables.push(per_node);
        }
        let indices = indices_up_to(n, 10);
        let mut worst = 0.0f64;
        for (i, ki) in indices.iter().enumerate() {
            for kj in indices.iter().skip(i) {
                let mut inner = 0.0;
                for flat in 0..grid.len() {
                    let mut rest = flat;
                    let mut prod = grid.weight(flat);
                    for axis in (0..n).rev() {
                        let node = rest % grid.axes[axis].nodes.len();
                        rest /= grid.axes[axis].nodes.len();
                        prod *= tables[axis][node][ki[axis]] * tables[axis][node][kj[axis]];
                    }
                    inner += prod;
                }
                let delta = if ki == kj { 1.0 } else { 0.0 };
                worst = worst.max((inner - delta).abs());
            }
        }
        rows.push(ReportRow::checked(
            1,
            format!("alpha={alpha_vec:?}"),
            "max_gram_defect",
            worst,
            tol,
        ));
    }
    Ok(CriterionResult::from_rows(1, criterion_name(1), rows))
}

/// 2: the differential operator reproduces the eigenvalue coefficientwise.
pub fn eigenfunction_identity(cfg: &ExperimentConfig) -> Result<CriterionResult> {
    let tol = cfg.tol("eigenfunction", 1e-10);
    let mut rows = Vec::new();
    for &a in &[0.0, 0.5, 2.0] {
        let mut worst = 0.0f64;
        for k in 0..=8usize {
            let poly = laguerre_normalized(k, a)
                .map_err(|e| anyhow!("{e}"))?
                .compose_square();
            let d1 = poly.derivative();
            let d2 = d1.derivative();
            // -(1/4) [ f'' + (2a+1) f'/x - 2x f' ]
            let over_x = d1.div_x().map_err(|e| anyhow!("{e}"))?;
            let x_d1 = d1.mul_xpow(1);
            let lhs = d2
                .add(&over_x.scale(2.0 * a + 1.0))
                .sub(&x_d1.scale(2.0))
                .scale(-0.25);
            let rhs = poly.scale(k as f64);
            worst = worst.max(lhs.max_coeff_distance(&rhs));
        }
        rows.push(ReportRow::checked(
            2,
            format!("alpha={a}"),
            "max_coeff_defect",
            worst,
            tol,
        ));
    }
    Ok(CriterionResult::from_rows(2, criterion_name(2), rows))
}

fn probe_lin(count: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..count)
        .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
        .collect()
}

/// 3: the three heat kernel forms agree.
pub fn heat_kernel_cross(cfg: &ExperimentConfig) -> Result<CriterionResult> {
    let tol_pair = cfg.tol("kernel_cross", 1e-8);
    let tol_spec = cfg.tol("kernel_cross_spectral", 1e-6);
    let xs = probe_lin(10, 0.2, 2.5);
    let ts = [0.05, 0.1, 0.5, 1.0, 2.0];
    let mut rows = Vec::new();
    for &a in &[0.0, 0.5, 2.0] {
        let alpha = AlphaParam::new(vec![a]).map_err(|e| anyhow!("{e}"))?;
        let mut worst_pair = 0.0f64;
        let mut worst_spec = 0.0f64;
        for &t in &ts {
            // angular order grows with the largest Bessel argument on the probe
            let u = (-t as f64).exp();
            let z_max = 2.0 * u.sqrt() * 2.5 * 2.5 / (1.0 - u);
            let order = ((0.85 * z_max) as usize + 40).max(64);
            for &x in &xs {
                for &y in &xs {
                    let kb = heat_kernel(&alpha, t, &[x], &[y], &HeatMethod::BesselProduct)
                        .map_err(|e| anyhow!("{e}"))?;
                    let ks = heat_kernel(&alpha, t, &[x], &[y], &HeatMethod::SIntegral { order })
                        .map_err(|e| anyhow!("{e}"))?;
                    worst_pair = worst_pair.max((kb - ks).abs() / kb);
                    if t >= 0.5 {
                        let kp = heat_kernel(
                            &alpha,
                            t,
                            &[x],
                            &[y],
                            &HeatMethod::Spectral { k_max: 60 },
                        )
                        .map_err(|e| anyhow!("{e}"))?;
                        worst_spec = worst_spec.max((kb - kp).abs() / kb);
                    }
                }
            }
        }
        rows.push(ReportRow::checked(
            3,
            format!("alpha={a}"),
            "bessel_vs_angular_rel",
            worst_pair,
            tol_pair,
        ));
        rows.push(ReportRow::checked(
            3,
            format!("alpha={a}"),
            "bessel_vs_spectral_rel",
            worst_spec,
            tol_spec,
        ));
    }
    Ok(CriterionResult::from_rows(3, criterion_name(3), rows))
}

/// 4: mass conservation and L^2 contraction.
pub fn conservation_contraction(cfg: &ExperimentConfig) -> Result<CriterionResult> {
    let tol_cons = cfg.tol("conservation", 1e-8);
    let tol_contr = cfg.tol("contraction", 1e-6);
    let mut rows = Vec::new();
    for &a in &[0.0, 0.5, 2.0] {
        let alpha = AlphaParam::new(vec![a]).map_err(|e| anyhow!("{e}"))?;
        let grid = TensorGrid::mu_alpha(&alpha, 80).map_err(|e| anyhow!("{e}"))?;
        let pts = grid.points();
        let wts = grid.weights_flat();
        let mut worst = 0.0f64;
        for &t in &[0.5, 1.0, 2.0] {
            for &x in &[0.4, 1.3, 2.2] {
                let total: f64 = (0..pts.len())
                    .map(|i| {
                        wts[i]
                            * heat_kernel(&alpha, t, &[x], &pts[i], &HeatMethod::BesselProduct)
                                .unwrap_or(f64::NAN)
                    })
                    .sum();
                worst = worst.max((total - 1.0).abs());
            }
        }
        rows.push(ReportRow::checked(
            4,
            format!("alpha={a}"),
            "conservation_defect",
            worst,
            tol_cons,
        ));
    }
    // contraction on seeded expansions through the kernel quadrature route
    let alpha = cfg.alpha_param()?;
    if alpha.dim() == 1 {
        let grid = TensorGrid::mu_alpha(&alpha, 60).map_err(|e| anyhow!("{e}"))?;
        let mut rng = sampling::rng(cfg.seed, 4);
        let mut worst_excess = 0.0f64;
        for _ in 0..50 {
            let f = sampling::random_expansion(&mut rng, &alpha, 10);
            let fd = f.discretize(grid.clone()).map_err(|e| anyhow!("{e}"))?;
            let t = rng.gen_range(0.1..2.0);
            let out =
                heat_apply(&fd, &alpha, t, &HeatMethod::BesselProduct, &grid.points())
                    .map_err(|e| anyhow!("{e}"))?;
            let applied = DiscreteFunction {
                grid: grid.clone(),
                values: out,
            };
            let excess = applied.lp_norm(2.0) / fd.lp_norm(2.0) - 1.0;
            worst_excess = worst_excess.max(excess);
        }
        rows.push(ReportRow::checked(
            4,
            "seeded-expansions",
            "l2_contraction_excess",
            worst_excess.max(0.0),
            tol_contr,
        ));
    }
    Ok(CriterionResult::from_rows(4, criterion_name(4), rows))
}

/// 5: the semigroup law under composed quadrature applications.
pub fn semigroup_law(cfg: &ExperimentConfig) -> Result<CriterionResult> {
    let tol = cfg.tol("semigroup_law", 1e-5);
    let alpha = AlphaParam::new(vec![cfg.alpha[0]]).map_err(|e| anyhow!("{e}"))?;
    let grid = TensorGrid::mu_alpha(&alpha, 60).map_err(|e| anyhow!("{e}"))?;
    let f = DiscreteFunction::from_fn(grid.clone(), |p| {
        (-(p[0] - 1.0).powi(2)).exp() + 0.3 * (-(p[0] - 2.2).powi(2) / 0.5).exp()
    });
    let probes: Vec<Vec<f64>> = vec![vec![0.4], vec![1.0], vec![1.8], vec![2.6]];
    let mut worst = 0.0f64;
    for &t in &[0.1, 0.5, 1.0] {
        let mid = heat_apply(&f, &alpha, t, &HeatMethod::BesselProduct, &grid.points())
            .map_err(|e| anyhow!("{e}"))?;
        let mid_fn = DiscreteFunction {
            grid: grid.clone(),
            values: mid,
        };
        for &s in &[0.1, 0.5, 1.0] {
            let two = heat_apply(&mid_fn, &alpha, s, &HeatMethod::BesselProduct, &probes)
                .map_err(|e| anyhow!("{e}"))?;
            let one = heat_apply(&f, &alpha, t + s, &HeatMethod::BesselProduct, &probes)
                .map_err(|e| anyhow!("{e}"))?;
            for (a, b) in two.iter().zip(one) {
                worst = worst.max((a - b).abs());
            }
        }
    }
    let rows = vec![ReportRow::checked(
        5,
        "bump-mix",
        "max_probe_defect",
        worst,
        tol,
    )];
    Ok(CriterionResult::from_rows(5, criterion_name(5), rows))
}

/// 6: subordination consistency and maximal domination.
pub fn subordination(cfg: &ExperimentConfig) -> Result<CriterionResult> {
    let tol_sub = cfg.tol("subordination", 1e-5);
    let tol_dom = cfg.tol("maximal_domination", 1e-8);
    let alpha = AlphaParam::new(vec![cfg.alpha[0]]).map_err(|e| anyhow!("{e}"))?;
    let rule = SubordinationRule::new(DEFAULT_SUBORDINATION_ORDER).map_err(|e| anyhow!("{e}"))?;
    let mut rng = sampling::rng(cfg.seed, 6);
    let mut worst_sub = 0.0f64;
    for _ in 0..10 {
        let f = sampling::random_expansion(&mut rng, &alpha, 12);
        for &t in &[0.3, 0.5, 1.0, 2.0] {
            for &x in &[0.4, 1.1, 2.3] {
                let via_sub = f
                    .poisson_by_subordination(t, &[x], &rule)
                    .map_err(|e| anyhow!("{e}"))?;
                let spectral = f.poisson(t).eval(&[x]).map_err(|e| anyhow!("{e}"))?;
                worst_sub = worst_sub.max((via_sub - spectral).abs());
            }
        }
    }
    // pointwise domination of the Poisson maximal by the heat maximal
    let ts_heat = log_time_grid(1e-7, 200.0, 40001).map_err(|e| anyhow!("{e}"))?;
    let ts_poisson = log_time_grid(1e-3, 50.0, 1500).map_err(|e| anyhow!("{e}"))?;
    let mut worst_dom: f64 = 0.0;
    for _ in 0..10 {
        let f = sampling::random_expansion(&mut rng, &alpha, 8);
        for &x in &[0.3, 1.0, 2.4] {
            let wh = maximal_heat_expansion(&f, &[x], &ts_heat).map_err(|e| anyhow!("{e}"))?;
            let ph = maximal_poisson_expansion(&f, &[x], &ts_poisson).map_err(|e| anyhow!("{e}"))?;
            worst_dom = worst_dom.max(ph - wh);
        }
    }
    let rows = vec![
        ReportRow::checked(6, "expansions", "poisson_route_defect", worst_sub, tol_sub),
        ReportRow::checked(
            6,
            "expansions",
            "poisson_maximal_excess",
            worst_dom.max(0.0),
            tol_dom,
        ),
    ];
    Ok(CriterionResult::from_rows(6, criterion_name(6), rows))
}

/// 7: q+ q- >= (|x|^2 - |y|^2)^2 on a large seeded sample.
pub fn product_inequality(cfg: &ExperimentConfig) -> Result<CriterionResult> {
    let mut rows = Vec::new();
    for n in [1usize, 2] {
        let mut rng = sampling::rng(cfg.seed, 70 + n as u64);
        let samples = sampling::xys_samples(&mut rng, n, cfg.samples_product / 2);
        let mut worst_violation = 0.0f64;
        for (x, y, s) in &samples {
            let (qp, qm) = q_forms(x, y, s).map_err(|e| anyhow!("{e}"))?;
            let nx2: f64 = x.iter().map(|v| v * v).sum();
            let ny2: f64 = y.iter().map(|v| v * v).sum();
            let rhs = (nx2 - ny2) * (nx2 - ny2);
            let scale = (qp * qm).max(rhs).max(1.0);
            worst_violation = worst_violation.max((rhs - qp * qm) / scale);
        }
        rows.push(ReportRow::checked(
            7,
            format!("n={n}"),
            "max_relative_violation",
            worst_violation.max(0.0),
            cfg.tol("product_inequality", 1e-12),
        ));
    }
    Ok(CriterionResult::from_rows(7, criterion_name(7), rows))
}

/// 8: the v(t) branch analysis and domination by the auxiliary kernel.
pub fn maximal_analysis(cfg: &ExperimentConfig) -> Result<CriterionResult> {
    let alpha = AlphaParam::new(vec![cfg.alpha[0]]).map_err(|e| anyhow!("{e}"))?;
    let params = RegionParams::with_default_c0(1.0, &alpha).map_err(|e| anyhow!("{e}"))?;
    let mut rng = sampling::rng(cfg.seed, 8);
    let contexts = sampling::global_contexts(&mut rng, &alpha, &params, cfg.samples_contexts);
    let coarse = global_maximal_bound_check(&contexts, &params, 2000).map_err(|e| anyhow!("{e}"))?;
    let fine = global_maximal_bound_check(&contexts, &params, 4000).map_err(|e| anyhow!("{e}"))?;

    let comp = coarse
        .comparability_upper
        .max(coarse.comparability_lower);
    let comp_fine = fine.comparability_upper.max(fine.comparability_lower);
    let comp_drift = (comp_fine - comp).abs() / comp;
    let ratio_drift = (fine.max_ratio - coarse.max_ratio).abs() / coarse.max_ratio;

    let rows = vec![
        ReportRow::checked(
            8,
            "b<=0",
            "grid_sup_over_branch_value",
            coarse.max_ratio_b_nonpositive,
            1.0 + cfg.tol("vt_branch", 1e-6),
        ),
        ReportRow::checked(
            8,
            "b>0",
            "comparability_constant",
            comp,
            cfg.tol("vt_comparability", 100.0),
        ),
        ReportRow::checked(
            8,
            "b>0",
            "comparability_drift",
            comp_drift,
            cfg.tol("vt_stability", 0.15),
        ),
        ReportRow::info(8, "global", "sup_over_majorant", coarse.max_ratio),
        ReportRow::checked(
            8,
            "global",
            "majorant_ratio_drift",
            ratio_drift,
            cfg.tol("vt_stability", 0.15),
        ),
    ];
    Ok(CriterionResult::from_rows(8, criterion_name(8), rows))
}

/// 9: square-function norms of single eigenfunctions.
pub fn g_function_identities(cfg: &ExperimentConfig) -> Result<CriterionResult> {
    let tol_first = cfg.tol("g_first_order", 1e-6);
    let tol_gen = cfg.tol("g_general", 1e-5);
    let alpha = AlphaParam::new(vec![cfg.alpha[0]]).map_err(|e| anyhow!("{e}"))?;
    let grid = TensorGrid::mu_alpha(&alpha, 40).map_err(|e| anyhow!("{e}"))?;
    let mut rows = Vec::new();
    let g1 = GFunction::new(vec![0], 1).map_err(|e| anyhow!("{e}"))?;
    let mut worst = 0.0f64;
    for r in 1..=5usize {
        let f = LaguerreExpansion::new(alpha.clone(), vec![(vec![r], 1.0)])
            .map_err(|e| anyhow!("{e}"))?;
        let norm = g1.norm_l2(&f, &grid).map_err(|e| anyhow!("{e}"))?;
        worst = worst.max((norm - 0.5).abs());
    }
    rows.push(ReportRow::checked(
        9,
        "k=1,r=1..5",
        "norm_defect",
        worst,
        tol_first,
    ));
    let mut worst_gen = 0.0f64;
    for k in 1..=3usize {
        let g = GFunction::new(vec![0], k).map_err(|e| anyhow!("{e}"))?;
        let f = LaguerreExpansion::new(alpha.clone(), vec![(vec![2], 1.0)])
            .map_err(|e| anyhow!("{e}"))?;
        let want = log_gamma(2.0 * k as f64)
            .map_err(|e| anyhow!("{e}"))?
            .exp()
            .sqrt()
            / 2f64.powi(k as i32);
        let norm = g.norm_l2(&f, &grid).map_err(|e| anyhow!("{e}"))?;
        worst_gen = worst_gen.max((norm - want).abs());
    }
    rows.push(ReportRow::checked(
        9,
        "k=1..3",
        "gamma_norm_defect",
        worst_gen,
        tol_gen,
    ));
    Ok(CriterionResult::from_rows(9, criterion_name(9), rows))
}

/// 10: Riesz transform identities, norm-ratio stability, route agreement.
pub fn riesz_transforms(cfg: &ExperimentConfig) -> Result<CriterionResult> {
    let alpha = AlphaParam::new(vec![0.0]).map_err(|e| anyhow!("{e}"))?;
    let mut rows = Vec::new();

    // exact-coefficient identity: the image of the first eigenfunction is -2x
    let image = laguerre_normalized(1, 0.0)
        .map_err(|e| anyhow!("{e}"))?
        .compose_square()
        .derivative();
    let expected = PolyCoeffs::new(vec![0.0, -2.0]);
    rows.push(ReportRow::checked(
        10,
        "first-eigenfunction",
        "coeff_defect",
        image.max_coeff_distance(&expected),
        cfg.tol("riesz_value", 1e-12),
    ));

    // norm-ratio stability under truncation growth
    let grid = TensorGrid::mu_alpha(&alpha, 45).map_err(|e| anyhow!("{e}"))?;
    let mut constants = Vec::new();
    for max_degree in [10usize, 20] {
        let mut rng = sampling::rng(cfg.seed, 10);
        let mut worst_ratio = 0.0f64;
        for _ in 0..100 {
            let f = sampling::random_expansion(&mut rng, &alpha, max_degree);
            let values = grid
                .points()
                .iter()
                .map(|p| riesz_spectral(&f, &[1], p))
                .collect::<laguerre_core::Result<Vec<f64>>>()
                .map_err(|e| anyhow!("{e}"))?;
            let rf = DiscreteFunction {
                grid: grid.clone(),
                values,
            };
            worst_ratio = worst_ratio.max(rf.lp_norm(2.0) / f.norm_l2());
        }
        constants.push(worst_ratio);
    }
    let drift = (constants[1] - constants[0]).abs() / constants[0];
    rows.push(ReportRow::info(10, "seeded", "l2_ratio_truncation_10", constants[0]));
    rows.push(ReportRow::info(10, "seeded", "l2_ratio_truncation_20", constants[1]));
    rows.push(ReportRow::checked(
        10,
        "seeded",
        "l2_ratio_drift",
        drift,
        cfg.tol("riesz_stability", 0.10),
    ));

    // spectral route against kernel integration for a localized function
    let k_max = 40usize;
    let pgrid = TensorGrid::mu_alpha(&alpha, 80).map_err(|e| anyhow!("{e}"))?;
    let mut coeffs = vec![0.0f64; k_max + 1];
    for i in 0..pgrid.len() {
        let p = pgrid.point(i);
        let w = pgrid.weight(i);
        let lv = laguerre_normalized_all(k_max, 0.0, p[0] * p[0]).map_err(|e| anyhow!("{e}"))?;
        let fv = (-2.0 * p[0] * p[0]).exp();
        for (k, c) in coeffs.iter_mut().enumerate() {
            *c += w * fv * lv[k];
        }
    }
    let expansion = LaguerreExpansion::new(
        alpha.clone(),
        coeffs.iter().enumerate().map(|(k, &c)| (vec![k], c)).collect(),
    )
    .map_err(|e| anyhow!("{e}"))?;
    let x = 3.5;
    let spectral = riesz_spectral(&expansion, &[1], &[x]).map_err(|e| anyhow!("{e}"))?;
    let a2 = alpha.clone();
    let integrand = move |y: f64| {
        riesz_kernel(&a2, &[1], &[x], &[y], 32).unwrap_or(f64::NAN)
            * (-2.0 * y * y).exp()
            * 2.0
            * y
            * (-y * y).exp()
    };
    let inner = adaptive_integrate(&integrand, 1e-3, 3.4, 1e-5, 20).map_err(|e| anyhow!("{e}"))?;
    let outer = adaptive_integrate(&integrand, 3.6, 8.0, 1e-5, 20).map_err(|e| anyhow!("{e}"))?;
    let rel = (spectral - inner - outer).abs() / spectral.abs();
    rows.push(ReportRow::checked(
        10,
        "localized-offsupport",
        "route_agreement_rel",
        rel,
        cfg.tol("riesz_kernel_agreement", 1e-3),
    ));
    Ok(CriterionResult::from_rows(10, criterion_name(10), rows))
}

/// 11: multiplier identities and the Plancherel sup bound.
pub fn multipliers(cfg: &ExperimentConfig) -> Result<CriterionResult> {
    let alpha = AlphaParam::new(vec![cfg.alpha[0]]).map_err(|e| anyhow!("{e}"))?;
    let rule = symbol_rule().map_err(|e| anyhow!("{e}"))?;
    let mut rng = sampling::rng(cfg.seed, 11);
    let mut rows = Vec::new();

    // imaginary powers preserve coefficient moduli exactly
    let spec = MultiplierSpec::ImaginaryPower(1.3);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let f = sampling::random_expansion(&mut rng, &alpha, 12);
        for (k, c) in multiplier_apply(&f, &spec, &rule) {
            let orig = f
                .terms
                .iter()
                .find(|(kk, _)| *kk == k)
                .map(|(_, c)| c.abs())
                .unwrap_or(0.0);
            let want = if k.iter().sum::<usize>() == 0 { 0.0 } else { orig };
            worst = worst.max((c.norm() - want).abs());
        }
    }
    rows.push(ReportRow::checked(
        11,
        "imaginary-power",
        "modulus_defect",
        worst,
        cfg.tol("multiplier_exact", 1e-13),
    ));

    // unit symbol recovers the mean-free part
    let spec = MultiplierSpec::LaplaceType(LaplacePhi::Const(1.0));
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let f = sampling::random_expansion(&mut rng, &alpha, 12);
        for (k, c) in multiplier_apply(&f, &spec, &rule) {
            let orig = f
                .terms
                .iter()
                .find(|(kk, _)| *kk == k)
                .map(|(_, c)| *c)
                .unwrap_or(0.0);
            let want = if k.iter().sum::<usize>() == 0 { 0.0 } else { orig };
            worst = worst.max((c.re - want).abs().max(c.im.abs()));
        }
    }
    rows.push(ReportRow::checked(
        11,
        "unit-symbol",
        "mean_free_defect",
        worst,
        cfg.tol("multiplier_exact", 1e-10),
    ));

    // Plancherel sup bound
    let mut worst_excess = 0.0f64;
    for spec in [
        MultiplierSpec::ImaginaryPower(0.7),
        MultiplierSpec::LaplaceType(LaplacePhi::ExpDecay { rate: 1.5 }),
        MultiplierSpec::LaplaceType(LaplacePhi::Window { hi: 2.0 }),
    ] {
        let mut sup_m = 0.0f64;
        for k in 0..=12usize {
            sup_m = sup_m.max(multiplier_symbol(&spec, k as f64, &rule).norm());
        }
        for _ in 0..20 {
            let f = sampling::random_expansion(&mut rng, &alpha, 12);
            let out = multiplier_apply(&f, &spec, &rule);
            let out_norm: f64 = out.iter().map(|(_, c)| c.norm_sqr()).sum::<f64>().sqrt();
            worst_excess = worst_excess.max(out_norm - sup_m * f.norm_l2());
        }
    }
    rows.push(ReportRow::checked(
        11,
        "plancherel",
        "sup_bound_excess",
        worst_excess.max(0.0),
        cfg.tol("multiplier_sup", 1e-10),
    ));
    Ok(CriterionResult::from_rows(11, criterion_name(11), rows))
}

/// 12: variable exponent machinery.
pub fn variable_exponents(cfg: &ExperimentConfig) -> Result<CriterionResult> {
    let alpha = AlphaParam::new(vec![cfg.alpha[0]]).map_err(|e| anyhow!("{e}"))?;
    let grid = TensorGrid::mu_alpha(&alpha, 40).map_err(|e| anyhow!("{e}"))?;
    let mut rows = Vec::new();

    // Luxemburg equals classical for constant exponents
    let f = DiscreteFunction::from_fn(grid.clone(), |p| (1.0 + p[0]).recip());
    let mut worst = 0.0f64;
    for &p in &[1.5, 2.0, 3.0, 10.0] {
        let field = ExponentField::constant(p).map_err(|e| anyhow!("{e}"))?;
        let lux = luxemburg_norm(&f, &field).map_err(|e| anyhow!("{e}"))?;
        worst = worst.max((lux - f.lp_norm(p)).abs() / f.lp_norm(p));
    }
    rows.push(ReportRow::checked(
        12,
        "constant-p",
        "classical_agreement_rel",
        worst,
        cfg.tol("varlp_classical", 1e-8),
    ));

    // unit-modular residual under the configured exponent
    let p = cfg.exponent_field()?;
    let mut rng = sampling::rng(cfg.seed, 12);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let (a, b): (f64, f64) = (rng.gen_range(0.2..3.0), rng.gen_range(0.2..2.0));
        let g = DiscreteFunction::from_fn(grid.clone(), |pt| a * (-b * pt[0] * pt[0]).exp());
        let norm = luxemburg_norm(&g, &p).map_err(|e| anyhow!("{e}"))?;
        let mut scaled = g.clone();
        for v in &mut scaled.values {
            *v /= norm;
        }
        worst = worst.max((modular(&scaled, &p).value - 1.0).abs());
    }
    rows.push(ReportRow::checked(
        12,
        "configured-exponent",
        "unit_modular_residual",
        worst,
        cfg.tol("varlp_unit_modular", 1e-8),
    ));

    // Holder factor-2 bound on seeded pairs
    let mut worst_ratio = 0.0f64;
    for _ in 0..cfg.samples_pairs.min(1000) {
        let (a, b, c, d): (f64, f64, f64, f64) = (
            rng.gen_range(-2.0..2.0),
            rng.gen_range(0.2..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(0.1..1.5),
        );
        let ff = DiscreteFunction::from_fn(grid.clone(), |pt| a * (-b * pt[0] * pt[0]).exp());
        let gg = DiscreteFunction::from_fn(grid.clone(), |pt| c * (-d * pt[0]).exp());
        let rep = holder_check(&ff, &gg, &p).map_err(|e| anyhow!("{e}"))?;
        worst_ratio = worst_ratio.max(rep.ratio);
    }
    rows.push(ReportRow::checked(
        12,
        "seeded-pairs",
        "holder_ratio",
        worst_ratio,
        1.0,
    ));

    // class constants of the decay-power family, and the radial lift
    let decay = ExponentField::decay_power(2.0, 1.0, 2.0).map_err(|e| anyhow!("{e}"))?;
    let point_probes = sampling::points(&mut rng, 1, 500, 0.01, 50.0);
    let pair_probes: Vec<(Vec<f64>, Vec<f64>)> = (0..500)
        .map(|_| {
            let x: f64 = rng.gen_range(0.01..5.0);
            let d: f64 = rng.gen_range(1e-4..0.49);
            (vec![x], vec![x + d])
        })
        .collect();
    for (class, name) in [
        (ExponentClass::PeInfty, "quadratic_decay_constant"),
        (ExponentClass::LhInfty, "decay_log_holder_constant"),
        (ExponentClass::Lh0, "local_log_holder_constant"),
    ] {
        let (c, finite) = class_constants(&decay, class, &point_probes, &pair_probes);
        rows.push(ReportRow {
            criterion: 12,
            experiment: "decay-power".into(),
            metric: name.into(),
            value: c,
            tolerance: f64::INFINITY,
            pass: finite,
        });
    }
    let (lifted, lift) = lift_exponent_radial(&decay, &[2], &point_probes, &pair_probes)
        .map_err(|e| anyhow!("{e}"))?;
    rows.push(ReportRow {
        criterion: 12,
        experiment: "radial-lift".into(),
        metric: "p_bounds_preserved".into(),
        value: if lift.p_bounds_preserved { 0.0 } else { 1.0 },
        tolerance: 0.5,
        pass: lift.p_bounds_preserved
            && lifted.p_minus() == decay.p_minus
            && lifted.p_plus() == decay.p_plus,
    });
    rows.push(ReportRow::checked(
        12,
        "radial-lift",
        "class_constant_excess",
        (lift.lifted_lh0 - lift.base_lh0)
            .max(lift.lifted_lh_infty - lift.base_lh_infty)
            .max(0.0),
        1e-12,
    ));
    Ok(CriterionResult::from_rows(12, criterion_name(12), rows))
}

/// 13: Calderon-Zygmund size and regularity for the local maximal kernel.
pub fn cz_conditions(cfg: &ExperimentConfig) -> Result<CriterionResult> {
    let alpha = AlphaParam::new(vec![cfg.alpha[0]]).map_err(|e| anyhow!("{e}"))?;
    let c0 = RegionParams::default_c0(1, alpha.alpha_hat());
    let mut rng = sampling::rng(cfg.seed, 13);
    let pairs = sampling::cz_pairs(&mut rng, 60);
    let triples = sampling::cz_triples(&mut rng, 60);

    let mut size_constants = Vec::new();
    let mut reg_constants = Vec::new();
    for level in [1usize, 2] {
        let (t_points, s_order) = (200 * level, 24 * level);
        let a2 = alpha.clone();
        let kernel = move |x: &[f64], y: &[f64]| {
            local_heat_sup_kernel(&a2, c0, x, y, t_points, s_order).unwrap_or(f64::NAN)
        };
        let size = cz_size_check(&kernel, &alpha, &pairs).map_err(|e| anyhow!("{e}"))?;
        let reg = cz_regularity_check(&kernel, &alpha, &triples).map_err(|e| anyhow!("{e}"))?;
        size_constants.push(size.constant);
        reg_constants.push(reg.constant);
    }
    let tol_drift = cfg.tol("cz_drift", 0.10);
    let rows = vec![
        ReportRow::info(13, "local-heat-sup", "size_constant", size_constants[1]),
        ReportRow::checked(
            13,
            "local-heat-sup",
            "size_drift",
            (size_constants[1] - size_constants[0]).abs() / size_constants[0],
            tol_drift,
        ),
        ReportRow::info(13, "local-heat-sup", "regularity_constant", reg_constants[1]),
        ReportRow::checked(
            13,
            "local-heat-sup",
            "regularity_drift",
            (reg_constants[1] - reg_constants[0]).abs() / reg_constants[0],
            tol_drift,
        ),
    ];
    Ok(CriterionResult::from_rows(13, criterion_name(13), rows))
}

/// 14: degree-4 structure of the derivative factor.
pub fn derivative_structure(cfg: &ExperimentConfig) -> Result<CriterionResult> {
    let alpha = AlphaParam::new(vec![cfg.alpha[0]]).map_err(|e| anyhow!("{e}"))?;
    let mut rng = sampling::rng(cfg.seed, 14);
    let samples = sampling::xys_samples(&mut rng, 1, 100);
    let zs: Vec<f64> = (0..60).map(|i| 0.05 + 0.12 * i as f64).collect();
    let mut worst_residual = 0.0f64;
    let mut worst_signs = 0usize;
    for (x, y, s) in &samples {
        let fit = derivative_factor_fit(&alpha, x, y, s, &zs).map_err(|e| anyhow!("{e}"))?;
        worst_residual = worst_residual.max(fit.residual);
        worst_signs = worst_signs.max(fit.sign_changes);
    }
    let rows = vec![
        ReportRow::checked(
            14,
            "seeded",
            "degree4_fit_residual",
            worst_residual,
            cfg.tol("structure_residual", 1e-8),
        ),
        ReportRow::checked(14, "seeded", "sign_changes", worst_signs as f64, 4.0),
    ];
    Ok(CriterionResult::from_rows(14, criterion_name(14), rows))
}

/// Test-function families for the norm-ratio experiments.
pub fn norm_ratio_families(cfg: &ExperimentConfig, alpha: &AlphaParam) -> Result<Vec<(String, LaguerreExpansion)>> {
    let mut rng = sampling::rng(cfg.seed, 15);
    let mut fams = Vec::new();
    for i in 0..4 {
        let f = sampling::random_expansion(&mut rng, alpha, 10);
        fams.push((format!("expansion-{i}"), f));
    }
    // bumps and plateaus projected once on a fixed high-order grid so that
    // every refinement level sees the same test function
    let pgrid = TensorGrid::mu_alpha(alpha, 96).map_err(|e| anyhow!("{e}"))?;
    let project = |name: &str, f: &dyn Fn(f64) -> f64| -> Result<(String, LaguerreExpansion)> {
        let deg = 16usize;
        let mut coeffs = vec![0.0f64; deg + 1];
        for i in 0..pgrid.len() {
            let p = pgrid.point(i);
            let w = pgrid.weight(i);
            let lv = laguerre_normalized_all(deg, alpha.entries()[0], p[0] * p[0])
                .map_err(|e| anyhow!("{e}"))?;
            for (k, c) in coeffs.iter_mut().enumerate() {
                *c += w * f(p[0]) * lv[k];
            }
        }
        Ok((
            name.to_string(),
            LaguerreExpansion::new(
                alpha.clone(),
                coeffs.iter().enumerate().map(|(k, &c)| (vec![k], c)).collect(),
            )
            .map_err(|e| anyhow!("{e}"))?,
        ))
    };
    for (i, c) in [0.5f64, 1.0, 1.5, 2.5].iter().enumerate() {
        let c = *c;
        fams.push(project(
            &format!("bump-{i}"),
            &move |y: f64| (-((y - c) / 0.4).powi(2)).exp(),
        )?);
    }
    for (i, edge) in [1.0f64, 2.0].iter().enumerate() {
        let e = *edge;
        fams.push(project(
            &format!("plateau-{i}"),
            &move |y: f64| 1.0 / (1.0 + ((y - e) / 0.1).exp()),
        )?);
    }
    Ok(fams)
}

/// Apply a configured operator to an expansion, sampled at the grid points.
pub fn apply_operator(
    cfg: &ExperimentConfig,
    op: &OperatorKind,
    f: &LaguerreExpansion,
    grid: &TensorGrid,
    level: usize,
) -> Result<Vec<f64>> {
    let alpha = &f.alpha;
    match op {
        OperatorKind::Maximal => {
            let ts = log_time_grid(cfg.tgrid_min, cfg.tgrid_max, cfg.tgrid_points * level)
                .map_err(|e| anyhow!("{e}"))?;
            grid.points()
                .iter()
                .map(|pt| maximal_heat_expansion(f, pt, &ts))
                .collect::<laguerre_core::Result<_>>()
                .map_err(|e| anyhow!("{e}"))
        }
        OperatorKind::Riesz => grid
            .points()
            .iter()
            .map(|pt| riesz_spectral(f, &[1], pt))
            .collect::<laguerre_core::Result<_>>()
            .map_err(|e| anyhow!("{e}")),
        OperatorKind::GFunction => {
            let g = GFunction::new(vec![0], 1).map_err(|e| anyhow!("{e}"))?;
            grid.points()
                .iter()
                .map(|pt| g.eval(f, pt))
                .collect::<laguerre_core::Result<_>>()
                .map_err(|e| anyhow!("{e}"))
        }
        OperatorKind::Multiplier => {
            let rule = symbol_rule().map_err(|e| anyhow!("{e}"))?;
            let spec = MultiplierSpec::ImaginaryPower(1.0);
            let coeffs = multiplier_apply(f, &spec, &rule);
            grid.points()
                .iter()
                .map(|pt| {
                    let mut acc = num_complex::Complex64::new(0.0, 0.0);
                    for (k, c) in &coeffs {
                        let single =
                            LaguerreExpansion::new(alpha.clone(), vec![(k.clone(), 1.0)])
                                .map_err(|e| anyhow!("{e}"))?;
                        acc += c * single.eval(pt).map_err(|e| anyhow!("{e}"))?;
                    }
                    Ok(acc.norm())
                })
                .collect::<Result<_>>()
        }
        OperatorKind::HAux => {
            let p = cfg.exponent_field()?;
            let eps = 0.5 * admissible_epsilon(&p, alpha).map_err(|e| anyhow!("{e}"))?;
            if a_epsilon(eps, p.p_infty) <= 0.0 {
                return Err(anyhow!("a_epsilon must be positive in the admissible range"));
            }
            let c0 = RegionParams::default_c0(alpha.dim(), alpha.alpha_hat());
            let mgrid =
                TensorGrid::m_alpha_box(alpha, 8.0, 40 * level).map_err(|e| anyhow!("{e}"))?;
            let fm = f.discretize(mgrid).map_err(|e| anyhow!("{e}"))?;
            h_apply(&fm, alpha, eps, c0, 24 * level, &grid.points()).map_err(|e| anyhow!("{e}"))
        }
    }
}

/// Per-family Luxemburg norm ratios of one operator at one refinement level.
pub fn operator_family_ratios(
    cfg: &ExperimentConfig,
    op: &OperatorKind,
    families: &[(String, LaguerreExpansion)],
    p: &ExponentField,
    level: usize,
) -> Result<Vec<(String, f64)>> {
    let alpha = AlphaParam::new(vec![cfg.alpha[0]]).map_err(|e| anyhow!("{e}"))?;
    let grid =
        TensorGrid::mu_alpha(&alpha, cfg.grid_order * level).map_err(|e| anyhow!("{e}"))?;
    let mut out = Vec::new();
    for (name, f) in families {
        let fd = f.discretize(grid.clone()).map_err(|e| anyhow!("{e}"))?;
        let nf = luxemburg_norm(&fd, p).map_err(|e| anyhow!("{e}"))?;
        if nf == 0.0 {
            continue;
        }
        let values = apply_operator(cfg, op, f, &grid, level)?;
        let tf = DiscreteFunction {
            grid: grid.clone(),
            values,
        };
        let ratio = luxemburg_norm(&tf, p).map_err(|e| anyhow!("{e}"))? / nf;
        out.push((name.clone(), ratio));
    }
    Ok(out)
}

/// 15: family-max norm ratios stable under simultaneous grid doubling.
pub fn norm_ratio_stability(cfg: &ExperimentConfig) -> Result<CriterionResult> {
    let alpha = AlphaParam::new(vec![cfg.alpha[0]]).map_err(|e| anyhow!("{e}"))?;
    let p = ExponentField::decay_power(2.0, 1.0, 2.0).map_err(|e| anyhow!("{e}"))?;
    let families = norm_ratio_families(cfg, &alpha)?;
    let mut rows = Vec::new();
    for op in &cfg.operators {
        let mut family_max = Vec::new();
        for level in [1usize, 2] {
            let ratios = operator_family_ratios(cfg, op, &families, &p, level)?;
            family_max.push(
                ratios
                    .iter()
                    .map(|(_, r)| *r)
                    .fold(0.0f64, f64::max),
            );
        }
        let drift = (family_max[1] - family_max[0]).abs() / family_max[0];
        rows.push(ReportRow::info(
            15,
            op.name(),
            "family_max_ratio",
            family_max[1],
        ));
        rows.push(ReportRow::checked(
            15,
            op.name(),
            "refinement_drift",
            drift,
            cfg.tol("norm_ratio_drift", 0.10),
        ));
    }
    Ok(CriterionResult::from_rows(15, criterion_name(15), rows))
}

/// Run every enabled criterion from 1 to 15 in order.
pub fn run_enabled(cfg: &ExperimentConfig) -> Result<Vec<CriterionResult>> {
    let runners: Vec<(u32, fn(&ExperimentConfig) -> Result<CriterionResult>)> = vec![
        (1, orthonormality),
        (2, eigenfunction_identity),
        (3, heat_kernel_cross),
        (4, conservation_contraction),
        (5, semigroup_law),
        (6, subordination),
        (7, product_inequality),
        (8, maximal_analysis),
        (9, g_function_identities),
        (10, riesz_transforms),
        (11, multipliers),
        (12, variable_exponents),
        (13, cz_conditions),
        (14, derivative_structure),
        (15, norm_ratio_stability),
    ];
    let mut out = Vec::new();
    for (id, run) in runners {
        if criterion_enabled(id, cfg) {
            out.push(run(cfg)?);
        }
    }
    Ok(out)
}
