//! The CLI commands: run the verification battery, dump kernel tables,
//! norm tables and operator ratio tables, and re-read a summary.

use crate::config::ExperimentConfig;
use crate::criteria::{
    self, criterion_module, criterion_name, norm_ratio_families, operator_family_ratios,
};
use crate::report::{
    fnv1a, format_float, write_rows_csv, write_summary_csv, CriterionResult, ReportRow,
};
use anyhow::{anyhow, bail, Context, Result};
use laguerre_core::grid::{DiscreteFunction, TensorGrid};
use laguerre_core::operators::{
    admissible_epsilon, h_kernel_xy, riesz_kernel, LaplacePhi, multiplier_kernel,
};
use laguerre_core::semigroup::{
    heat_kernel, poisson_kernel, HeatMethod, SubordinationRule, DEFAULT_SUBORDINATION_ORDER,
};
use laguerre_core::varlp::{luxemburg_norm_detailed, modular};
use std::fmt::Write as _;
use std::path::Path;

/// Minimal glob matching with `*` and `?`.
pub fn glob_match(pattern: &str, name: &str) -> bool {
    let p: Vec<char> = pattern.chars().collect();
    let n: Vec<char> = name.chars().collect();
    fn inner(p: &[char], n: &[char]) -> bool {
        match (p.first(), n.first()) {
            (None, None) => true,
            (Some('*'), _) => {
                inner(&p[1..], n) || (!n.is_empty() && inner(p, &n[1..]))
            }
            (Some('?'), Some(_)) => inner(&p[1..], &n[1..]),
            (Some(a), Some(b)) if a == b => inner(&p[1..], &n[1..]),
            _ => false,
        }
    }
    inner(&p, &n)
}

/// Run the verification battery; returns true when every suite passed.
pub fn cmd_verify(cfg: &ExperimentConfig, filter: Option<&str>) -> Result<bool> {
    cfg.check_hypotheses()?;
    std::fs::create_dir_all(&cfg.out)
        .with_context(|| format!("creating output dir {}", cfg.out.display()))?;

    let mut results: Vec<CriterionResult> = Vec::new();
    for result in criteria::run_enabled(cfg)? {
        if let Some(pat) = filter {
            if !glob_match(pat, &result.name) {
                continue;
            }
        }
        results.push(result);
    }

    // per-module CSV files
    for module in ["specfun", "geometry", "varlp", "semigroup", "operators"] {
        let rows: Vec<ReportRow> = results
            .iter()
            .filter(|r| criterion_module(r.id) == module)
            .flat_map(|r| r.rows.iter().cloned())
            .collect();
        if !rows.is_empty() {
            write_rows_csv(&cfg.out.join(format!("{module}.csv")), &rows)?;
        }
    }

    // geometry check reports in their dedicated row shape
    if let Some(cz) = results.iter().find(|r| r.id == 13) {
        let mut text = String::from(
            "check_name,n,alpha_hat,samples,constant,refinement_ratio,pass\n",
        );
        for name in ["size", "regularity"] {
            let constant = cz
                .rows
                .iter()
                .find(|r| r.metric == format!("{name}_constant"))
                .map(|r| r.value)
                .unwrap_or(f64::NAN);
            let drift_row = cz.rows.iter().find(|r| r.metric == format!("{name}_drift"));
            let (drift, pass) = drift_row.map(|r| (r.value, r.pass)).unwrap_or((f64::NAN, false));
            writeln!(
                text,
                "cz_{name},{},{},{},{},{},{}",
                cfg.dimension,
                format_float(cfg.alpha.iter().sum::<f64>()),
                60,
                format_float(constant),
                format_float(drift),
                pass
            )?;
        }
        std::fs::write(cfg.out.join("geometry_checks.csv"), text)?;
    }

    // fingerprint of the module outputs, surfaced as the determinism row
    let mut bytes = Vec::new();
    for module in ["specfun", "geometry", "varlp", "semigroup", "operators"] {
        let path = cfg.out.join(format!("{module}.csv"));
        if let Ok(b) = std::fs::read(&path) {
            bytes.extend_from_slice(&b);
        }
    }
    let fingerprint = fnv1a(&bytes);
    let determinism = CriterionResult::from_rows(
        16,
        criterion_name(16),
        vec![ReportRow::info(
            16,
            "module-outputs",
            "fnv1a_fingerprint",
            fingerprint as f64,
        )],
    );
    results.push(determinism);

    write_summary_csv(&cfg.out.join("summary.csv"), &results)?;

    let mut all_pass = true;
    for r in &results {
        let status = if r.pass { "PASS" } else { "FAIL" };
        println!("[{status}] criterion {:2}: {}", r.id, r.name);
        all_pass &= r.pass;
    }
    Ok(all_pass)
}

fn kernel_probe_axis() -> Vec<f64> {
    (1..=8).map(|i| 0.3 * i as f64).collect()
}

/// Dump kernel tables for the requested family.
pub fn cmd_kernels(cfg: &ExperimentConfig, which: &str) -> Result<()> {
    std::fs::create_dir_all(&cfg.out)?;
    let alpha = cfg.alpha_param()?;
    if alpha.dim() != 1 {
        bail!("kernel tables are produced for dimension 1");
    }
    let xs = kernel_probe_axis();
    let mut text = String::new();
    match which {
        "heat" => {
            text.push_str("n,alpha_hat,t,x,y,bessel,spectral,s_integral,max_dev\n");
            for &t in &[0.25, 1.0] {
                for &x in &xs {
                    for &y in &xs {
                        let kb =
                            heat_kernel(&alpha, t, &[x], &[y], &HeatMethod::BesselProduct)
                                .map_err(|e| anyhow!("{e}"))?;
                        let kp = heat_kernel(
                            &alpha,
                            t,
                            &[x],
                            &[y],
                            &HeatMethod::Spectral { k_max: 60 },
                        )
                        .map_err(|e| anyhow!("{e}"))?;
                        let ks = heat_kernel(
                            &alpha,
                            t,
                            &[x],
                            &[y],
                            &HeatMethod::SIntegral { order: 128 },
                        )
                        .map_err(|e| anyhow!("{e}"))?;
                        let dev = (kb - kp).abs().max((kb - ks).abs()).max((kp - ks).abs());
                        writeln!(
                            text,
                            "1,{},{},{},{},{},{},{},{}",
                            format_float(alpha.alpha_hat()),
                            format_float(t),
                            format_float(x),
                            format_float(y),
                            format_float(kb),
                            format_float(kp),
                            format_float(ks),
                            format_float(dev)
                        )?;
                    }
                }
            }
        }
        "poisson" => {
            text.push_str("n,alpha_hat,t,x,y,value\n");
            let rule = SubordinationRule::new(DEFAULT_SUBORDINATION_ORDER)
                .map_err(|e| anyhow!("{e}"))?;
            for &t in &[0.5, 1.0, 2.0] {
                for &x in &xs {
                    for &y in &xs {
                        let v = poisson_kernel(&alpha, t, &[x], &[y], &rule)
                            .map_err(|e| anyhow!("{e}"))?;
                        writeln!(
                            text,
                            "1,{},{},{},{},{}",
                            format_float(alpha.alpha_hat()),
                            format_float(t),
                            format_float(x),
                            format_float(y),
                            format_float(v)
                        )?;
                    }
                }
            }
        }
        "riesz" => {
            text.push_str("n,alpha_hat,beta,x,y,value\n");
            for &x in &xs {
                for &y in &xs {
                    if x == y {
                        continue;
                    }
                    let v =
                        riesz_kernel(&alpha, &[1], &[x], &[y], 32).map_err(|e| anyhow!("{e}"))?;
                    writeln!(
                        text,
                        "1,{},1,{},{},{}",
                        format_float(alpha.alpha_hat()),
                        format_float(x),
                        format_float(y),
                        format_float(v)
                    )?;
                }
            }
        }
        "multiplier" => {
            text.push_str("n,alpha_hat,phi,x,y,value\n");
            for &x in &xs {
                for &y in &xs {
                    if x == y {
                        continue;
                    }
                    let v = multiplier_kernel(&alpha, &LaplacePhi::Const(1.0), &[x], &[y])
                        .map_err(|e| anyhow!("{e}"))?;
                    writeln!(
                        text,
                        "1,{},const-1,{},{},{}",
                        format_float(alpha.alpha_hat()),
                        format_float(x),
                        format_float(y),
                        format_float(v)
                    )?;
                }
            }
        }
        "h-aux" => {
            text.push_str("n,alpha_hat,epsilon,x,y,value\n");
            let p = cfg.exponent_field()?;
            let eps = 0.5 * admissible_epsilon(&p, &alpha).map_err(|e| anyhow!("{e}"))?;
            let c0 = laguerre_core::geometry::RegionParams::default_c0(1, alpha.alpha_hat());
            for &x in &xs {
                for &y in &xs {
                    let v = h_kernel_xy(&alpha, eps, c0, &[x], &[y], 32)
                        .map_err(|e| anyhow!("{e}"))?;
                    writeln!(
                        text,
                        "1,{},{},{},{},{}",
                        format_float(alpha.alpha_hat()),
                        format_float(eps),
                        format_float(x),
                        format_float(y),
                        format_float(v)
                    )?;
                }
            }
        }
        other => bail!("unknown kernel family {other:?} (heat, poisson, riesz, multiplier, h-aux)"),
    }
    let path = cfg.out.join(format!("kernels_{which}.csv"));
    std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// Luxemburg norms of the test families under the configured exponent.
pub fn cmd_norms(cfg: &ExperimentConfig) -> Result<()> {
    std::fs::create_dir_all(&cfg.out)?;
    let alpha = cfg.alpha_param()?;
    if alpha.dim() != 1 {
        bail!("norm tables are produced for dimension 1");
    }
    let p = cfg.exponent_field()?;
    let families = norm_ratio_families(cfg, &alpha)?;
    let grid = TensorGrid::mu_alpha(&alpha, cfg.grid_order).map_err(|e| anyhow!("{e}"))?;
    let mut text = String::from("field_id,measure,norm,modular_at_norm,iterations\n");
    for (name, f) in &families {
        let fd = f.discretize(grid.clone()).map_err(|e| anyhow!("{e}"))?;
        let detail = luxemburg_norm_detailed(&fd, &p).map_err(|e| anyhow!("{e}"))?;
        writeln!(
            text,
            "{name},mu_alpha,{},{},{}",
            format_float(detail.norm),
            format_float(detail.modular_at_norm),
            detail.iterations
        )?;
    }
    // zero row for reference
    let zero = DiscreteFunction::zeros(grid);
    let detail = luxemburg_norm_detailed(&zero, &p).map_err(|e| anyhow!("{e}"))?;
    writeln!(
        text,
        "zero,mu_alpha,{},{},{}",
        format_float(detail.norm),
        format_float(modular(&zero, &p).value),
        detail.iterations
    )?;
    std::fs::write(cfg.out.join("norms.csv"), text)?;
    Ok(())
}

/// Operator norm-ratio tables with refinement ratios.
pub fn cmd_operators(cfg: &ExperimentConfig) -> Result<()> {
    cfg.check_hypotheses()?;
    std::fs::create_dir_all(&cfg.out)?;
    let alpha = cfg.alpha_param()?;
    if alpha.dim() != 1 {
        bail!("operator tables are produced for dimension 1");
    }
    let p = cfg.exponent_field()?;
    let families = norm_ratio_families(cfg, &alpha)?;
    let mut text =
        String::from("operator,n,alpha_hat,exponent_id,family,grid,estimate,refinement_ratio,pass\n");
    for op in &cfg.operators {
        let coarse = operator_family_ratios(cfg, op, &families, &p, 1)?;
        let fine = operator_family_ratios(cfg, op, &families, &p, 2)?;
        for ((name, r1), (_, r2)) in coarse.iter().zip(&fine) {
            let drift = (r2 - r1).abs() / r1.max(1e-300);
            let pass = drift <= cfg.tol("norm_ratio_drift", 0.10);
            writeln!(
                text,
                "{},1,{},{},{},{},{},{},{}",
                op.name(),
                format_float(alpha.alpha_hat()),
                cfg.exponent_kind,
                name,
                cfg.grid_order * 2,
                format_float(*r2),
                format_float(drift),
                pass
            )?;
        }
    }
    std::fs::write(cfg.out.join("operators_ratios.csv"), text)?;
    Ok(())
}

/// Re-read a summary file and print it; returns overall pass.
pub fn cmd_report(out_dir: &Path) -> Result<bool> {
    let path = out_dir.join("summary.csv");
    let text = std::fs::read_to_string(&path)
        .with_context(|| format!("reading {}", path.display()))?;
    let mut all_pass = true;
    for line in text.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 5 {
            bail!("malformed summary row {line:?}");
        }
        let pass = cols[4] == "true";
        println!(
            "[{}] criterion {:>2}: {} ({} rows, {} failures)",
            if pass { "PASS" } else { "FAIL" },
            cols[0],
            cols[1],
            cols[2],
            cols[3]
        );
        all_pass &= pass;
    }
    Ok(all_pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn glob_semantics() {
        assert!(glob_match("*", "anything"));
        assert!(glob_match("riesz*", "riesz-transforms"));
        assert!(glob_match("*norm*", "norm-ratio-stability"));
        assert!(!glob_match("riesz", "riesz-transforms"));
        assert!(glob_match("orthonormalit?", "orthonormality"));
    }
}
