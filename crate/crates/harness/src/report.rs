//! Report rows and byte-stable CSV output.

use anyhow::{Context, Result};
use std::fmt::Write as _;
use std::path::Path;

/// One measured quantity with its gate.
#[derive(Debug, Clone)]
pub struct ReportRow {
    pub criterion: u32,
    pub experiment: String,
    pub metric: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl ReportRow {
    pub fn checked(
        criterion: u32,
        experiment: impl Into<String>,
        metric: impl Into<String>,
        value: f64,
        tolerance: f64,
    ) -> Self {
        Self {
            criterion,
            experiment: experiment.into(),
            metric: metric.into(),
            value,
            tolerance,
            pass: value.is_finite() && value <= tolerance,
        }
    }

    /// Informational row: recorded, never gating.
    pub fn info(
        criterion: u32,
        experiment: impl Into<String>,
        metric: impl Into<String>,
        value: f64,
    ) -> Self {
        Self {
            criterion,
            experiment: experiment.into(),
            metric: metric.into(),
            value,
            tolerance: f64::INFINITY,
            pass: value.is_finite(),
        }
    }
}

/// Outcome of a whole acceptance criterion.
#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub rows: Vec<ReportRow>,
    pub pass: bool,
}

impl CriterionResult {
    pub fn from_rows(id: u32, name: impl Into<String>, rows: Vec<ReportRow>) -> Self {
        let pass = rows.iter().all(|r| r.pass);
        Self {
            id,
            name: name.into(),
            rows,
            pass,
        }
    }
}

/// 17 significant digits, byte-stable across platforms we target.
pub fn format_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "nan".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

pub fn write_rows_csv(path: &Path, rows: &[ReportRow]) -> Result<()> {
    let mut text = String::from("criterion,experiment,metric,value,tolerance,pass\n");
    for r in rows {
        writeln!(
            text,
            "{},{},{},{},{},{}",
            r.criterion,
            r.experiment,
            r.metric,
            format_float(r.value),
            format_float(r.tolerance),
            r.pass
        )?;
    }
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub fn write_summary_csv(path: &Path, results: &[CriterionResult]) -> Result<()> {
    let mut text = String::from("criterion,name,rows,failures,pass\n");
    for r in results {
        let failures = r.rows.iter().filter(|row| !row.pass).count();
        writeln!(
            text,
            "{},{},{},{},{}",
            r.id,
            r.name,
            r.rows.len(),
            failures,
            r.pass
        )?;
    }
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// FNV-1a over bytes; used to surface an output fingerprint inside the
/// summary so reproducibility regressions show up as a value change.
pub fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_is_17_digits() {
        let s = format_float(std::f64::consts::PI);
        assert!(s.starts_with("3.1415926535897931"), "{s}");
        assert_eq!(format_float(f64::INFINITY), "inf");
    }

    #[test]
    fn row_pass_recomputable() {
        let r = ReportRow::checked(1, "e", "m", 0.5, 1.0);
        assert!(r.pass && r.value <= r.tolerance);
        let r = ReportRow::checked(1, "e", "m", 2.0, 1.0);
        assert!(!r.pass);
    }

    #[test]
    fn fnv_is_stable() {
        assert_eq!(fnv1a(b"abc"), 0xe71fa2190541574b);
    }
}
