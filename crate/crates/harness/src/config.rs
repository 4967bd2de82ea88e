//! Flat `key = value` experiment configuration. Unknown keys are errors so a
//! typo cannot silently change an experiment.

use anyhow::{anyhow, bail, Context, Result};
use laguerre_core::specfun::laguerre::AlphaParam;
use laguerre_core::varlp::ExponentField;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum OperatorKind {
    Maximal,
    Riesz,
    GFunction,
    Multiplier,
    HAux,
}

impl OperatorKind {
    fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "maximal" => Self::Maximal,
            "riesz" => Self::Riesz,
            "gfunction" => Self::GFunction,
            "multiplier" => Self::Multiplier,
            "h-aux" => Self::HAux,
            other => bail!("unknown operator {other:?} (expected maximal, riesz, gfunction, multiplier, h-aux)"),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Maximal => "maximal",
            Self::Riesz => "riesz",
            Self::GFunction => "gfunction",
            Self::Multiplier => "multiplier",
            Self::HAux => "h-aux",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub dimension: usize,
    pub alpha: Vec<f64>,
    pub exponent_kind: String,
    pub exponent_constant: f64,
    pub exponent_p_infty: f64,
    pub exponent_a: f64,
    pub exponent_q: f64,
    pub exponent_radii: Vec<f64>,
    pub exponent_values: Vec<f64>,
    pub operators: Vec<OperatorKind>,
    pub grid_order: usize,
    pub tgrid_points: usize,
    pub tgrid_min: f64,
    pub tgrid_max: f64,
    pub samples_contexts: usize,
    pub samples_pairs: usize,
    pub samples_product: usize,
    pub seed: u64,
    pub out: PathBuf,
    pub tolerances: BTreeMap<String, f64>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            dimension: 1,
            alpha: vec![0.0],
            exponent_kind: "decay-power".into(),
            exponent_constant: 2.0,
            exponent_p_infty: 2.0,
            exponent_a: 1.0,
            exponent_q: 2.0,
            exponent_radii: Vec::new(),
            exponent_values: Vec::new(),
            operators: vec![
                OperatorKind::Maximal,
                OperatorKind::Riesz,
                OperatorKind::GFunction,
                OperatorKind::Multiplier,
                OperatorKind::HAux,
            ],
            grid_order: 48,
            tgrid_points: 64,
            tgrid_min: 0.05,
            tgrid_max: 20.0,
            samples_contexts: 500,
            samples_pairs: 1000,
            samples_product: 100_000,
            seed: 42,
            out: PathBuf::from("out"),
            tolerances: BTreeMap::new(),
        }
    }
}

/// Tolerance keys that may be overridden with `tol.<name>`.
const TOLERANCE_KEYS: &[&str] = &[
    "orthonormality",
    "eigenfunction",
    "kernel_cross",
    "kernel_cross_spectral",
    "conservation",
    "contraction",
    "semigroup_law",
    "subordination",
    "maximal_domination",
    "product_inequality",
    "vt_branch",
    "vt_comparability",
    "vt_stability",
    "g_first_order",
    "g_general",
    "riesz_value",
    "riesz_stability",
    "riesz_kernel_agreement",
    "multiplier_exact",
    "multiplier_sup",
    "varlp_classical",
    "varlp_unit_modular",
    "structure_residual",
    "norm_ratio_drift",
    "cz_drift",
];

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        let mut explicit_ops = false;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("line {}: expected `key = value`", lineno + 1))?;
            let key = key.trim();
            let value = value.trim();
            let ctx = |what: &str| format!("line {}: bad {what} value {value:?}", lineno + 1);
            match key {
                "dimension" => cfg.dimension = value.parse().with_context(|| ctx("usize"))?,
                "alpha" => cfg.alpha = parse_f64_list(value).with_context(|| ctx("f64 list"))?,
                "exponent.kind" => {
                    if !["constant", "decay-power", "tabulated"].contains(&value) {
                        bail!("line {}: unknown exponent kind {value:?}", lineno + 1);
                    }
                    cfg.exponent_kind = value.into();
                }
                "exponent.constant" => {
                    cfg.exponent_constant = value.parse().with_context(|| ctx("f64"))?
                }
                "exponent.p_infty" => {
                    cfg.exponent_p_infty = value.parse().with_context(|| ctx("f64"))?
                }
                "exponent.a" => cfg.exponent_a = value.parse().with_context(|| ctx("f64"))?,
                "exponent.q" => cfg.exponent_q = value.parse().with_context(|| ctx("f64"))?,
                "exponent.radii" => {
                    cfg.exponent_radii = parse_f64_list(value).with_context(|| ctx("f64 list"))?
                }
                "exponent.values" => {
                    cfg.exponent_values = parse_f64_list(value).with_context(|| ctx("f64 list"))?
                }
                "operators" => {
                    explicit_ops = true;
                    cfg.operators = if value.is_empty() {
                        Vec::new()
                    } else {
                        value
                            .split(',')
                            .map(|s| OperatorKind::parse(s.trim()))
                            .collect::<Result<_>>()?
                    };
                }
                "grid.order" => cfg.grid_order = value.parse().with_context(|| ctx("usize"))?,
                "tgrid.points" => cfg.tgrid_points = value.parse().with_context(|| ctx("usize"))?,
                "tgrid.min" => cfg.tgrid_min = value.parse().with_context(|| ctx("f64"))?,
                "tgrid.max" => cfg.tgrid_max = value.parse().with_context(|| ctx("f64"))?,
                "samples.contexts" => {
                    cfg.samples_contexts = value.parse().with_context(|| ctx("usize"))?
                }
                "samples.pairs" => {
                    cfg.samples_pairs = value.parse().with_context(|| ctx("usize"))?
                }
                "samples.product" => {
                    cfg.samples_product = value.parse().with_context(|| ctx("usize"))?
                }
                "seed" => cfg.seed = value.parse().with_context(|| ctx("u64"))?,
                "out" => cfg.out = PathBuf::from(value),
                _ => {
                    if let Some(tol_name) = key.strip_prefix("tol.") {
                        if !TOLERANCE_KEYS.contains(&tol_name) {
                            bail!("line {}: unknown tolerance key {key:?}", lineno + 1);
                        }
                        cfg.tolerances
                            .insert(tol_name.into(), value.parse().with_context(|| ctx("f64"))?);
                    } else {
                        bail!("line {}: unknown key {key:?}", lineno + 1);
                    }
                }
            }
        }
        let _ = explicit_ops;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        Self::parse(&text)
    }

    fn validate(&self) -> Result<()> {
        if self.dimension == 0 || self.dimension != self.alpha.len() {
            bail!(
                "dimension {} must match the alpha vector length {}",
                self.dimension,
                self.alpha.len()
            );
        }
        if self.alpha.iter().any(|a| *a < 0.0) {
            bail!("alpha entries must be >= 0");
        }
        if self.exponent_kind == "tabulated"
            && (self.exponent_radii.len() != self.exponent_values.len()
                || self.exponent_radii.len() < 2)
        {
            bail!("tabulated exponent needs matching radii/values lists with >= 2 nodes");
        }
        if !(self.tgrid_min > 0.0 && self.tgrid_max > self.tgrid_min) {
            bail!("need 0 < tgrid.min < tgrid.max");
        }
        Ok(())
    }

    pub fn alpha_param(&self) -> Result<AlphaParam> {
        AlphaParam::new(self.alpha.clone()).map_err(|e| anyhow!("{e}"))
    }

    pub fn exponent_field(&self) -> Result<ExponentField> {
        let field = match self.exponent_kind.as_str() {
            "constant" => ExponentField::constant(self.exponent_constant),
            "decay-power" => {
                ExponentField::decay_power(self.exponent_p_infty, self.exponent_a, self.exponent_q)
            }
            "tabulated" => ExponentField::tabulated(
                self.exponent_radii.clone(),
                self.exponent_values.clone(),
            ),
            other => bail!("unknown exponent kind {other:?}"),
        };
        field.map_err(|e| anyhow!("{e}"))
    }

    /// Theorem-regime check: the exponent must satisfy 1 < p- <= p+ < inf
    /// whenever operator experiments are requested.
    pub fn check_hypotheses(&self) -> Result<()> {
        if self.operators.is_empty() {
            return Ok(());
        }
        let p = self.exponent_field()?;
        if !p.strictly_admissible() {
            bail!(
                "exponent violates the standing hypotheses: need 1 < p- <= p+ < inf, got p- = {}",
                p.p_minus
            );
        }
        Ok(())
    }

    pub fn tol(&self, name: &str, default: f64) -> f64 {
        self.tolerances.get(name).copied().unwrap_or(default)
    }

    pub fn has_operator(&self, op: &OperatorKind) -> bool {
        self.operators.contains(op)
    }
}

fn parse_f64_list(value: &str) -> Result<Vec<f64>> {
    if value.is_empty() {
        return Ok(Vec::new());
    }
    value
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| anyhow!("bad float {s:?}: {e}"))
        })
        .collect()
}
