//! Variable exponent fields p(.) on (0,inf)^n.

use crate::error::{Error, Result};

/// How the exponent is generated. Decay-power fields are radial:
/// p(x) = p_inf + A / (e + |x|)^q.
#[derive(Debug, Clone, PartialEq)]
pub enum ExponentKind {
    Constant(f64),
    DecayPower { p_inf: f64, a: f64, q: f64 },
    /// Radial table (r_i, p_i), piecewise linear in |x|, clamped at the ends.
    Tabulated { radii: Vec<f64>, values: Vec<f64> },
    /// Pointwise Holder conjugate of another field.
    Conjugate(Box<ExponentField>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExponentField {
    pub kind: ExponentKind,
    pub p_minus: f64,
    pub p_plus: f64,
    pub p_infty: f64,
}

impl ExponentField {
    pub fn constant(p: f64) -> Result<Self> {
        if !(p >= 1.0) || !p.is_finite() {
            return Err(Error::Domain(format!("constant exponent must be >= 1, got {p}")));
        }
        Ok(Self {
            kind: ExponentKind::Constant(p),
            p_minus: p,
            p_plus: p,
            p_infty: p,
        })
    }

    pub fn decay_power(p_inf: f64, a: f64, q: f64) -> Result<Self> {
        if !(p_inf >= 1.0) || !(a >= 0.0) || !(q > 0.0) {
            return Err(Error::Domain(
                "decay-power exponent requires p_inf >= 1, A >= 0, q > 0".into(),
            ));
        }
        Ok(Self {
            kind: ExponentKind::DecayPower { p_inf, a, q },
            p_minus: p_inf,
            p_plus: p_inf + a / std::f64::consts::E.powf(q),
            p_infty: p_inf,
        })
    }

    pub fn tabulated(radii: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if radii.len() != values.len() || radii.len() < 2 {
            return Err(Error::Dimension(
                "tabulated exponent needs matching radii/values with at least 2 nodes".into(),
            ));
        }
        if radii.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Domain("tabulated radii must be strictly increasing".into()));
        }
        if values.iter().any(|&p| !(p >= 1.0)) {
            return Err(Error::Domain("tabulated exponent values must be >= 1".into()));
        }
        let p_minus = values.iter().cloned().fold(f64::INFINITY, f64::min);
        let p_plus = values.iter().cloned().fold(1.0, f64::max);
        let p_infty = *values.last().unwrap();
        Ok(Self {
            kind: ExponentKind::Tabulated { radii, values },
            p_minus,
            p_plus,
            p_infty,
        })
    }

    /// Pointwise Holder conjugate; requires p_minus > 1.
    pub fn conjugate(&self) -> Result<Self> {
        if self.p_minus <= 1.0 {
            return Err(Error::UnboundedNorm(
                "conjugate exponent is unbounded when p_minus = 1".into(),
            ));
        }
        let dual = |p: f64| p / (p - 1.0);
        Ok(Self {
            kind: ExponentKind::Conjugate(Box::new(self.clone())),
            // (p')^+ = (p^-)' and (p')^- = (p^+)'
            p_minus: dual(self.p_plus),
            p_plus: dual(self.p_minus),
            p_infty: dual(self.p_infty),
        })
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        match &self.kind {
            ExponentKind::Constant(p) => *p,
            ExponentKind::DecayPower { p_inf, a, q } => {
                let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
                p_inf + a / (std::f64::consts::E + r).powf(*q)
            }
            ExponentKind::Tabulated { radii, values } => {
                let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
                let p = if r <= radii[0] {
                    values[0]
                } else if r >= *radii.last().unwrap() {
                    *values.last().unwrap()
                } else {
                    let j = radii.partition_point(|&t| t < r).max(1);
                    let (r0, r1) = (radii[j - 1], radii[j]);
                    let (p0, p1) = (values[j - 1], values[j]);
                    p0 + (p1 - p0) * (r - r0) / (r1 - r0)
                };
                p.clamp(self.p_minus, self.p_plus)
            }
            ExponentKind::Conjugate(base) => {
                let p = base.eval(x);
                p / (p - 1.0)
            }
        }
    }

    /// True when the field satisfies the standing hypotheses 1 < p- <= p+ < inf.
    pub fn strictly_admissible(&self) -> bool {
        self.p_minus > 1.0 && self.p_plus.is_finite()
    }
}
