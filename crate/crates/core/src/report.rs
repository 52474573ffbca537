//! Canonical report rows shared by the CLI and the suites. Reports must be
//! byte-identical across runs for a fixed configuration, so every number is
//! rendered through the formatters here: rationals as `num/den`, floats
//! with 12 significant digits.

use serde::Serialize;

use crate::infotheory::Rational;

/// Canonical float rendering: 12 significant digits, scientific form.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.11e}")
}

/// Canonical rational rendering as `num/den` (denominator kept even when 1).
pub fn fmt_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn serialize_rational<S: serde::Serializer>(
    r: &Rational,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    serializer.serialize_str(&fmt_rational(r))
}

/// One executed check: what was compared, the two sides, and the verdict.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRow {
    /// Stable identifier of the rule being checked, e.g. "cc-vs-ic".
    pub id: String,
    /// Instance detail (protocol, dimensions, indices), already rendered.
    pub detail: String,
    /// Left-hand side, canonically rendered; empty when not applicable.
    pub lhs: String,
    /// Right-hand side, canonically rendered; empty when not applicable.
    pub rhs: String,
    /// Signed margin or residual, canonically rendered; empty when the
    /// check is a pass/fail predicate with no numeric margin.
    pub margin: String,
    pub pass: bool,
    /// Present when the check could not run (budget exhaustion etc.).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CheckRow {
    /// A margin-style check: passes when `margin ≥ −tol`.
    pub fn margin(id: &str, detail: String, lhs: f64, rhs: f64, tol: f64) -> CheckRow {
        CheckRow {
            id: id.to_string(),
            detail,
            lhs: fmt_float(lhs),
            rhs: fmt_float(rhs),
            margin: fmt_float(lhs - rhs),
            pass: lhs - rhs >= -tol,
            error: None,
        }
    }

    /// A residual-style check: passes when `|residual| ≤ tol`.
    pub fn residual(id: &str, detail: String, residual: f64, tol: f64) -> CheckRow {
        CheckRow {
            id: id.to_string(),
            detail,
            lhs: String::new(),
            rhs: String::new(),
            margin: fmt_float(residual),
            pass: residual.abs() <= tol,
            error: None,
        }
    }

    /// An exact predicate check with rendered witnesses.
    pub fn exact(id: &str, detail: String, lhs: String, rhs: String, pass: bool) -> CheckRow {
        CheckRow {
            id: id.to_string(),
            detail,
            lhs,
            rhs,
            margin: String::new(),
            pass,
            error: None,
        }
    }

    /// A check that could not run.
    pub fn failed(id: &str, detail: String, error: String) -> CheckRow {
        CheckRow {
            id: id.to_string(),
            detail,
            lhs: String::new(),
            rhs: String::new(),
            margin: String::new(),
            pass: false,
            error: Some(error),
        }
    }

    pub fn is_budget_error(&self) -> bool {
        self.error.as_deref().is_some_and(|e| e.contains("budget"))
    }
}
