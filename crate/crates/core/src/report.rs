//! Check records and reports emitted by the verification suites and the
//! CLI. `pass` is always recomputable as `measured <= tolerance`; checks
//! whose natural reading is "quantity must exceed a floor" (convergence
//! orders) store the deficit `floor − quantity` with tolerance 0 and keep
//! the raw value in `detail`.

use serde::{Deserialize, Serialize};

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EnvironmentBlock {
    pub package: String,
    pub version: String,
    pub precision: String,
}

impl Default for EnvironmentBlock {
    fn default() -> Self {
        EnvironmentBlock {
            package: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            precision: "f64".to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub scenario: serde_json::Value,
    pub checks: Vec<CheckRecord>,
    pub environment: EnvironmentBlock,
}

impl Report {
    pub fn new(scenario: serde_json::Value) -> Self {
        Report {
            schema: REPORT_SCHEMA,
            scenario,
            checks: Vec::new(),
            environment: EnvironmentBlock::default(),
        }
    }

    /// Record a `measured ≤ tolerance` check.
    pub fn check(&mut self, name: impl Into<String>, measured: f64, tolerance: f64) -> bool {
        let pass = measured <= tolerance;
        self.checks.push(CheckRecord {
            name: name.into(),
            measured,
            tolerance,
            pass,
            detail: None,
        });
        pass
    }

    /// Record a `value ≥ floor` check as a deficit with tolerance 0.
    pub fn check_at_least(&mut self, name: impl Into<String>, value: f64, floor: f64) -> bool {
        let deficit = floor - value;
        let pass = deficit <= 0.0;
        self.checks.push(CheckRecord {
            name: name.into(),
            measured: deficit,
            tolerance: 0.0,
            pass,
            detail: Some(format!("value {value}, required at least {floor}")),
        });
        pass
    }

    pub fn with_detail(&mut self, detail: impl Into<String>) {
        if let Some(last) = self.checks.last_mut() {
            last.detail = Some(detail.into());
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_is_recomputable() {
        let mut r = Report::new(serde_json::json!({"name": "unit"}));
        r.check("a", 1e-12, 1e-10);
        r.check("b", 2e-10, 1e-10);
        r.check_at_least("order", 3.9, 1.9);
        for c in &r.checks {
            assert_eq!(c.pass, c.measured <= c.tolerance);
        }
        assert!(!r.passed());
    }
}
