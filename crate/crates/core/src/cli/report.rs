use std::collections::BTreeMap;
use std::path::Path;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use super::config::Scenario;
use super::ScenarioError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Comparison {
    AtMost,
    AtLeast,
}

/// One measured quantity against its threshold.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn at_most(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self::new(name, value, tolerance, Comparison::AtMost)
    }

    pub fn at_least(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self::new(name, value, tolerance, Comparison::AtLeast)
    }

    fn new(name: impl Into<String>, value: f64, tolerance: f64, comparison: Comparison) -> Self {
        // NaN fails either way
        let passed = match comparison {
            Comparison::AtMost => value <= tolerance,
            Comparison::AtLeast => value >= tolerance,
        };
        Self { name: name.into(), value, tolerance, comparison, passed, detail: None }
    }

    /// A check that could not be evaluated.
    pub fn errored(name: impl Into<String>, tolerance: f64, err: impl std::fmt::Display) -> Self {
        Self {
            name: name.into(),
            value: f64::NAN,
            tolerance,
            comparison: Comparison::AtMost,
            passed: false,
            detail: Some(format!("error: {err}")),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn line(&self) -> String {
        let op = match self.comparison {
            Comparison::AtMost => "<=",
            Comparison::AtLeast => ">=",
        };
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let mut s = format!("{verdict} {}: {:.6e} (need {op} {:e})", self.name, self.value, self.tolerance);
        if let Some(d) = &self.detail {
            s.push_str(" ; ");
            s.push_str(d);
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub library_version: String,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scenario: Option<Scenario>,
    pub checks: Vec<Check>,
    /// Seconds per pipeline stage.
    pub timings: BTreeMap<String, f64>,
    /// Named two-column tables, e.g. convergence studies.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub tables: BTreeMap<String, Vec<[f64; 2]>>,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub created_unix: u64,
}

impl RunReport {
    pub fn new(command: &str, scenario: Option<Scenario>) -> Self {
        let created_unix = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        Self {
            schema_version: SCHEMA_VERSION,
            library_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            scenario,
            checks: Vec::new(),
            timings: BTreeMap::new(),
            tables: BTreeMap::new(),
            passed: true,
            error: None,
            created_unix,
        }
    }

    pub fn push(&mut self, check: Check) {
        log::info!("{}", check.line());
        self.passed &= check.passed;
        self.checks.push(check);
    }

    pub fn fail_with(&mut self, err: impl std::fmt::Display) {
        self.passed = false;
        self.error = Some(err.to_string());
    }

    /// Runs `f` and records its wall time under `stage`.
    pub fn timed<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        *self.timings.entry(stage.to_string()).or_default() += start.elapsed().as_secs_f64();
        out
    }

    pub fn failing(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn write(&self, path: &Path) -> Result<(), ScenarioError> {
        let json = serde_json::to_string_pretty(self).map_err(|e| ScenarioError::Io(e.to_string()))?;
        super::csv::write_atomic(path, json.as_bytes())
    }
}
