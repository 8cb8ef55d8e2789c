//! Per-check results shared by the suites and the command-line reports.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The check could not run, e.g. a budget guard fired.
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    /// Measured quantity compared against `bound`, when the check has one.
    pub metric: Option<f64>,
    pub bound: Option<f64>,
    /// The statement being reproduced.
    pub anchor: String,
    /// Failed only because of the tolerance in force; passes at the default tolerance.
    pub tolerance_related: bool,
    /// Left out of reports that must be reproducible byte for byte.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    pub detail: String,
}

impl CheckResult {
    /// Pass/fail check without a metric.
    pub fn simple(name: &str, holds: bool, anchor: &str, detail: String) -> Self {
        Self {
            name: name.to_string(),
            status: if holds { Status::Pass } else { Status::Fail },
            metric: None,
            bound: None,
            anchor: anchor.to_string(),
            tolerance_related: false,
            elapsed_ms: None,
            detail,
        }
    }

    pub fn with_metric(mut self, metric: f64, bound: f64) -> Self {
        self.metric = Some(metric);
        self.bound = Some(bound);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// One line for terminal output.
    pub fn summary_line(&self) -> String {
        let mut s = format!("[{}] {}", self.status, self.name);
        if let Some(m) = self.metric {
            s.push_str(&format!(" metric={m:.3e}"));
        }
        if let Some(b) = self.bound {
            s.push_str(&format!(" bound={b:.3e}"));
        }
        if self.tolerance_related {
            s.push_str(" (tolerance-related)");
        }
        if let Some(ms) = self.elapsed_ms {
            s.push_str(&format!(" ({ms} ms)"));
        }
        if !self.detail.is_empty() {
            s.push_str(" -- ");
            s.push_str(&self.detail);
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<CheckResult>,
    pub all_pass: bool,
}

impl SuiteReport {
    pub fn new(checks: Vec<CheckResult>) -> Self {
        let all_pass = checks.iter().all(CheckResult::passed);
        Self { checks, all_pass }
    }

    pub fn single(check: CheckResult) -> Self {
        Self::new(vec![check])
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed())
    }
}
