//! Outcome records shared by the verification suites.

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl CheckStatus {
    pub fn label(self) -> &'static str {
        match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "SKIP",
        }
    }
}

/// One verification outcome. `margin` is positive when the claim holds with
/// room to spare and negative when it is violated.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub margin: Option<f64>,
    pub detail: String,
}

impl CheckResult {
    /// Pass when `ok`, fail otherwise.
    pub fn new(name: &str, ok: bool, margin: Option<f64>, detail: String) -> Self {
        let status = if ok { CheckStatus::Pass } else { CheckStatus::Fail };
        CheckResult { name: name.to_string(), status, margin, detail }
    }

    pub fn skipped(name: &str, detail: &str) -> Self {
        CheckResult { name: name.to_string(), status: CheckStatus::Skipped, margin: None, detail: detail.to_string() }
    }

    pub fn failed(name: &str, err: &Error) -> Self {
        CheckResult { name: name.to_string(), status: CheckStatus::Fail, margin: None, detail: err.to_string() }
    }
}

/// Whether no check in `checks` failed.
pub fn all_passed(checks: &[CheckResult]) -> bool {
    checks.iter().all(|c| c.status != CheckStatus::Fail)
}
