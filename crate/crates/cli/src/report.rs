use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::RunConfig;

pub const REPORT_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "reason", rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped(String),
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail => write!(f, "fail"),
            Verdict::Skipped(reason) => write!(f, "skipped({reason})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub claim_id: String,
    pub anchor: String,
    pub computed: Value,
    pub expected: Value,
    pub verdict: Verdict,
    pub field: String,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub version: String,
    pub config: RunConfig,
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn new(config: RunConfig, mut checks: Vec<CheckRecord>) -> Self {
        checks.sort_by(|a, b| a.claim_id.cmp(&b.claim_id));
        VerificationReport {
            version: REPORT_VERSION.to_string(),
            config,
            checks,
        }
    }

    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.verdict.is_fail())
    }

    pub fn check(&self, claim_id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.claim_id == claim_id)
    }

    /// The report with timings zeroed, for run-to-run comparison.
    pub fn canonical(&self) -> VerificationReport {
        let mut out = self.clone();
        for c in &mut out.checks {
            c.elapsed_ms = 0;
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let width = self.checks.iter().map(|c| c.claim_id.len()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{:<8} {:<width$}  computed={} expected={} field={} [{} ms]  ({})\n",
                c.verdict.to_string().split('(').next().unwrap_or("").to_uppercase(),
                c.claim_id,
                c.computed,
                c.expected,
                c.field,
                c.elapsed_ms,
                match &c.verdict {
                    Verdict::Skipped(reason) => reason.clone(),
                    _ => c.anchor.clone(),
                },
            ));
        }
        let pass = self.checks.iter().filter(|c| c.verdict == Verdict::Pass).count();
        let fail = self.checks.iter().filter(|c| c.verdict.is_fail()).count();
        out.push_str(&format!(
            "{pass} passed, {fail} failed, {} skipped\n",
            self.checks.len() - pass - fail
        ));
        out
    }
}
