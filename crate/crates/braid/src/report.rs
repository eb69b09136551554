//! Machine-readable check records and reports.
//!
//! A report is deterministic: identical invocations produce byte-identical
//! JSON apart from the top-level timestamp, which comparisons exclude.

use serde::Serialize;

use crate::linalg::SparseMat;
use crate::ring::Ring;

#[derive(Clone, Debug, Serialize, PartialEq)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Mode {
    /// Identity verified on symbolic variables.
    Symbolic,
    /// Identity verified on an evaluation grid exceeding per-variable degree
    /// bounds, which makes the check a proof by interpolation.
    Sampled { bounds: Vec<(String, u32)>, points: usize },
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub description: String,
    pub mode: Mode,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Record a boolean outcome.
pub fn check(
    id: &str,
    description: &str,
    mode: Mode,
    ok: bool,
    witness: Option<String>,
) -> CheckRecord {
    CheckRecord {
        id: id.to_string(),
        description: description.to_string(),
        mode,
        status: if ok { Status::Pass } else { Status::Fail },
        witness: if ok { None } else { witness },
    }
}

/// Record that a matrix residual vanishes.
pub fn check_zero<R: Ring>(
    id: &str,
    description: &str,
    mode: Mode,
    residual: &SparseMat<R>,
) -> CheckRecord {
    check(id, description, mode, residual.is_zero(), residual.witness())
}

/// Record that two matrices agree entrywise.
pub fn check_eq<R: Ring>(
    id: &str,
    description: &str,
    mode: Mode,
    lhs: &SparseMat<R>,
    rhs: &SparseMat<R>,
) -> CheckRecord {
    check_zero(id, description, mode, &lhs.sub(rhs))
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    /// Seconds since the epoch; excluded from determinism comparisons.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
    pub suite: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub checks: Vec<CheckRecord>,
    pub passed: bool,
}

impl Report {
    pub fn new(
        suite: &str,
        family: Option<String>,
        n: Option<usize>,
        mut checks: Vec<CheckRecord>,
    ) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let passed = checks.iter().all(CheckRecord::passed);
        Report {
            tool: "braid".into(),
            version: crate::VERSION.into(),
            timestamp: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .ok()
                .map(|d| d.as_secs()),
            suite: suite.into(),
            family,
            n,
            checks,
            passed,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    /// One line per check, human-readable.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let mode = match &c.mode {
                Mode::Symbolic => "symbolic".to_string(),
                Mode::Sampled { bounds, points } => format!(
                    "sampled[{} pts; bounds {}]",
                    points,
                    bounds
                        .iter()
                        .map(|(v, b)| format!("{}<={}", v, b))
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
            };
            s.push_str(&format!(
                "{} {:32} [{}] {}\n",
                if c.passed() { "PASS" } else { "FAIL" },
                c.id,
                mode,
                c.description
            ));
            if let Some(w) = &c.witness {
                s.push_str(&format!("     witness: {}\n", w));
            }
        }
        s.push_str(&format!(
            "{}: {} checks, {}\n",
            self.suite,
            self.checks.len(),
            if self.passed { "all passed" } else { "FAILURES PRESENT" }
        ));
        s
    }
}
