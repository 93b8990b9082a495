//! Check outcomes: one JSON record per check, and a plain-text summary table.

use serde::Serialize;
use serde_json::Value;
use std::fmt::Write as _;

/// Pass/fail plus, on failure, a description of the counterexample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict { passed: true, witness: None }
    }

    pub fn fail(witness: impl Into<String>) -> Self {
        Verdict { passed: false, witness: Some(witness.into()) }
    }

    pub fn check(ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Self::pass()
        } else {
            Self::fail(witness())
        }
    }

    /// The first failure, or a pass.
    pub fn all(verdicts: impl IntoIterator<Item = Verdict>) -> Self {
        verdicts.into_iter().find(|v| !v.passed).unwrap_or_else(Verdict::pass)
    }
}

/// One line of the machine-readable stream.
#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub suite: String,
    pub check: String,
    pub params: Value,
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Record {
    pub fn new(suite: &str, check: impl Into<String>, params: Value, passed: bool, witness: Option<Value>) -> Self {
        Record {
            suite: suite.to_string(),
            check: check.into(),
            params,
            verdict: if passed { "pass" } else { "fail" },
            witness,
        }
    }

    pub fn from_verdict(suite: &str, check: impl Into<String>, params: Value, v: &Verdict) -> Self {
        Self::new(suite, check, params, v.passed, v.witness.clone().map(Value::String))
    }

    /// A check not run because the time budget ran out.
    pub fn skipped(suite: &str, check: impl Into<String>, params: Value) -> Self {
        Record { verdict: "skip", ..Self::new(suite, check, params, true, None) }
    }

    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }

    pub fn failed(&self) -> bool {
        self.verdict == "fail"
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

/// Human summary: per (suite, check), how many passed.
pub fn summary_table(records: &[Record]) -> String {
    let mut rows: Vec<(String, String, usize, usize, usize)> = Vec::new();
    for r in records {
        let idx = match rows.iter().position(|row| row.0 == r.suite && row.1 == r.check) {
            Some(i) => i,
            None => {
                rows.push((r.suite.clone(), r.check.clone(), 0, 0, 0));
                rows.len() - 1
            }
        };
        let row = &mut rows[idx];
        row.2 += r.passed() as usize;
        row.3 += 1;
        row.4 += r.failed() as usize;
    }
    let w_suite = rows.iter().map(|r| r.0.len()).chain([5]).max().unwrap_or(5);
    let w_check = rows.iter().map(|r| r.1.len()).chain([5]).max().unwrap_or(5);
    let mut out = String::new();
    let _ = writeln!(out, "{:<w_suite$}  {:<w_check$}  {:>7}  status", "suite", "check", "passed");
    for (suite, check, ok, total, failed) in &rows {
        let status = match (*failed, ok == total) {
            (0, true) => "ok",
            (0, false) => "skipped",
            _ => "FAIL",
        };
        let _ = writeln!(out, "{suite:<w_suite$}  {check:<w_check$}  {:>7}  {status}", format!("{ok}/{total}"));
    }
    for r in records.iter().filter(|r| r.failed()) {
        let witness = r.witness.as_ref().map(|w| w.to_string()).unwrap_or_default();
        let _ = writeln!(out, "FAIL {} {} {} {}", r.suite, r.check, r.params, witness);
    }
    out
}
