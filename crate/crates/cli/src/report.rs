use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub status: Status,
    pub results: Vec<CheckResult>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn new(command: &str, inputs: Map<String, Value>) -> Report {
        Report { command: command.to_string(), inputs, status: Status::Pass, results: Vec::new(), elapsed_ms: 0 }
    }

    pub fn push(&mut self, r: CheckResult) {
        debug_assert!(self.results.iter().all(|x| x.check != r.check), "duplicate check {}", r.check);
        self.results.push(r);
        self.status = self.overall();
    }

    pub fn pass(&mut self, check: impl Into<String>, witness: Option<Value>) {
        self.push(CheckResult { check: check.into(), status: Status::Pass, witness, obstruction: None });
    }

    pub fn fail(&mut self, check: impl Into<String>, obstruction: Option<Value>) {
        self.push(CheckResult { check: check.into(), status: Status::Fail, witness: None, obstruction });
    }

    pub fn unknown(&mut self, check: impl Into<String>) {
        self.push(CheckResult { check: check.into(), status: Status::Unknown, witness: None, obstruction: None });
    }

    /// Record a boolean outcome.
    pub fn expect(&mut self, check: impl Into<String>, ok: bool, detail: Option<Value>) {
        if ok {
            self.pass(check, detail)
        } else {
            self.fail(check, detail)
        }
    }

    /// Pass only if nothing failed. Unknowns do not fail a report.
    pub fn overall(&self) -> Status {
        if self.results.iter().any(|r| r.status == Status::Fail) {
            Status::Fail
        } else {
            Status::Pass
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}: {:?}\n", self.command, self.status);
        for r in &self.results {
            let tag = match r.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Unknown => "unknown",
            };
            out.push_str(&format!("  [{}] {}", tag, r.check));
            if let Some(Value::String(s)) = r.obstruction.as_ref().or(r.witness.as_ref()) {
                out.push_str(&format!(": {}", s));
            }
            out.push('\n');
        }
        let passed = self.results.iter().filter(|r| r.status == Status::Pass).count();
        out.push_str(&format!("{}/{} checks passed in {} ms\n", passed, self.results.len(), self.elapsed_ms));
        out
    }
}
