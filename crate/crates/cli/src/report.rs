use std::fmt::Write;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// observed and reported, never a failure
    Info,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub check: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trial: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Entry {
    pub fn new(check: impl Into<String>, status: Status) -> Self {
        Entry { check: check.into(), status, trial: None, witness: None, detail: String::new() }
    }

    pub fn pass(check: impl Into<String>) -> Self {
        Self::new(check, Status::Pass)
    }

    pub fn fail(check: impl Into<String>, witness: Vec<usize>, detail: impl Into<String>) -> Self {
        Entry { witness: Some(witness), detail: detail.into(), ..Self::new(check, Status::Fail) }
    }

    pub fn info(check: impl Into<String>, detail: impl Into<String>) -> Self {
        Entry { detail: detail.into(), ..Self::new(check, Status::Info) }
    }

    pub fn with_trial(mut self, t: usize) -> Self {
        self.trial = Some(t);
        self
    }

    pub fn with_detail(mut self, d: impl Into<String>) -> Self {
        self.detail = d.into();
        self
    }
}

/// Result of one command. Entry order is fixed by the command, never by
/// scheduling, so equal inputs render to equal bytes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub entries: Vec<Entry>,
    /// human-readable tables, printed before the checks
    #[serde(skip)]
    pub body: Vec<String>,
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    pub data: serde_json::Value,
}

impl Report {
    pub fn new(command: String) -> Self {
        Report { command, entries: Vec::new(), body: Vec::new(), data: serde_json::Value::Null }
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.entries.iter().filter(|e| e.status == status).count()
    }

    pub fn render_text(&self) -> String {
        let mut s = format!("# {}\n", self.command);
        for line in &self.body {
            writeln!(s, "{line}").unwrap();
        }
        for e in &self.entries {
            let tag = match e.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Info => "INFO",
            };
            write!(s, "{tag} {}", e.check).unwrap();
            if let Some(t) = e.trial {
                write!(s, " trial {t}").unwrap();
            }
            if let Some(w) = &e.witness {
                let w: Vec<String> = w.iter().map(ToString::to_string).collect();
                write!(s, " at {}", w.join(",")).unwrap();
            }
            if !e.detail.is_empty() {
                write!(s, ": {}", e.detail).unwrap();
            }
            s.push('\n');
        }
        writeln!(
            s,
            "summary: {} passed, {} failed, {} informational",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Info)
        )
        .unwrap();
        s
    }

    pub fn render_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serialises");
        v["passed"] = serde_json::Value::Bool(self.passed());
        let mut s = serde_json::to_string_pretty(&v).expect("report serialises");
        s.push('\n');
        s
    }
}
