//! Machine-readable verification reports.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        })
    }
}

/// Outcome of one verified claim.
///
/// `elapsed_ms` is only serialized when timing was requested, so that
/// reports from repeated runs compare byte for byte.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub claim: String,
    pub reference: String,
    pub parameters: BTreeMap<String, Value>,
    pub status: Status,
    pub dims: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    #[serde(skip)]
    started: Option<Instant>,
}

impl Report {
    /// A passing report; later `fail` calls downgrade it.
    pub fn new(claim: impl Into<String>, reference: impl Into<String>) -> Self {
        Report {
            claim: claim.into(),
            reference: reference.into(),
            parameters: BTreeMap::new(),
            status: Status::Pass,
            dims: BTreeMap::new(),
            witness: None,
            elapsed_ms: None,
            started: Some(Instant::now()),
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.parameters.insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
        self
    }

    pub fn set_dim(&mut self, key: &str, value: impl Serialize) {
        self.dims.insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
    }

    /// Records a failure; the first witness is kept.
    pub fn fail(&mut self, witness: impl Into<String>) {
        self.status = Status::Fail;
        if self.witness.is_none() {
            self.witness = Some(witness.into());
        }
    }

    /// Fails with the witness produced by `witness` unless `ok`.
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) -> bool {
        if !ok {
            self.fail(witness());
        }
        ok
    }

    pub fn skip(mut self, reason: impl Into<String>) -> Self {
        self.status = Status::Skipped;
        self.witness = Some(reason.into());
        self
    }

    /// Note attached to a passing report, for example a recorded caveat.
    pub fn note(&mut self, text: impl Into<String>) {
        if self.witness.is_none() {
            self.witness = Some(text.into());
        }
    }

    /// Stops the clock when `timed`; otherwise leaves it running so a
    /// later timed `finish` still sees the full duration.
    pub fn finish(mut self, timed: bool) -> Self {
        if timed {
            if let Some(t) = self.started.take() {
                self.elapsed_ms = Some(t.elapsed().as_millis() as u64);
            }
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("serializable")
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        let params: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={}", compact(v))).collect();
        let dims: Vec<String> = self.dims.iter().map(|(k, v)| format!("{k}={}", compact(v))).collect();
        let mut s = format!("{} {} [{}]", self.status, self.claim, params.join(" "));
        if !dims.is_empty() {
            s.push_str(&format!(" dims: {}", dims.join(" ")));
        }
        if let Some(w) = &self.witness {
            s.push_str(&format!(" ({w})"));
        }
        s
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Serializes a list of reports as pretty JSON with a trailing newline.
pub fn reports_to_json(reports: &[Report]) -> String {
    let mut s = serde_json::to_string_pretty(&reports.iter().map(Report::to_json).collect::<Vec<_>>()).expect("json");
    s.push('\n');
    s
}

/// Tab-separated rows `claim, status, parameters, dims, witness`, with a header.
pub fn reports_to_tsv(reports: &[Report]) -> String {
    let join = |m: &BTreeMap<String, Value>| m.iter().map(|(k, v)| format!("{k}={}", compact(v))).collect::<Vec<_>>().join(" ");
    let mut s = String::from("claim\tstatus\tparameters\tdims\twitness\n");
    for r in reports {
        let witness = r.witness.as_deref().unwrap_or("").replace(['\t', '\n'], " ");
        s.push_str(&format!("{}\t{}\t{}\t{}\t{}\n", r.claim, r.status, join(&r.parameters), join(&r.dims), witness));
    }
    s
}
