use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Parameters a check ran with.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub charge: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub specializations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl RunParams {
    pub fn nr(n: usize, r: usize) -> Self {
        RunParams { n: Some(n), r: Some(r), ..Default::default() }
    }
}

/// Outcome of one named check. A failing report always carries at least
/// one witness.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub params: RunParams,
    pub status: Status,
    /// "symbolic", "specialized" or "generic (sampled)".
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Map::is_empty", default)]
    pub data: Map<String, Value>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub witnesses: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_ms: Option<u64>,
}

impl VerificationReport {
    pub fn new(check: impl Into<String>, params: RunParams) -> Self {
        VerificationReport {
            check: check.into(),
            params,
            status: Status::Pass,
            mode: None,
            data: Map::new(),
            witnesses: Vec::new(),
            duration_ms: None,
        }
    }

    pub fn with_mode(mut self, mode: &str) -> Self {
        self.mode = Some(mode.to_string());
        self
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        self.data.insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
    }

    pub fn fail(&mut self, witness: impl Serialize) {
        self.status = Status::Fail;
        self.witnesses.push(serde_json::to_value(witness).expect("serializable"));
    }

    /// Records `witness` and fails unless `ok`.
    pub fn require(&mut self, ok: bool, witness: impl Serialize) {
        if !ok {
            self.fail(witness);
        }
    }

    pub fn skip(&mut self, reason: &str) {
        if self.status != Status::Fail {
            self.status = Status::Skipped;
        }
        self.set("skip_reason", reason);
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }

    /// Folds a sub-report in: a failing part fails the whole.
    pub fn absorb(&mut self, part: &VerificationReport) {
        if part.failed() {
            self.status = Status::Fail;
            self.witnesses.push(serde_json::json!({ "check": part.check, "witnesses": part.witnesses }));
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failing_report_has_witness() {
        let mut r = VerificationReport::new("x", RunParams::nr(2, 1));
        assert!(r.passed());
        r.require(false, "bad");
        assert!(r.failed());
        assert_eq!(r.witnesses.len(), 1);
        let line = r.to_json_line();
        assert_eq!(line, r#"{"check":"x","params":{"n":2,"r":1},"status":"fail","witnesses":["bad"]}"#);
        let back: VerificationReport = serde_json::from_str(&line).unwrap();
        assert_eq!(back, r);
    }
}
