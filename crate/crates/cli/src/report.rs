use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Result,
    Error,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass | Outcome::Result => 0,
            Outcome::Fail => 1,
            Outcome::Error => 2,
        }
    }
}

/// One JSON document per invocation. Field order is fixed by the struct and
/// object keys inside `inputs`/`result` are sorted, so identical inputs give
/// identical bytes unless `timing_ms` is requested.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
    #[serde(skip)]
    pub summary: String,
}

impl Report {
    pub fn new(command: &str, inputs: Value, outcome: Outcome) -> Self {
        Self {
            command: command.to_string(),
            inputs,
            outcome,
            result: None,
            witnesses: Vec::new(),
            notes: Vec::new(),
            error: None,
            timing_ms: None,
            summary: String::new(),
        }
    }

    pub fn error(command: &str, inputs: Value, message: String) -> Self {
        let mut r = Self::new(command, inputs, Outcome::Error);
        r.summary = format!("{command}: error: {message}");
        r.error = Some(message);
        r
    }

    pub fn with_result(mut self, result: Value) -> Self {
        self.result = Some(result);
        self
    }

    pub fn with_summary(mut self, summary: impl Into<String>) -> Self {
        self.summary = summary.into();
        self
    }
}
