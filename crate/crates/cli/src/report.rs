//! The JSON report document and its table rendering.

use fitmetrics::MetricValue;
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricEntry {
    pub id: String,
    pub value: Option<f64>,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<&'static str>,
    pub formula_note: String,
}

impl MetricEntry {
    pub fn new(value: &MetricValue, formula_note: impl Into<String>) -> Self {
        Self::with_id(value.id(), value, formula_note)
    }

    pub fn with_id(
        id: impl Into<String>,
        value: &MetricValue,
        formula_note: impl Into<String>,
    ) -> Self {
        Self {
            id: id.into(),
            value: value.value(),
            status: if value.is_defined() {
                "defined"
            } else {
                "undefined"
            },
            reason: value.reason().map(|r| r.as_str()),
            formula_note: formula_note.into(),
        }
    }

    pub fn is_defined(&self) -> bool {
        self.value.is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub tp: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
    pub tn: u64,
}

/// Keys serialize in declaration order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDocument {
    pub tool_version: &'static str,
    pub command: String,
    pub input_digest: String,
    pub metrics: Vec<MetricEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub confusion: Option<Counts>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
    pub warnings: Vec<String>,
}

impl ReportDocument {
    pub fn new(command: &str, inputs: &[&[u8]]) -> Self {
        Self {
            tool_version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            input_digest: digest(inputs),
            metrics: Vec::new(),
            confusion: None,
            details: None,
            warnings: Vec::new(),
        }
    }

    pub fn any_undefined(&self) -> bool {
        self.metrics.iter().any(|m| !m.is_defined())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let width = self
            .metrics
            .iter()
            .map(|m| m.id.len())
            .max()
            .unwrap_or(0)
            .max(6);
        let mut out = format!("{} (fitmetrics {})\n", self.command, self.tool_version);
        if let Some(c) = &self.confusion {
            out.push_str(&format!(
                "confusion: tp={} fp={} fn={} tn={}\n",
                c.tp, c.fp, c.fn_, c.tn
            ));
        }
        out.push_str(&format!("{:<width$}  {}\n", "metric", "value"));
        for m in &self.metrics {
            let shown = match (m.value, m.reason) {
                (Some(v), _) => format!("{v}"),
                (None, Some(r)) => format!("undefined ({r})"),
                (None, None) => "undefined".to_string(),
            };
            out.push_str(&format!("{:<width$}  {}\n", m.id, shown));
        }
        if let Some(details) = &self.details {
            out.push_str(&format!("details: {details}\n"));
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out
    }
}

/// SHA-256 over the inputs in order, each prefixed with its byte length.
pub fn digest(inputs: &[&[u8]]) -> String {
    let mut hasher = Sha256::new();
    for input in inputs {
        hasher.update((input.len() as u64).to_le_bytes());
        hasher.update(input);
    }
    hex::encode(hasher.finalize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use fitmetrics::Reason;

    #[test]
    fn undefined_entry_has_null_value() {
        let e = MetricEntry::new(&MetricValue::undefined("MAPE", Reason::ZeroActual), "note");
        let json = serde_json::to_string(&e).unwrap();
        assert_eq!(
            json,
            r#"{"id":"MAPE","value":null,"status":"undefined","reason":"zero_actual","formula_note":"note"}"#
        );
    }

    #[test]
    fn defined_entry_round_trips_float() {
        let v = 0.1 + 0.2;
        let e = MetricEntry::new(&MetricValue::defined("X", v), "");
        let json = serde_json::to_string(&e).unwrap();
        let back: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(back["value"].as_f64(), Some(v));
        assert!(!json.contains("reason"));
    }

    #[test]
    fn key_order_is_fixed() {
        let doc = ReportDocument::new("regress", &[b"a,p\n1,2\n"]);
        let json = doc.to_json();
        let keys = [
            "tool_version",
            "command",
            "input_digest",
            "metrics",
            "warnings",
        ];
        let positions: Vec<usize> = keys
            .iter()
            .map(|k| json.find(&format!("\"{k}\"")).unwrap())
            .collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn digest_separates_inputs() {
        assert_ne!(digest(&[b"ab", b"c"]), digest(&[b"a", b"bc"]));
        assert_eq!(digest(&[b"x"]).len(), 64);
    }
}
