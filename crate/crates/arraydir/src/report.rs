//! Result records emitted by the batch commands.

use serde::Serialize;
use serde_json::Value;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// One command's results: the resolved inputs echoed back, the outputs,
/// and enough metadata to reproduce the run.
#[derive(Debug, Clone, Serialize)]
pub struct ResultRecord {
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub tool_version: String,
}

impl ResultRecord {
    pub fn new(command: &str, inputs: Value, outputs: Value, seed: Option<u64>) -> Self {
        ResultRecord {
            command: command.to_string(),
            inputs,
            outputs,
            seed,
            tool_version: TOOL_VERSION.to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serialization cannot fail")
    }

    /// Aligned key/value rendering for terminals.
    pub fn to_table(&self) -> String {
        let mut rows: Vec<(String, String)> = vec![("command".into(), self.command.clone())];
        flatten("input", &self.inputs, &mut rows);
        flatten("output", &self.outputs, &mut rows);
        if let Some(seed) = self.seed {
            rows.push(("seed".into(), seed.to_string()));
        }
        rows.push(("tool_version".into(), self.tool_version.clone()));
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        rows.iter()
            .map(|(k, v)| format!("{k:width$}  {v}"))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

fn flatten(prefix: &str, value: &Value, rows: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&format!("{prefix}.{k}"), v, rows);
            }
        }
        Value::Array(items) if items.len() <= 8 => {
            rows.push((
                prefix.to_string(),
                serde_json::to_string(value).unwrap_or_default(),
            ));
            let _ = items;
        }
        Value::Array(items) => {
            rows.push((prefix.to_string(), format!("[{} entries]", items.len())));
        }
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn table_is_aligned_and_complete() {
        let rec = ResultRecord::new(
            "eval",
            json!({"theta0": 0.5, "nested": {"k": 1.0}}),
            json!({"directivity_dbi": 10.1}),
            Some(7),
        );
        let table = rec.to_table();
        assert!(table.contains("input.theta0"));
        assert!(table.contains("input.nested.k"));
        assert!(table.contains("output.directivity_dbi"));
        assert!(table.contains("seed"));
    }

    #[test]
    fn json_roundtrips() {
        let rec = ResultRecord::new("oupa", json!({"n1": 3}), json!({"dbi": 14.12}), None);
        let text = rec.to_json();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["command"], "oupa");
        assert_eq!(v["inputs"]["n1"], 3);
    }
}
