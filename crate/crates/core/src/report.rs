//! Deterministic JSON envelopes and plain-text tables.

use num_bigint::BigInt;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::TensorElement;

/// `{command, inputs, result, provenance}`; keys serialize sorted.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportEnvelope {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub provenance: Vec<String>,
}

impl ReportEnvelope {
    pub fn new(command: &str, inputs: Value, result: Value, provenance: &[&str]) -> Self {
        ReportEnvelope {
            command: command.to_string(),
            inputs,
            result,
            provenance: provenance.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        // serde_json::Value maps are BTreeMaps, so key order is canonical
        let value = serde_json::to_value(self).expect("envelope serializes");
        serde_json::to_string_pretty(&value).expect("value serializes")
    }
}

pub fn bigint_as_string<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn element_as_lines<S: Serializer>(e: &TensorElement, s: S) -> Result<S::Ok, S::Error> {
    let lines = element_lines(e);
    let mut seq = s.serialize_seq(Some(lines.len()))?;
    for l in lines {
        seq.serialize_element(&l)?;
    }
    seq.end()
}

pub fn elements_as_lines<S: Serializer>(es: &[TensorElement], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(es.len()))?;
    for e in es {
        seq.serialize_element(&element_lines(e).join(" + "))?;
    }
    seq.end()
}

pub fn element_lines(e: &TensorElement) -> Vec<String> {
    e.to_string().lines().map(str::to_string).collect()
}

pub fn error_json(kind: &str, message: &str) -> String {
    serde_json::to_string_pretty(&json!({ "error": { "kind": kind, "message": message } }))
        .expect("serializes")
}

/// Two-column table in the `k | primes` layout.
pub fn prime_table(title: &str, header: (&str, &str), rows: &[(u32, Vec<u64>)]) -> String {
    let cells: Vec<(String, String)> = rows
        .iter()
        .map(|(k, ps)| {
            (
                k.to_string(),
                ps.iter().map(u64::to_string).collect::<Vec<_>>().join(", "),
            )
        })
        .collect();
    let w0 = cells
        .iter()
        .map(|c| c.0.len())
        .chain([header.0.len()])
        .max()
        .unwrap_or(1);
    let w1 = cells
        .iter()
        .map(|c| c.1.len())
        .chain([header.1.len()])
        .max()
        .unwrap_or(1);
    let rule = format!("+{}+{}+", "-".repeat(w0 + 2), "-".repeat(w1 + 2));
    let mut out = format!(
        "{title}\n{rule}\n| {:^w0$} | {:<w1$} |\n{rule}\n",
        header.0, header.1
    );
    for (a, b) in cells {
        out.push_str(&format!("| {a:^w0$} | {b:<w1$} |\n"));
    }
    out.push_str(&rule);
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelope_keys_are_sorted() {
        let env = ReportEnvelope::new(
            "x",
            json!({"b": 1, "a": 2}),
            json!({"z": 0, "y": [1]}),
            &["t"],
        );
        let s = env.to_json();
        let pos = |needle: &str| s.find(needle).unwrap();
        assert!(pos("\"command\"") < pos("\"inputs\""));
        assert!(pos("\"inputs\"") < pos("\"provenance\""));
        assert!(pos("\"a\"") < pos("\"b\""));
        assert!(pos("\"y\"") < pos("\"z\""));
    }

    #[test]
    fn table_layout() {
        let t = prime_table("T", ("k", "p"), &[(2, vec![2, 3]), (10, vec![2])]);
        assert_eq!(
            t,
            "T\n+----+------+\n| k  | p    |\n+----+------+\n| 2  | 2, 3 |\n| 10 | 2    |\n+----+------+\n"
        );
    }
}
