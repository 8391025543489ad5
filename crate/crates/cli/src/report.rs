use std::collections::BTreeMap;
use std::fmt::Write as _;

use gind_core::lab::Witness;
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// The report every subcommand emits. Apart from `runtime_ms`, its content
/// depends only on the arguments, input files and seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool_version: String,
    pub subcommand: String,
    pub inputs: BTreeMap<String, Value>,
    pub seed: u64,
    pub result: Value,
    pub witnesses: Vec<Witness>,
    pub method: Option<String>,
    pub tolerance: Option<f64>,
    pub runtime_ms: u64,
}

impl Report {
    pub fn new(subcommand: &str, seed: u64) -> Self {
        Report {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            subcommand: subcommand.to_string(),
            inputs: BTreeMap::new(),
            seed,
            result: Value::Null,
            witnesses: Vec::new(),
            method: None,
            tolerance: None,
            runtime_ms: 0,
        }
    }

    pub fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} (seed {})", self.subcommand, self.seed);
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "  {k}: {}", compact(v));
        }
        if let Some(m) = &self.method {
            let _ = writeln!(out, "method: {m}");
        }
        if let Some(t) = self.tolerance {
            let _ = writeln!(out, "tolerance: {t:e}");
        }
        text_value("", &self.result, &mut out);
        for w in &self.witnesses {
            let value = serde_json::to_value(&w.value).expect("witness serializes");
            let _ = writeln!(out, "witness {}: {}", w.name, compact(&value));
            if let Some(claim) = &w.claim {
                let claim = serde_json::to_value(claim).expect("claim serializes");
                let _ = writeln!(out, "  claim: {}", compact(&claim));
            }
        }
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn is_theorem_report(v: &Value) -> bool {
    v.get("theorem").is_some() && v.get("passed").is_some()
}

fn report_line(v: &Value) -> String {
    let mark = if v["passed"].as_bool() == Some(true) { "PASS" } else { "FAIL" };
    format!(
        "[{mark}] {} predicted={} achieved={} ({})",
        compact(&v["theorem"]),
        v["predicted"],
        v["achieved"],
        compact(&v["relation"]),
    )
}

fn text_value(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) if is_theorem_report(v) => {
            let _ = writeln!(out, "{}{}", label(prefix), report_line(v));
            for c in map.get("checks").and_then(Value::as_array).into_iter().flatten() {
                let mark = if c["passed"].as_bool() == Some(true) { "ok" } else { "FAILED" };
                let _ = writeln!(
                    out,
                    "    check {}: {} {} {} [{mark}]",
                    compact(&c["name"]),
                    c["value"],
                    compact(&c["relation"]),
                    c["bound"]
                );
            }
        }
        Value::Object(map) => {
            for (k, inner) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                text_value(&key, inner, out);
            }
        }
        Value::Array(items) if items.iter().any(is_theorem_report) => {
            for item in items {
                text_value(prefix, item, out);
            }
        }
        Value::Null => {}
        other => {
            let _ = writeln!(out, "{}{}", label(prefix), compact(other));
        }
    }
}

fn label(prefix: &str) -> String {
    if prefix.is_empty() {
        String::new()
    } else {
        format!("{prefix}: ")
    }
}
