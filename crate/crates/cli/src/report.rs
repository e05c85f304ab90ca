use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};
use slopelab::rational::{self, Rational};

/// Result of one command: the echo of what ran, its inputs and outputs.
/// Never carries timings, so the printed form is reproducible.
#[derive(Debug)]
pub struct Report {
    command: String,
    inputs: Map<String, Value>,
    outputs: Map<String, Value>,
    passed: bool,
}

pub fn r(x: &Rational) -> Value {
    Value::String(rational::format(x))
}

pub fn value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report values serialize")
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), inputs: Map::new(), outputs: Map::new(), passed: true }
    }

    pub fn input(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_string(), v.into());
        self
    }

    pub fn output(&mut self, key: &str, v: impl Into<Value>) {
        self.outputs.insert(key.to_string(), v.into());
    }

    pub fn require(&mut self, ok: bool) {
        self.passed &= ok;
    }

    pub fn passed(&self) -> bool {
        self.passed
    }

    pub fn to_json(&self) -> String {
        let v = serde_json::json!({
            "schema": 1,
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "passed": self.passed,
        });
        serde_json::to_string_pretty(&v).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "command: {}", self.command).unwrap();
        render(&mut out, "inputs", &Value::Object(self.inputs.clone()), 0);
        render(&mut out, "outputs", &Value::Object(self.outputs.clone()), 0);
        writeln!(out, "passed: {}", self.passed).unwrap();
        out
    }
}

fn render(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Null => {}
        Value::Object(m) if !m.is_empty() => {
            writeln!(out, "{pad}{key}:").unwrap();
            for (k, v) in m {
                render(out, k, v, depth + 1);
            }
        }
        Value::String(s) => writeln!(out, "{pad}{key}: {s}").unwrap(),
        other => writeln!(out, "{pad}{key}: {other}").unwrap(),
    }
}
