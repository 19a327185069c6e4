use std::time::Instant;

use implic::scalar::format_short;
use implic::{NumericMode, Rational, SetFunction, VarSet};
use serde_json::{json, Map, Value};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Exit status of a command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Holds = 0,
    Fails = 1,
    Error = 2,
}

/// Accumulates both renderings of a command's result.
pub struct Report {
    command: Vec<String>,
    mode: NumericMode,
    started: Instant,
    fields: Map<String, Value>,
    lines: Vec<String>,
    pub status: Status,
}

impl Report {
    pub fn new(command: Vec<String>, mode: NumericMode) -> Self {
        Report {
            command,
            mode,
            started: Instant::now(),
            fields: Map::new(),
            lines: Vec::new(),
            status: Status::Holds,
        }
    }

    pub fn set_mode(&mut self, mode: NumericMode) {
        self.mode = mode;
    }

    pub fn field(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.insert(key.to_string(), value.into());
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    pub fn fail(&mut self) {
        self.status = Status::Fails;
    }

    pub fn to_json(&self) -> Value {
        let mut out = Map::new();
        out.insert("schema_version".into(), json!(REPORT_SCHEMA_VERSION));
        out.insert("command".into(), json!(self.command));
        out.insert("mode".into(), json!(mode_name(self.mode)));
        out.insert("exit_code".into(), json!(self.status as i32));
        out.insert(
            "elapsed_ms".into(),
            json!(self.started.elapsed().as_secs_f64() * 1e3),
        );
        out.extend(self.fields.clone());
        Value::Object(out)
    }

    pub fn to_text(&self) -> String {
        let mut s = self.lines.join("\n");
        s.push_str(&format!(
            "\n[{} arithmetic, {:.1} ms]",
            mode_name(self.mode),
            self.started.elapsed().as_secs_f64() * 1e3
        ));
        s
    }
}

pub fn error_json(command: &[String], message: &str) -> Value {
    json!({
        "schema_version": REPORT_SCHEMA_VERSION,
        "command": command,
        "exit_code": Status::Error as i32,
        "error": message,
    })
}

fn mode_name(mode: NumericMode) -> &'static str {
    match mode {
        NumericMode::Exact => "exact",
        NumericMode::Approximate => "f64",
    }
}

pub fn rat(r: &Rational) -> String {
    format_short(r)
}

/// The full `2^n` value table, keyed by set.
pub fn table_rational(h: &SetFunction<Rational>) -> (Value, Vec<String>) {
    let u = h.universe();
    let mut map = Map::new();
    let mut lines = Vec::new();
    for m in 0..u.num_subsets() as u32 {
        let w = VarSet::from_bits(m);
        let v = rat(h.get(w));
        lines.push(format!("  h({}) = {v}", u.fmt_set(w)));
        map.insert(u.fmt_set(w), Value::String(v));
    }
    (Value::Object(map), lines)
}

pub fn table_f64(h: &SetFunction<f64>) -> (Value, Vec<String>) {
    let u = h.universe();
    let mut map = Map::new();
    let mut lines = Vec::new();
    for m in 0..u.num_subsets() as u32 {
        let w = VarSet::from_bits(m);
        let v = *h.get(w);
        lines.push(format!("  h({}) = {v:.6}", u.fmt_set(w)));
        map.insert(u.fmt_set(w), json!(v));
    }
    (Value::Object(map), lines)
}
