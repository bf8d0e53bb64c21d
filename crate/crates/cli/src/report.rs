use std::fmt::Write as _;

use serde_json::{json, Map, Value};
use ybe_core::rewrite::ExponentVector;
use ybe_core::SolutionMap;

/// Version tag carried by every JSON document the tool prints.
pub const SCHEMA: &str = "ybe-cli/1";

/// Exit status of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A checked property failed. The report carries the trace.
    Violation,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Violation => 1,
        }
    }
}

/// Text and JSON renderings of one command's findings.
pub struct Report {
    pub command: &'static str,
    pub status: Status,
    pub text: String,
    pub fields: Map<String, Value>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report { command, status: Status::Ok, text: String::new(), fields: Map::new() }
    }

    pub fn line(&mut self, text: impl AsRef<str>) -> &mut Self {
        self.text.push_str(text.as_ref());
        self.text.push('\n');
        self
    }

    /// Adds a line `key value` to the text and the same value under `key` in JSON.
    pub fn field(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        let value = value.into();
        let shown = match &value {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        let _ = writeln!(self.text, "{key} {shown}");
        self.fields.insert(key.to_string(), value);
        self
    }

    /// JSON only.
    pub fn data(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.to_string(), value.into());
        self
    }

    /// Records a failed check; the command will exit with status 1.
    pub fn violation(&mut self, message: impl Into<String>) -> &mut Self {
        let message = message.into();
        let _ = writeln!(self.text, "VIOLATION {message}");
        self.status = Status::Violation;
        match self.fields.entry("violations").or_insert_with(|| json!([])) {
            Value::Array(list) => list.push(Value::String(message)),
            _ => unreachable!("violations is always an array"),
        }
        self
    }

    pub fn check(&mut self, ok: bool, message: impl FnOnce() -> String) -> &mut Self {
        if !ok {
            self.violation(message());
        }
        self
    }

    pub fn to_json(&self) -> Value {
        let mut doc = Map::new();
        doc.insert("schema".into(), SCHEMA.into());
        doc.insert("command".into(), self.command.into());
        doc.insert("ok".into(), (self.status == Status::Ok).into());
        doc.extend(self.fields.clone());
        Value::Object(doc)
    }
}

/// Labels of a word, space separated.
pub fn word(s: &SolutionMap, w: &[usize]) -> String {
    w.iter().map(|&x| s.label(x)).collect::<Vec<_>>().join(" ")
}

/// A normal monomial written in the given order with exponents, e.g. `x1^2 x3`.
pub fn monomial(s: &SolutionMap, order: &[usize], e: &ExponentVector) -> String {
    let parts: Vec<String> = order
        .iter()
        .filter(|&&x| e.0[x] > 0)
        .map(|&x| match e.0[x] {
            1 => s.label(x),
            k => format!("{}^{k}", s.label(x)),
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ybe_core::known;

    #[test]
    fn violations_set_status_and_collect() {
        let mut rep = Report::new("t");
        rep.field("n", 3).check(true, || unreachable!());
        assert_eq!(rep.status, Status::Ok);
        rep.violation("first").check(false, || "second".into());
        assert_eq!(rep.status.code(), 1);
        let doc = rep.to_json();
        assert_eq!(doc["ok"], false);
        assert_eq!(doc["n"], 3);
        assert_eq!(doc["violations"], json!(["first", "second"]));
        assert_eq!(rep.text, "n 3\nVIOLATION first\nVIOLATION second\n");
    }

    #[test]
    fn monomials_follow_the_order() {
        let s = known::n4();
        let e = ExponentVector(vec![0, 2, 1, 0]);
        assert_eq!(monomial(&s, &[0, 1, 2, 3], &e), "x2^2 x3");
        assert_eq!(monomial(&s, &[2, 1, 0, 3], &e), "x3 x2^2");
        assert_eq!(monomial(&s, &[0, 1, 2, 3], &ExponentVector::zero(4)), "1");
        assert_eq!(word(&s, &[3, 0]), "x4 x1");
    }
}
