//! Reports and their JSON / plain-text renderings.

use std::collections::BTreeMap;

use plie_core::exact::{format_rational, Tensor};
use serde_json::{json, Map, Value};

/// Machine-readable output format.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    True,
    False,
    Skipped,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Skipped => "SKIPPED",
        }
    }

    pub fn pass_fail(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn flag(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }
}

/// A basis tuple (1-based) where a compared quantity is off.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub label: String,
    pub index: Vec<usize>,
    pub lhs: String,
    pub rhs: String,
}

impl Witness {
    fn to_value(&self) -> Value {
        json!({ "label": self.label, "index": self.index, "lhs": self.lhs, "rhs": self.rhs })
    }

    fn short(&self) -> String {
        let ix: Vec<String> = self.index.iter().map(usize::to_string).collect();
        format!("{}({}): {} != {}", self.label, ix.join(","), self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub detail: BTreeMap<String, String>,
}

impl Check {
    pub fn new(name: impl Into<String>, verdict: Verdict) -> Self {
        Check { name: name.into(), verdict, witness: None, detail: BTreeMap::new() }
    }

    /// PASS when `witness` is `None`.
    pub fn gate(name: impl Into<String>, witness: Option<Witness>) -> Self {
        let verdict = Verdict::pass_fail(witness.is_none());
        Check { witness, ..Check::new(name, verdict) }
    }

    pub fn with_detail(mut self, key: &str, value: impl Into<String>) -> Self {
        self.detail.insert(key.to_string(), value.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub input: String,
    pub digest: String,
    pub checks: Vec<Check>,
    pub tensors: BTreeMap<String, Tensor>,
    pub exit: i32,
}

/// Rebuild every object with keys in sorted order, independent of how the
/// map type orders insertions.
pub fn sort_keys(v: Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut entries: Vec<(String, Value)> = m.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(entries.into_iter().map(|(k, v)| (k, sort_keys(v))).collect())
        }
        Value::Array(a) => Value::Array(a.into_iter().map(sort_keys).collect()),
        other => other,
    }
}

/// Two-space pretty JSON with sorted keys and a trailing newline.
pub fn canonical_json(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&sort_keys(v)).expect("plain JSON value");
    s.push('\n');
    s
}

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Nonzero entries keyed by the 1-based index, comma separated.
pub fn tensor_value(t: &Tensor) -> Value {
    let entries: Map<String, Value> = t
        .nonzero()
        .map(|(ix, v)| {
            let key: Vec<String> = ix.iter().map(|i| (i + 1).to_string()).collect();
            (key.join(","), Value::String(format_rational(v)))
        })
        .collect();
    json!({ "shape": t.shape(), "entries": entries })
}

impl Report {
    pub fn new(command: &str, input: &str, digest: &str) -> Self {
        Report {
            command: command.into(),
            input: input.into(),
            digest: digest.into(),
            checks: Vec::new(),
            tensors: BTreeMap::new(),
            exit: 0,
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn any_failed(&self) -> bool {
        self.checks.iter().any(|c| c.verdict == Verdict::Fail)
    }

    pub fn to_value(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                let mut m = Map::new();
                m.insert("name".into(), c.name.clone().into());
                m.insert("verdict".into(), c.verdict.as_str().into());
                if let Some(w) = &c.witness {
                    m.insert("witness".into(), w.to_value());
                }
                if !c.detail.is_empty() {
                    let d: Map<String, Value> =
                        c.detail.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
                    m.insert("detail".into(), Value::Object(d));
                }
                Value::Object(m)
            })
            .collect();
        let tensors: Map<String, Value> =
            self.tensors.iter().map(|(k, t)| (k.clone(), tensor_value(t))).collect();
        json!({
            "tool": "plie",
            "version": VERSION,
            "command": self.command,
            "input": { "name": self.input, "digest": self.digest },
            "checks": checks,
            "tensors": tensors,
            "exit": self.exit,
        })
    }

    pub fn to_json(&self) -> String {
        canonical_json(self.to_value())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("plie {VERSION} {}\ninput  {}  {}\n", self.command, self.input, self.digest);
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0).max(5);
        if !self.checks.is_empty() {
            out.push_str(&format!("{:<width$}  {:<7}  witness\n", "check", "verdict"));
            for c in &self.checks {
                let mut line = format!("{:<width$}  {:<7}", c.name, c.verdict.as_str());
                if let Some(w) = &c.witness {
                    line.push_str("  ");
                    line.push_str(&w.short());
                } else if !c.detail.is_empty() {
                    let d: Vec<String> = c.detail.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    line.push_str("  ");
                    line.push_str(&d.join(" "));
                }
                out.push_str(line.trim_end());
                out.push('\n');
            }
        }
        for (name, t) in &self.tensors {
            let nz: Vec<_> = t.nonzero().collect();
            let shape: Vec<String> = t.shape().iter().map(usize::to_string).collect();
            out.push_str(&format!("tensor {name} [{}] nonzero={}\n", shape.join("x"), nz.len()));
            for (ix, v) in nz {
                let key: Vec<String> = ix.iter().map(|i| (i + 1).to_string()).collect();
                out.push_str(&format!("  ({}) = {}\n", key.join(","), format_rational(v)));
            }
        }
        out.push_str(&format!("exit {}\n", self.exit));
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Text => self.to_text(),
        }
    }
}
