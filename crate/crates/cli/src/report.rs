use std::collections::BTreeSet;
use std::fmt::Write as _;

use brace_core::fibration::{Status, Verdict, Witness};
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Serialize)]
pub struct TableSources {
    pub htpy: String,
    pub clutching: String,
}

/// One verdict under the aspect it answers (e.g. `h_split`, `rational`).
#[derive(Debug, Clone, Serialize)]
pub struct Entry {
    pub aspect: String,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub key: String,
    pub command: String,
    pub inputs: Value,
    pub verdicts: Vec<Entry>,
    pub details: Value,
    pub skipped: Vec<String>,
    pub tables: TableSources,
    pub tables_used: Vec<String>,
    pub version: String,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Holds,
    Fails,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Holds => 0,
            Outcome::Fails => 2,
        }
    }
}

impl Report {
    pub fn new(command: String, inputs: Value, tables: TableSources) -> Report {
        Report {
            key: String::new(),
            command,
            inputs,
            verdicts: vec![],
            details: Value::Null,
            skipped: vec![],
            tables,
            tables_used: vec![],
            version: env!("CARGO_PKG_VERSION").to_string(),
            outcome: Outcome::Holds,
        }
    }

    pub fn push(&mut self, aspect: &str, verdict: Verdict) {
        self.verdicts.push(Entry { aspect: aspect.to_string(), verdict });
    }

    /// Fills in derived fields; call once before emitting.
    pub fn finish(mut self, failed: bool) -> Report {
        let cites: BTreeSet<String> =
            self.verdicts.iter().flat_map(|e| e.verdict.citations.iter().cloned()).collect();
        self.tables_used = cites.into_iter().collect();
        self.key = format!("{} {}", self.command, serde_json::to_string(&self.inputs).unwrap_or_default());
        let fails = failed || self.verdicts.iter().any(|e| e.verdict.is_fail());
        self.outcome = if fails { Outcome::Fails } else { Outcome::Holds };
        self
    }

    /// Pretty JSON with sorted keys.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&v).expect("value serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "brace {} — {}", self.version, self.command);
        for e in &self.verdicts {
            let v = &e.verdict;
            let _ = writeln!(s, "\n[{}] {}: {}", status_label(v.status), e.aspect, v.claim);
            if let Some(w) = &v.witness {
                let _ = writeln!(s, "    witness: {}", witness_text(w));
            }
            if !v.certificate.is_null() {
                for line in cert_lines(&v.certificate) {
                    let _ = writeln!(s, "    {line}");
                }
            }
            for c in &v.caveats {
                let _ = writeln!(s, "    caveat {}: {}", c.tag, c.note);
            }
            for c in &v.citations {
                let _ = writeln!(s, "    see: {c}");
            }
        }
        if !self.details.is_null() {
            let _ = writeln!(s);
            for line in cert_lines(&self.details) {
                let _ = writeln!(s, "{line}");
            }
        }
        for k in &self.skipped {
            let _ = writeln!(s, "\nnot applicable: {k}");
        }
        let _ = writeln!(s, "\ntables: {} / {}", self.tables.htpy, self.tables.clutching);
        let _ = writeln!(s, "outcome: {}", if self.outcome == Outcome::Fails { "FAILS" } else { "HOLDS" });
        s
    }
}

fn status_label(s: Status) -> String {
    match s {
        Status::Holds => "HOLDS".into(),
        Status::Fails => "FAILS".into(),
        Status::HoldsUpToDegree(d) => format!("HOLDS ≤ {d}"),
        Status::Unknown => "UNKNOWN".into(),
    }
}

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::Lie { rendered, .. } => rendered.clone(),
        Witness::Group { group, coords, label } => format!("{label} ({coords:?} in {group})"),
        Witness::Formal { expression } => expression.clone(),
    }
}

fn cert_lines(v: &Value) -> Vec<String> {
    let mut out = vec![];
    flatten(v, "", &mut out);
    out
}

fn flatten(v: &Value, prefix: &str, out: &mut Vec<String>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(x, &p, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                flatten(x, &format!("{prefix}[{i}]"), out);
            }
        }
        Value::String(s) => out.push(format!("{prefix}: {s}")),
        other => out.push(format!("{prefix}: {other}")),
    }
}
