use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Pass = 0,
    Witnesses = 1,
    Invalid = 2,
    BoundTooSmall = 3,
    Unresolved = 4,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: &str, columns: &[&str]) -> Self {
        Table { title: title.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: vec![] }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn render(&self, out: &mut String) {
        let _ = writeln!(out, "{}", self.title);
        if self.rows.is_empty() {
            let _ = writeln!(out, "  (empty)");
            return;
        }
        let mut w: Vec<usize> = self.columns.iter().map(String::len).collect();
        for r in &self.rows {
            for (i, c) in r.iter().enumerate() {
                w[i] = w[i].max(c.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let parts: Vec<String> = cells.iter().zip(&w).map(|(c, n)| format!("{c:<n$}")).collect();
            format!("  {}", parts.join("  ").trim_end())
        };
        let _ = writeln!(out, "{}", line(&self.columns));
        for r in &self.rows {
            let _ = writeln!(out, "{}", line(r));
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub input_digest: String,
    pub command: String,
    pub config: Map<String, Value>,
    pub flags: Map<String, Value>,
    pub result: Value,
    pub tables: Vec<Table>,
    #[serde(skip)]
    pub exit: Exit,
}

impl Report {
    pub fn new(command: &str, input_digest: String, config: Map<String, Value>) -> Self {
        Report {
            tool: "semitoric",
            version: env!("CARGO_PKG_VERSION"),
            input_digest,
            command: command.into(),
            config,
            flags: Map::new(),
            result: Value::Null,
            tables: vec![],
            exit: Exit::Pass,
        }
    }

    pub fn flag(&mut self, name: &str, v: impl Into<Value>) {
        self.flags.insert(name.into(), v.into());
    }

    pub fn json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "semitoric {} {}", self.version, self.command);
        let _ = writeln!(out, "input sha256 {}", self.input_digest);
        let w = self.config.keys().chain(self.flags.keys()).map(String::len).max().unwrap_or(0);
        for (k, v) in self.config.iter().chain(&self.flags) {
            let v = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            let _ = writeln!(out, "{k:<w$}  {v}");
        }
        for t in &self.tables {
            out.push('\n');
            t.render(&mut out);
        }
        out
    }
}

pub fn vec_label(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

pub fn gens_label(gens: &[Vec<i64>]) -> String {
    gens.iter().map(|g| vec_label(g)).collect::<Vec<_>>().join(" ")
}
