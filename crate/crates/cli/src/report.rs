//! Report assembly and rendering. JSON objects use sorted keys, so output
//! is byte-stable for fixed input.

use serde_json::{json, Value};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Json,
}

/// A successful command result.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub json: Value,
    pub human: String,
    /// `Some(false)` turns into exit status 1.
    pub verdict: Option<bool>,
}

#[derive(Debug)]
pub struct Report {
    pub command: String,
    pub outcome: Result<Outcome, CliError>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match &self.outcome {
            Ok(o) if o.verdict == Some(false) => 1,
            Ok(_) => 0,
            Err(e) => e.exit_code(),
        }
    }

    pub fn to_json(&self) -> Value {
        match &self.outcome {
            Ok(o) => json!({
                "command": self.command,
                "status": if o.verdict == Some(false) { "false" } else { "ok" },
                "result": o.json,
            }),
            Err(e) => json!({
                "command": self.command,
                "status": "error",
                "error": {
                    "code": e.code(),
                    "message": e.to_string(),
                    "location": e.location().map(|l| json!({"file": l.file, "line": l.line, "column": l.column})),
                },
            }),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Human => match &self.outcome {
                Ok(o) => o.human.clone(),
                Err(e) => format!("error[{}]: {e}\n", e.code()),
            },
        }
    }
}

/// Left-aligned columns separated by two spaces.
pub fn table(rows: &[Vec<String>]) -> String {
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut sizes = vec![0; width];
    for r in rows {
        for (k, cell) in r.iter().enumerate() {
            sizes[k] = sizes[k].max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for r in rows {
        let mut line = String::new();
        for (k, cell) in r.iter().enumerate() {
            if k + 1 == r.len() {
                line.push_str(cell);
            } else {
                line.push_str(cell);
                line.push_str(&" ".repeat(sizes[k] - cell.chars().count() + 2));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn columns_are_aligned() {
        let t = table(&[vec!["a".into(), "bb".into()], vec!["ccc".into(), "d".into()]]);
        assert_eq!(t, "a    bb\nccc  d\n");
    }
}
