use std::io::{self, Write};

use kekule::bits::BitSet;
use kekule::graph::Graph;
use serde_json::Value;

/// Command output kept in both renderings.
pub struct Report {
    text: String,
    notes: String,
    pub json: Value,
}

impl Report {
    pub fn new() -> Self {
        Report {
            text: String::new(),
            notes: String::new(),
            json: Value::Null,
        }
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    /// Text-mode line for stderr.
    pub fn note(&mut self, s: impl AsRef<str>) {
        self.notes.push_str(s.as_ref());
        self.notes.push('\n');
    }

    pub fn push(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        if !self.text.ends_with('\n') {
            self.text.push('\n');
        }
    }

    /// Writes to stdout; a closed pipe is not an error.
    pub fn print(&self, json: bool) {
        let body = if json {
            format!("{}\n", serde_json::to_string_pretty(&self.json).expect("values serialize"))
        } else {
            eprint!("{}", self.notes);
            self.text.clone()
        };
        let _ = io::stdout().lock().write_all(body.as_bytes());
    }
}

pub fn edge_pairs(g: &Graph, w: &BitSet) -> Vec<[String; 2]> {
    w.ones()
        .map(|e| {
            let (a, b) = g.edge_labels(e);
            [a.to_string(), b.to_string()]
        })
        .collect()
}

/// `{a-b, c-d}` in edge order.
pub fn edge_text(g: &Graph, w: &BitSet) -> String {
    let parts: Vec<String> = edge_pairs(g, w).into_iter().map(|[a, b]| format!("{a}-{b}")).collect();
    format!("{{{}}}", parts.join(", "))
}
