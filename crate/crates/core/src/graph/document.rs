//! JSON graph documents.
//!
//! ```text
//! {"edges": [[label,label],...],
//!  "channels": {name: [label,label],...}?,
//!  "sockets": {name: [chanName,chanName],...}?,
//!  "initial": [label,...]?}
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::Value;

use super::Graph;
use crate::error::{Error, Result};

/// A graph together with the optional functional-cell configuration carried
/// by its document.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GraphDocument {
    pub graph: Option<Graph>,
    pub channels: BTreeMap<String, (String, String)>,
    pub sockets: BTreeMap<String, (String, String)>,
    pub initial: Option<Vec<String>>,
    /// Non-fatal findings, such as unknown keys.
    pub warnings: Vec<String>,
}

const KNOWN_KEYS: [&str; 4] = ["edges", "channels", "sockets", "initial"];

fn pair(value: &Value, what: &str) -> Result<(String, String)> {
    match value.as_array().map(Vec::as_slice) {
        Some([Value::String(a), Value::String(b)]) => Ok((a.clone(), b.clone())),
        _ => Err(Error::Parse(format!("{what}: expected a pair of strings, found {value}"))),
    }
}

/// Parses a graph document. Unknown top-level keys produce warnings; every
/// structural problem is a hard error naming the offending element.
pub fn parse_graph(text: &str) -> Result<GraphDocument> {
    let root: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let obj = root
        .as_object()
        .ok_or_else(|| Error::Parse("document must be a JSON object".into()))?;
    let mut doc = GraphDocument::default();
    for key in obj.keys() {
        if !KNOWN_KEYS.contains(&key.as_str()) {
            doc.warnings.push(format!("ignoring unknown key `{key}`"));
        }
    }

    let edges = obj
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing `edges` array".into()))?;
    if edges.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut pairs = Vec::with_capacity(edges.len());
    for (i, e) in edges.iter().enumerate() {
        let (a, b) = pair(e, &format!("edge #{i}"))?;
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        pairs.push((a, b));
    }
    let graph = Graph::from_edges(pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())))?;

    if let Some(channels) = obj.get("channels") {
        let map = channels
            .as_object()
            .ok_or_else(|| Error::Parse("`channels` must be an object".into()))?;
        for (name, value) in map {
            let (a, b) = pair(value, &format!("channel `{name}`"))?;
            for l in [&a, &b] {
                let v = graph.require_node(l)?;
                if !graph.is_port(v) {
                    return Err(Error::NotAPort(l.clone()));
                }
            }
            if a == b {
                return Err(Error::Parse(format!("channel `{name}` needs two distinct ports")));
            }
            doc.channels.insert(name.clone(), (a, b));
        }
    }
    if let Some(sockets) = obj.get("sockets") {
        let map = sockets
            .as_object()
            .ok_or_else(|| Error::Parse("`sockets` must be an object".into()))?;
        for (name, value) in map {
            let (a, b) = pair(value, &format!("socket `{name}`"))?;
            for c in [&a, &b] {
                if !doc.channels.contains_key(c) {
                    return Err(Error::UnknownChannel(c.clone()));
                }
            }
            doc.sockets.insert(name.clone(), (a, b));
        }
    }
    if let Some(initial) = obj.get("initial") {
        let list = initial
            .as_array()
            .ok_or_else(|| Error::Parse("`initial` must be an array".into()))?;
        let mut labels = Vec::new();
        for v in list {
            let l = v
                .as_str()
                .ok_or_else(|| Error::Parse(format!("`initial` entry {v} is not a string")))?;
            let node = graph.require_node(l)?;
            if !graph.is_port(node) {
                return Err(Error::NotAPort(l.to_string()));
            }
            labels.push(l.to_string());
        }
        labels.sort();
        labels.dedup();
        doc.initial = Some(labels);
    }
    doc.graph = Some(graph);
    Ok(doc)
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("string serialization")
}

impl GraphDocument {
    pub fn from_graph(graph: Graph) -> Self {
        GraphDocument {
            graph: Some(graph),
            ..Default::default()
        }
    }

    pub fn graph(&self) -> &Graph {
        self.graph.as_ref().expect("document without graph")
    }

    /// Stable rendering: edges in canonical order, one per line; maps sorted
    /// by key.
    pub fn to_json(&self) -> String {
        let g = self.graph();
        let mut out = String::from("{\n  \"edges\": [\n");
        let edges = g.labeled_edges();
        for (i, (a, b)) in edges.iter().enumerate() {
            let sep = if i + 1 < edges.len() { "," } else { "" };
            let _ = writeln!(out, "    [{}, {}]{sep}", quote(a), quote(b));
        }
        out.push_str("  ]");
        let maps = [("channels", &self.channels), ("sockets", &self.sockets)];
        for (key, map) in maps {
            if map.is_empty() {
                continue;
            }
            let _ = write!(out, ",\n  \"{key}\": {{");
            for (i, (name, (a, b))) in map.iter().enumerate() {
                let sep = if i > 0 { ", " } else { "" };
                let _ = write!(out, "{sep}{}: [{}, {}]", quote(name), quote(a), quote(b));
            }
            out.push('}');
        }
        if let Some(initial) = &self.initial {
            let items: Vec<String> = initial.iter().map(|l| quote(l)).collect();
            let _ = write!(out, ",\n  \"initial\": [{}]", items.join(", "));
        }
        out.push_str("\n}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_small_graph() {
        let doc = parse_graph(r#"{"edges": [["p0","u"],["u","v"],["v","p1"],["u","p2"]]}"#).unwrap();
        let g = doc.graph();
        assert_eq!(g.node_count(), 5);
        assert_eq!(g.port_count(), 3);
        assert!(doc.warnings.is_empty());
    }

    #[test]
    fn house5_document() {
        let doc = parse_graph(
            r#"{"edges": [["n1","n2"],["n2","n3"],["n3","n4"],["n2","n5"],["n3","n5"]]}"#,
        )
        .unwrap();
        let g = doc.graph();
        assert_eq!((g.port_count(), g.internal_count()), (2, 3));
    }

    #[test]
    fn errors_name_the_offender() {
        assert_eq!(parse_graph(r#"{"edges": [["a","a"]]}"#), Err(Error::SelfLoop("a".into())));
        assert_eq!(parse_graph(r#"{"edges": []}"#), Err(Error::EmptyGraph));
        assert_eq!(
            parse_graph(r#"{"edges": [["a","b"],["b","a"]]}"#),
            Err(Error::DuplicateEdge("a".into(), "b".into()))
        );
        assert!(matches!(parse_graph(r#"{"edges": [["a",3]]}"#), Err(Error::Parse(m)) if m.contains("edge #0")));
        assert!(matches!(parse_graph(r#"{"edges": [["a,b","c"]]}"#), Err(Error::MalformedLabel(_))));
        assert!(matches!(parse_graph("[1]"), Err(Error::Parse(_))));
    }

    #[test]
    fn unknown_keys_warn() {
        let doc = parse_graph(r#"{"edges": [["a","b"]], "colour": "red"}"#).unwrap();
        assert_eq!(doc.warnings.len(), 1);
    }

    #[test]
    fn functional_fields() {
        let text = r#"{"edges": [["p0","u"],["u","v"],["v","p1"],["u","p2"]],
            "channels": {"A": ["p0","p1"], "T": ["p0","p2"]},
            "sockets": {"S": ["A","T"]},
            "initial": []}"#;
        let doc = parse_graph(text).unwrap();
        assert_eq!(doc.channels["A"], ("p0".into(), "p1".into()));
        assert_eq!(doc.sockets["S"], ("A".into(), "T".into()));
        assert_eq!(doc.initial, Some(vec![]));
        let again = parse_graph(&doc.to_json()).unwrap();
        assert_eq!(again, doc);

        let bad = r#"{"edges": [["p0","u"],["u","p1"]], "channels": {"A": ["p0","u"]}}"#;
        assert_eq!(parse_graph(bad), Err(Error::NotAPort("u".into())));
        let bad = r#"{"edges": [["p0","u"],["u","p1"]], "sockets": {"S": ["A","B"]}}"#;
        assert_eq!(parse_graph(bad), Err(Error::UnknownChannel("A".into())));
    }
}
