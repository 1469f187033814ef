//! Named example graphs and switching designs.
//!
//! Every builtin carries the counts it is known for; [`builtin`] recomputes
//! them and refuses to hand out a graph that disagrees.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph, GraphDocument};
use crate::kekule::{enumerate_kekule_states, kekule_cell, kekule_states_for, port_set};
use crate::omni;
use crate::switch::FunctionalCell;

fn graph(edges: &[(&str, &str)]) -> Graph {
    Graph::from_edges(edges.iter().copied()).expect("builtin graph is well formed")
}

/// The house-shaped graph with two ports and three internal nodes.
pub fn house5() -> Graph {
    graph(&[("n1", "n2"), ("n2", "n3"), ("n3", "n4"), ("n2", "n5"), ("n3", "n5")])
}

/// [`house5`] with an extra port `n6` on the degree-2 node.
pub fn house5_extra_port() -> Graph {
    graph(&[("n1", "n2"), ("n2", "n3"), ("n3", "n4"), ("n2", "n5"), ("n3", "n5"), ("n5", "n6")])
}

/// Ethene with three ports.
pub fn ethene3() -> Graph {
    graph(&[("p0", "u"), ("p2", "u"), ("u", "v"), ("v", "p1")])
}

const PHENANTRENE: [(&str, &str); 16] = [
    ("c01", "c02"),
    ("c02", "c03"),
    ("c03", "c07"),
    ("c07", "c09"),
    ("c09", "c06"),
    ("c06", "c01"),
    ("c03", "c04"),
    ("c04", "c05"),
    ("c05", "c08"),
    ("c08", "c10"),
    ("c10", "c07"),
    ("c08", "c11"),
    ("c11", "c14"),
    ("c14", "c13"),
    ("c13", "c12"),
    ("c12", "c10"),
];

/// Three fused hexagons, angular; no ports.
pub fn phenantrene() -> Graph {
    graph(&PHENANTRENE)
}

/// The three hexagons, left to right.
pub fn phenantrene_hexagons(g: &Graph) -> Vec<EdgeSet> {
    let middle = [
        ("c03", "c04"),
        ("c04", "c05"),
        ("c05", "c08"),
        ("c08", "c10"),
        ("c10", "c07"),
        ("c03", "c07"),
    ];
    let right = [
        ("c08", "c10"),
        ("c08", "c11"),
        ("c11", "c14"),
        ("c14", "c13"),
        ("c13", "c12"),
        ("c12", "c10"),
    ];
    [&PHENANTRENE[0..6], &middle[..], &right[..]]
        .iter()
        .map(|edges| g.edge_set_from_labels(edges).expect("phenantrene edge"))
        .collect()
}

/// The perfect matching in which both outer hexagons alternate.
pub fn phenantrene_depicted_state(g: &Graph) -> EdgeSet {
    g.edge_set_from_labels(&[
        ("c02", "c03"),
        ("c04", "c05"),
        ("c09", "c07"),
        ("c10", "c08"),
        ("c01", "c06"),
        ("c12", "c13"),
        ("c11", "c14"),
    ])
    .expect("phenantrene edge")
}

pub fn delta(n: usize) -> Result<Graph> {
    omni::make_delta(n)
}

/// Two ladder columns `a-u1-u2-b` and `c-v1-v2-d` with rungs chosen so the
/// cell is `K0, ..., K5` for `index = 0..=5`. `K5` is the pendant complete
/// graph on four nodes.
pub fn lemma2_template(index: usize) -> Result<Graph> {
    const RUNGS: [(&str, &str); 4] = [("u2", "v2"), ("u1", "v1"), ("u1", "v2"), ("u2", "v1")];
    let rungs: &[usize] = match index {
        0 => &[],
        1 => &[0],
        2 => &[0, 1],
        3 => &[0, 2],
        4 => &[0, 2, 1],
        5 => &[0, 2, 1, 3],
        _ => return Err(Error::UnknownBuiltin(format!("lemma2-K{index}"))),
    };
    let mut edges = vec![("a", "u1"), ("u1", "u2"), ("u2", "b"), ("c", "v1"), ("v1", "v2"), ("v2", "d")];
    edges.extend(rungs.iter().map(|&i| RUNGS[i]));
    Ok(graph(&edges))
}

/// The members of `K0..K5` over `{a, b, c, d}`.
pub fn lemma2_cell_members(index: usize) -> Vec<Vec<&'static str>> {
    let mut m: Vec<Vec<&str>> = vec![vec![], vec!["a", "b"], vec!["c", "d"], vec!["a", "b", "c", "d"]];
    let extra: &[&[&str]] = match index {
        0 => &[],
        1 => &[&["a", "c"]],
        2 => &[&["a", "c"], &["b", "d"]],
        3 => &[&["a", "c"], &["b", "c"]],
        4 => &[&["a", "c"], &["b", "d"], &["b", "c"]],
        _ => &[&["a", "c"], &["b", "d"], &["b", "c"], &["a", "d"]],
    };
    m.extend(extra.iter().map(|e| e.to_vec()));
    m
}

fn functional(g: &Graph, initial: &[&str], channels: &[(&str, &str, &str)], sockets: &[(&str, &str, &str)]) -> FunctionalCell {
    let cell = kekule_cell(g).expect("builtin cell");
    FunctionalCell::from_labels(cell, initial, channels, sockets).expect("builtin functional cell")
}

/// Ethene switch: `A = {p0, p1}` toggles the test channel `T = {p0, p2}`.
pub fn ethene3_switch() -> (Graph, FunctionalCell) {
    let g = ethene3();
    let fc = functional(&g, &[], &[("A", "p0", "p1"), ("T", "p0", "p2")], &[]);
    (g, fc)
}

/// Conjunction: `T` opens only after both `A` and `B` were signalled.
pub fn conjunction4() -> (Graph, FunctionalCell) {
    let g = lemma2_template(1).expect("template");
    let fc = functional(&g, &[], &[("A", "a", "b"), ("B", "c", "d"), ("T", "b", "d")], &[]);
    (g, fc)
}

/// Y-cell as a tree with five ports and three internal nodes.
pub fn ycell_tree() -> (Graph, FunctionalCell) {
    let g = graph(&[
        ("a", "m2"),
        ("r", "m1"),
        ("b", "m0"),
        ("m0", "t0"),
        ("m2", "t1"),
        ("m0", "m1"),
        ("m1", "m2"),
    ]);
    let fc = functional(
        &g,
        &["a", "r", "t0"],
        &[("A", "a", "r"), ("B", "b", "r"), ("T", "t0", "t1")],
        &[("AB", "A", "B")],
    );
    (g, fc)
}

/// Y-cell on a pyracylene derivative.
pub fn pyracylene() -> (Graph, FunctionalCell) {
    let g = graph(&[
        ("c01", "c02"),
        ("c03", "c04"),
        ("c02", "c03"),
        ("c04", "c05"),
        ("c01", "c06"),
        ("c03", "c07"),
        ("c05", "c08"),
        ("c06", "c09"),
        ("c07", "c10"),
        ("c09", "c07"),
        ("c10", "c08"),
        ("c02", "c11"),
        ("c04", "c12"),
        ("c11", "c12"),
        ("c09", "c13"),
        ("c10", "c14"),
        ("c13", "c14"),
        ("ab", "c01"),
        ("b", "c11"),
        ("a1", "c13"),
        ("t", "c05"),
        ("t1", "c08"),
    ]);
    let fc = functional(
        &g,
        &["a1", "t1"],
        &[("A", "a1", "ab"), ("B", "b", "ab"), ("T", "t", "t1")],
        &[("AB", "A", "B")],
    );
    (g, fc)
}

/// Splitter on indene: socket `(A, B)` opens both `S` and `T`.
pub fn indene() -> (Graph, FunctionalCell) {
    let g = graph(&[
        ("x1", "x2"),
        ("x2", "x3"),
        ("x3", "x4"),
        ("x2", "x5"),
        ("x4", "x7"),
        ("x5", "x6"),
        ("x8", "x5"),
        ("x6", "x7"),
        ("x1", "x9"),
        ("x8", "x9"),
        ("ab", "x1"),
        ("a", "x6"),
        ("b", "x3"),
        ("t", "x4"),
        ("s", "x7"),
        ("st", "x8"),
    ]);
    let fc = functional(
        &g,
        &["a", "ab", "s"],
        &[("A", "a", "ab"), ("B", "b", "ab"), ("S", "s", "st"), ("T", "t", "st")],
        &[("AB", "A", "B")],
    );
    (g, fc)
}

/// A builtin graph with its optional switching configuration and the
/// counts it was checked against.
#[derive(Debug, Clone)]
pub struct Builtin {
    pub name: String,
    pub graph: Graph,
    pub functional: Option<FunctionalCell>,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub claim: String,
    pub expected: usize,
    pub found: usize,
}

impl Builtin {
    /// Graph document including channels, sockets and initial state.
    pub fn document(&self) -> GraphDocument {
        let mut doc = GraphDocument::from_graph(self.graph.clone());
        if let Some(fc) = &self.functional {
            let ports = fc.cell().ports();
            for (name, c) in fc.channels() {
                let (i, j) = c.ends();
                doc.channels.insert(name.clone(), (ports.labels()[i].clone(), ports.labels()[j].clone()));
            }
            doc.sockets = fc.sockets().clone();
            doc.initial = Some(ports.labels_of(fc.initial()));
        }
        doc
    }
}

pub const BUILTIN_NAMES: [&str; 18] = [
    "ethene3",
    "conjunction4",
    "ycell-tree",
    "ycell-pyracylene",
    "splitter-indene",
    "house5",
    "phenantrene",
    "delta<n>",
    "A<n>",
    "B",
    "lemma2-K0",
    "lemma2-K1",
    "lemma2-K2",
    "lemma2-K3",
    "lemma2-K4",
    "lemma2-K5",
    "house5-extra",
    "delta3",
];

fn check(claim: &str, expected: usize, found: usize) -> Check {
    Check {
        claim: claim.to_string(),
        expected,
        found,
    }
}

fn parse_suffix(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix).and_then(|s| s.parse().ok())
}

/// Looks up a builtin by name and verifies its recorded counts.
pub fn builtin(name: &str) -> Result<Builtin> {
    let mut functional = None;
    let mut checks = Vec::new();
    let g = match name {
        "ethene3" => {
            let (g, fc) = ethene3_switch();
            checks.push(check("Kekulé states", 3, enumerate_kekule_states(&g)?.len()));
            checks.push(check("cell members", 3, fc.cell().len()));
            functional = Some(fc);
            g
        }
        "conjunction4" => {
            let (g, fc) = conjunction4();
            checks.push(check("cell members", 5, fc.cell().len()));
            functional = Some(fc);
            g
        }
        "ycell-tree" => {
            let (g, fc) = ycell_tree();
            checks.push(check("ports", 5, g.port_count()));
            checks.push(check("internal nodes", 3, g.internal_count()));
            checks.push(check("parity space", 16, 1 << (g.port_count() - 1)));
            checks.push(check("cell members", 8, fc.cell().len()));
            checks.push(check("reachable states", 4, fc.reachable_states().len()));
            functional = Some(fc);
            g
        }
        "ycell-pyracylene" => {
            let (g, fc) = pyracylene();
            let ports = port_set(&g);
            let count = |labels: &[&str]| -> Result<usize> {
                Ok(kekule_states_for(&g, &ports.assignment(labels)?)?.len())
            };
            checks.push(check("ports", 5, g.port_count()));
            checks.push(check("cell members", 12, fc.cell().len()));
            checks.push(check("reachable states", 4, fc.reachable_states().len()));
            checks.push(check("states at the origin", 4, count(&[])?));
            checks.push(check("states at k0", 2, count(&["a1", "t1"])?));
            checks.push(check("states at k0+A+B+T", 2, count(&["b", "t"])?));
            checks.push(check("states at k0+A", 1, count(&["ab", "t1"])?));
            checks.push(check("states at k0+A+T", 1, count(&["ab", "t"])?));
            functional = Some(fc);
            g
        }
        "splitter-indene" => {
            let (g, fc) = indene();
            checks.push(check("ports", 6, g.port_count()));
            checks.push(check("internal nodes", 9, g.internal_count()));
            checks.push(check("parity space", 32, 1 << (g.port_count() - 1)));
            checks.push(check("cell members", 18, fc.cell().len()));
            functional = Some(fc);
            g
        }
        "house5" => {
            let g = house5();
            checks.push(check("Kekulé states", 2, enumerate_kekule_states(&g)?.len()));
            g
        }
        "house5-extra" => {
            let g = house5_extra_port();
            checks.push(check("Kekulé states", 4, enumerate_kekule_states(&g)?.len()));
            g
        }
        "phenantrene" => {
            let g = phenantrene();
            checks.push(check("Kekulé states", 5, enumerate_kekule_states(&g)?.len()));
            g
        }
        "B" => {
            let g = omni::make_b();
            checks.push(check("nodes", 6, g.node_count()));
            checks.push(check("edges", 7, g.edge_count()));
            g
        }
        _ => {
            if let Some(n) = parse_suffix(name, "delta") {
                let g = omni::make_delta(n)?;
                checks.push(check("nodes", 2 * n, g.node_count()));
                checks.push(check("edges", n * (n - 1) / 2 + n, g.edge_count()));
                g
            } else if let Some(n) = parse_suffix(name, "A") {
                let g = omni::make_a(n)?;
                checks.push(check("edges", n - 1, g.edge_count()));
                g
            } else if let Some(i) = parse_suffix(name, "lemma2-K").filter(|&i| i <= 5) {
                let g = lemma2_template(i)?;
                checks.push(check("cell members", lemma2_cell_members(i).len(), kekule_cell(&g)?.len()));
                g
            } else {
                return Err(Error::UnknownBuiltin(name.to_string()));
            }
        }
    };
    if let Some(bad) = checks.iter().find(|c| c.expected != c.found) {
        return Err(Error::Internal(format!(
            "builtin `{name}`: {} is {}, expected {}",
            bad.claim, bad.found, bad.expected
        )));
    }
    Ok(Builtin {
        name: name.to_string(),
        graph: g,
        functional,
        checks,
    })
}

/// Which of the optional splitter members occur in the indene cell,
/// relative to the initial state.
pub fn indene_optional_members() -> BTreeMap<&'static str, bool> {
    let (_, fc) = indene();
    let mut out = BTreeMap::new();
    for (name, combo) in [("A+T", ["A", "T"]), ("B+S", ["B", "S"]), ("B+T", ["B", "T"])] {
        let k = fc.combine(&combo).expect("declared channels");
        out.insert(name, fc.cell().contains(&k));
    }
    out
}
