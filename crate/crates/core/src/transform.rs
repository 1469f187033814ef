//! Graph rewrites that preserve or translate the Kekulé cell.
//!
//! All operations address nodes by label and return a new graph. Fresh
//! nodes are named `base#k` with the smallest unused `k`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{fresh_label, Graph, NodeId};
use crate::kekule::Limits;

type Edges = Vec<(String, String)>;

fn build(edges: &Edges) -> Result<Graph> {
    Graph::from_edges(edges.iter().map(|(a, b)| (a.as_str(), b.as_str())))
}

fn internal(g: &Graph, label: &str) -> Result<NodeId> {
    let v = g.require_node(label)?;
    if g.is_internal(v) {
        Ok(v)
    } else {
        Err(Error::NotInternal(label.to_string()))
    }
}

fn port(g: &Graph, label: &str) -> Result<NodeId> {
    let v = g.require_node(label)?;
    if g.is_port(v) {
        Ok(v)
    } else {
        Err(Error::NotAPort(label.to_string()))
    }
}

/// Removes a degree-2 node `u0` and merges its two internal neighbours into
/// one node, labeled by the smaller of their labels. Parallel edges to
/// common neighbours collapse and an edge between the neighbours is
/// dropped.
pub fn merge_node(g: &Graph, u0: &str) -> Result<Graph> {
    let v0 = g.require_node(u0)?;
    if g.degree(v0) != 2 {
        return Err(Error::Precondition(format!("`{u0}` must have degree 2, has {}", g.degree(v0))));
    }
    let nb: Vec<NodeId> = g.neighbours(v0).collect();
    let (v1, v2) = (nb[0], nb[1]);
    for &v in &nb {
        if g.is_port(v) {
            return Err(Error::Precondition(format!("neighbour `{}` of `{u0}` is a port", g.label(v))));
        }
    }
    let merged = g.label(v1).min(g.label(v2)).to_string();
    let mut edges = BTreeSet::new();
    for &(a, b) in g.edges() {
        if a == v0 || b == v0 || (a.min(b), a.max(b)) == (v1.min(v2), v1.max(v2)) {
            continue;
        }
        let name = |v: NodeId| if v == v1 || v == v2 { merged.clone() } else { g.label(v).to_string() };
        let (x, y) = (name(a), name(b));
        edges.insert(if x < y { (x, y) } else { (y, x) });
    }
    let degree = |l: &str| edges.iter().filter(|(a, b)| a == l || b == l).count();
    let d = degree(&merged);
    if d < 2 {
        return Err(Error::Precondition(format!("merged node `{merged}` would have degree {d}")));
    }
    for v in g.neighbours(v1).filter(|&v| v != v0 && g.find_edge(v, v2).is_some()) {
        if degree(g.label(v)) < 2 {
            return Err(Error::Precondition(format!(
                "common neighbour `{}` would become a port",
                g.label(v)
            )));
        }
    }
    build(&edges.into_iter().collect())
}

/// Replaces internal node `u` by a chain `u - u#1 - u#2`: `u` keeps the
/// neighbours in `first`, `u#2` takes those in `second`. Inverse of
/// [`merge_node`] applied at `u#1`.
pub fn split_node(g: &Graph, u: &str, first: &[&str], second: &[&str]) -> Result<Graph> {
    let v = internal(g, u)?;
    if first.is_empty() || second.is_empty() {
        return Err(Error::Precondition("both groups of a split must be nonempty".into()));
    }
    let mut given: Vec<&str> = first.iter().chain(second).copied().collect();
    given.sort_unstable();
    let mut actual: Vec<&str> = g.neighbours(v).map(|w| g.label(w)).collect();
    actual.sort_unstable();
    if given != actual {
        return Err(Error::Precondition(format!(
            "partition {{{}}} / {{{}}} does not match the neighbours of `{u}`",
            first.join(","),
            second.join(",")
        )));
    }
    let u0 = g.fresh_label(u);
    let u2 = fresh_label(u, &|l| g.has_label(l) || l == u0);
    let mut edges: Edges = Vec::new();
    for (a, b) in g.labeled_edges() {
        if a != u && b != u {
            edges.push((a, b));
        }
    }
    edges.extend(first.iter().map(|w| (u.to_string(), w.to_string())));
    edges.push((u.to_string(), u0.clone()));
    edges.push((u0, u2.clone()));
    edges.extend(second.iter().map(|w| (u2.clone(), w.to_string())));
    build(&edges)
}

/// Replaces the edge `{p, v}` at port `p` by `{p, p#k}` and `{p#k, v}`.
pub fn subdivide_port_edge(g: &Graph, p: &str) -> Result<Graph> {
    let pv = port(g, p)?;
    let e = g.port_edge(pv);
    let v = g.label(g.other_end(e, pv)).to_string();
    let mid = g.fresh_label(p);
    let mut edges: Edges = g
        .labeled_edges()
        .into_iter()
        .enumerate()
        .filter(|&(i, _)| i != e)
        .map(|(_, x)| x)
        .collect();
    edges.push((p.to_string(), mid.clone()));
    edges.push((mid, v));
    build(&edges)
}

/// Subdivides the port edge of every port in `ports`; the cell of the result
/// is the cell of `g` translated by `ports`.
pub fn translate_graph<S: AsRef<str>>(g: &Graph, ports: &[S]) -> Result<Graph> {
    let mut out = g.clone();
    let mut seen = BTreeSet::new();
    for p in ports {
        let p = p.as_ref();
        port(g, p)?;
        if seen.insert(p.to_string()) {
            out = subdivide_port_edge(&out, p)?;
        }
    }
    Ok(out)
}

/// Subgraph of the edges that lie in some but not all Kekulé states.
pub fn flexible_subgraph(g: &Graph) -> Result<Graph> {
    flexible_subgraph_with(g, Limits::default())
}

pub fn flexible_subgraph_with(g: &Graph, limits: Limits) -> Result<Graph> {
    let states = crate::kekule::enumerate_kekule_states_with(g, limits)?;
    let Some(first) = states.first() else {
        return Err(Error::NoKekuleState);
    };
    let mut union = first.clone();
    let mut common = first.clone();
    for w in &states[1..] {
        union = union.or(w);
        common = common.and(w);
    }
    Ok(g.subgraph(&union.difference(&common)))
}

/// Adds the handle gadgets for nonflexible ports: every label in
/// `always_on` becomes a port that carries a double bond in every state, and
/// every label in `never_on` a port that never does. Each gadget is a
/// triangle `x#1 x#2 x#3` whose apex `x#3` is joined to the port directly
/// (always on) or through a middle node `x#4` (never on).
pub fn attach_handles<S: AsRef<str>>(g: &Graph, always_on: &[S], never_on: &[S]) -> Result<Graph> {
    let mut taken: BTreeSet<String> = g.labels().iter().cloned().collect();
    let mut new_ports = BTreeSet::new();
    for p in always_on.iter().chain(never_on) {
        let p = p.as_ref();
        crate::graph::validate_label(p)?;
        if taken.contains(p) || !new_ports.insert(p.to_string()) {
            return Err(Error::LabelCollision(p.to_string()));
        }
    }
    taken.extend(new_ports);
    let mut edges: Edges = g.labeled_edges();
    let fresh = |base: &str, taken: &mut BTreeSet<String>| {
        let l = fresh_label(base, &|l| taken.contains(l));
        taken.insert(l.clone());
        l
    };
    let gadget = |p: &str, pendant: bool, taken: &mut BTreeSet<String>, edges: &mut Edges| {
        let b = fresh(p, taken);
        let t = fresh(p, taken);
        let m = fresh(p, taken);
        edges.push((b.clone(), t.clone()));
        edges.push((b, m.clone()));
        edges.push((t, m.clone()));
        if pendant {
            let r = fresh(p, taken);
            edges.push((m, r.clone()));
            edges.push((r, p.to_string()));
        } else {
            edges.push((m, p.to_string()));
        }
    };
    for p in always_on {
        gadget(p.as_ref(), false, &mut taken, &mut edges);
    }
    for p in never_on {
        gadget(p.as_ref(), true, &mut taken, &mut edges);
    }
    build(&edges)
}

/// Adds the edge `{u, v}` between two distinct internal nodes.
pub fn add_internal_edge(g: &Graph, u: &str, v: &str) -> Result<Graph> {
    let (a, b) = (internal(g, u)?, internal(g, v)?);
    if a == b {
        return Err(Error::SelfLoop(u.to_string()));
    }
    if g.find_edge(a, b).is_some() {
        return Err(Error::DuplicateEdge(u.to_string(), v.to_string()));
    }
    let mut edges = g.labeled_edges();
    edges.push((u.to_string(), v.to_string()));
    build(&edges)
}

/// Removes port `p1` of `g1` and port `p2` of `g2` and joins their former
/// neighbours by an edge. All other labels must be distinct.
pub fn glue_ports(g1: &Graph, p1: &str, g2: &Graph, p2: &str) -> Result<Graph> {
    let (a, b) = (port(g1, p1)?, port(g2, p2)?);
    if let Some(l) = g1.labels().iter().find(|l| l.as_str() != p1 && g2.has_label(l) && l.as_str() != p2) {
        return Err(Error::LabelCollision(l.clone()));
    }
    let (e1, e2) = (g1.port_edge(a), g2.port_edge(b));
    let v1 = g1.label(g1.other_end(e1, a)).to_string();
    let v2 = g2.label(g2.other_end(e2, b)).to_string();
    if v1 == p2 || v2 == p1 {
        return Err(Error::LabelCollision(if v1 == p2 { v1 } else { v2 }));
    }
    let mut edges: Edges = Vec::new();
    for (i, x) in g1.labeled_edges().into_iter().enumerate() {
        if i != e1 {
            edges.push(x);
        }
    }
    for (i, x) in g2.labeled_edges().into_iter().enumerate() {
        if i != e2 {
            edges.push(x);
        }
    }
    edges.push((v1, v2));
    build(&edges)
}

/// What a rewrite changed, by label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteReport {
    pub op: String,
    pub input: Graph,
    pub output: Graph,
    pub added_nodes: Vec<String>,
    pub removed_nodes: Vec<String>,
    pub added_edges: Vec<(String, String)>,
    pub removed_edges: Vec<(String, String)>,
}

impl RewriteReport {
    pub fn new(op: impl Into<String>, input: &Graph, output: &Graph) -> Self {
        let nodes = |g: &Graph| g.labels().iter().cloned().collect::<BTreeSet<_>>();
        let edges = |g: &Graph| g.labeled_edges().into_iter().collect::<BTreeSet<_>>();
        let (n0, n1) = (nodes(input), nodes(output));
        let (e0, e1) = (edges(input), edges(output));
        RewriteReport {
            op: op.into(),
            input: input.clone(),
            output: output.clone(),
            added_nodes: n1.difference(&n0).cloned().collect(),
            removed_nodes: n0.difference(&n1).cloned().collect(),
            added_edges: e1.difference(&e0).cloned().collect(),
            removed_edges: e0.difference(&e1).cloned().collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::kekule::{kekule_cell, port_set};
    use crate::omni::{is_omniconjugated, make_a, make_b, make_delta};

    fn cell_text(g: &Graph) -> String {
        kekule_cell(g).unwrap().to_text()
    }

    #[test]
    fn merge_path() {
        let a5 = Graph::from_edges([("a", "u1"), ("u1", "u0"), ("u0", "u2"), ("u2", "b")]).unwrap();
        let a3 = merge_node(&a5, "u0").unwrap();
        assert_eq!(a3.labeled_edges(), vec![("a".into(), "u1".into()), ("b".into(), "u1".into())]);
        assert_eq!(cell_text(&a5), "{a}\n{b}\n");
        assert_eq!(cell_text(&a3), cell_text(&a5));
    }

    #[test]
    fn merge_degree_bookkeeping() {
        // u1 and u2 are adjacent (a = 1) and share the neighbour v (b = 1).
        let g = Graph::from_edges([
            ("u0", "u1"),
            ("u0", "u2"),
            ("u1", "u2"),
            ("u1", "v"),
            ("u2", "v"),
            ("u1", "x"),
            ("u2", "y"),
            ("u1", "z"),
            ("v", "w"),
        ])
        .unwrap();
        let (d1, d2) = (5, 4);
        let merged = merge_node(&g, "u0").unwrap();
        let u = merged.node("u1").unwrap();
        assert_eq!(merged.degree(u), d1 + d2 - 2 - 2 - 1);
        assert_eq!(kekule_cell(&merged).unwrap(), kekule_cell(&g).unwrap());
    }

    #[test]
    fn merge_errors() {
        let square = Graph::from_edges([("n0", "n1"), ("n0", "n2"), ("n0", "n3"), ("n1", "n4"), ("n2", "n4")]).unwrap();
        assert!(matches!(merge_node(&square, "n1"), Err(Error::Precondition(_))));
        let g = builtins::ethene3();
        assert!(matches!(merge_node(&g, "u"), Err(Error::Precondition(_))));
        let a4 = make_a(4).unwrap();
        assert!(matches!(merge_node(&a4, "a2"), Err(Error::Precondition(_))));
    }

    #[test]
    fn split_then_merge_round_trip() {
        let d4 = make_delta(4).unwrap();
        let split = split_node(&d4, "u1", &["p1", "u2"], &["u3", "u4"]).unwrap();
        let deg = |l: &str| split.degree(split.node(l).unwrap());
        assert_eq!((deg("u1"), deg("u1#1"), deg("u1#2")), (3, 2, 3));
        assert_eq!(kekule_cell(&split).unwrap(), kekule_cell(&d4).unwrap());
        assert_eq!(merge_node(&split, "u1#1").unwrap(), d4);
        assert!(split_node(&d4, "u1", &["p1"], &["u2"]).is_err());
        assert!(split_node(&d4, "u1", &[], &["p1", "u2", "u3", "u4"]).is_err());
    }

    #[test]
    fn star_splits_into_tree() {
        let star = Graph::from_edges((1..=5).map(|i| ("s".to_string(), format!("p{i}")))).unwrap();
        let tree = split_node(&star, "s", &["p1", "p2"], &["p3", "p4", "p5"]).unwrap();
        assert_eq!(tree.cycle_rank(), 0);
        assert_eq!(kekule_cell(&tree).unwrap(), kekule_cell(&star).unwrap());
    }

    #[test]
    fn subdivision_translates() {
        let a2 = make_a(2).unwrap();
        let a3 = subdivide_port_edge(&a2, "a1").unwrap();
        assert_eq!(a3.edge_count(), 2);
        assert_eq!(cell_text(&a3), "{a1}\n{a2}\n");
        let twice = subdivide_port_edge(&a3, "a1").unwrap();
        assert_eq!(kekule_cell(&twice).unwrap(), kekule_cell(&a2).unwrap());
        assert!(subdivide_port_edge(&builtins::ethene3(), "u").is_err());
    }

    #[test]
    fn translations() {
        let h = builtins::house5();
        assert_eq!(cell_text(&translate_graph(&h, &["n1"]).unwrap()), "{}\n{n1, n4}\n");
        assert_eq!(translate_graph::<&str>(&h, &[]).unwrap(), h);
        let e = builtins::ethene3();
        let all = ["p0", "p1", "p2"];
        let t = translate_graph(&e, &all).unwrap();
        let g = port_set(&e).assignment(&all).unwrap();
        assert_eq!(kekule_cell(&t).unwrap(), kekule_cell(&e).unwrap().translate(&g).unwrap());
    }

    #[test]
    fn flexible_subgraphs() {
        let e = builtins::ethene3();
        assert_eq!(flexible_subgraph(&e).unwrap(), e);
        let h = builtins::house5();
        let f = flexible_subgraph(&h).unwrap();
        let expected = Graph::from_edges([("n1", "n2"), ("n2", "n5"), ("n3", "n5"), ("n3", "n4")]).unwrap();
        assert_eq!(f, expected);
        assert_eq!(kekule_cell(&f).unwrap(), kekule_cell(&h).unwrap().flex());
        // A single Kekulé state: nothing is flexible.
        let rigid = Graph::from_edges([("b", "t"), ("b", "m"), ("t", "m"), ("m", "p")]).unwrap();
        assert_eq!(crate::kekule::enumerate_kekule_states(&rigid).unwrap().len(), 1);
        let f = flexible_subgraph(&rigid).unwrap();
        assert!(f.is_empty());
        assert_eq!(kekule_cell(&f).unwrap().to_text(), "{}\n");
        let triangle = Graph::from_edges([("a", "b"), ("b", "c"), ("c", "a")]).unwrap();
        assert_eq!(flexible_subgraph(&triangle), Err(Error::NoKekuleState));
    }

    #[test]
    fn handles() {
        let a2 = make_a(2).unwrap();
        assert_eq!(attach_handles::<&str>(&a2, &[], &[]).unwrap(), a2);
        let on = attach_handles(&a2, &["h"], &[]).unwrap();
        assert_eq!(cell_text(&on), "{h}\n{a1, a2, h}\n");
        let off = attach_handles(&a2, &[], &["z"]).unwrap();
        assert_eq!(cell_text(&off), "{}\n{a1, a2}\n");
        assert_eq!(attach_handles(&a2, &["a1"], &[]), Err(Error::LabelCollision("a1".into())));
        assert_eq!(attach_handles(&a2, &["h"], &["h"]), Err(Error::LabelCollision("h".into())));
    }

    #[test]
    fn handles_invert_flex() {
        let g = Graph::from_edges([("a", "b"), ("b", "c"), ("c", "d"), ("b", "x"), ("x", "y"), ("c", "z")]).unwrap();
        let k = kekule_cell(&g).unwrap();
        let f = flexible_subgraph(&g).unwrap();
        let ports = k.ports().labels().to_vec();
        let flex: Vec<String> = k.flexible_ports();
        let first = k.members().next().unwrap();
        let (mut on, mut off) = (Vec::new(), Vec::new());
        for (i, p) in ports.iter().enumerate() {
            if !flex.contains(p) {
                if first.contains(i) {
                    on.push(p.clone())
                } else {
                    off.push(p.clone())
                }
            }
        }
        let rebuilt = attach_handles(&f, &on, &off).unwrap();
        assert_eq!(kekule_cell(&rebuilt).unwrap(), k);
    }

    #[test]
    fn internal_edges() {
        let a6 = make_a(6).unwrap();
        let b = add_internal_edge(&add_internal_edge(&a6, "a2", "a4").unwrap(), "a3", "a5").unwrap();
        assert_eq!(b, make_b());
        assert!(is_omniconjugated(&b).unwrap().omniconjugated);
        assert!(matches!(add_internal_edge(&a6, "a1", "a3"), Err(Error::NotInternal(_))));
        assert!(matches!(add_internal_edge(&a6, "a2", "a3"), Err(Error::DuplicateEdge(..))));
        let d4 = make_delta(4).unwrap();
        assert!(add_internal_edge(&d4, "u1", "u2").is_err());
    }

    #[test]
    fn gluing() {
        let a = Graph::from_edges([("a", "b")]).unwrap();
        let c = Graph::from_edges([("c", "d")]).unwrap();
        let glued = glue_ports(&a, "a", &c, "c").unwrap();
        assert_eq!(glued, Graph::from_edges([("b", "d")]).unwrap());

        let d3 = make_delta(3).unwrap();
        let other = d3.relabel(|l| format!("{l}'")).unwrap();
        let g = glue_ports(&d3, "p1", &other, "p1'").unwrap();
        assert_eq!(g.port_count(), 4);
        assert!(is_omniconjugated(&g).unwrap().omniconjugated);

        let e = builtins::ethene3().relabel(|l| format!("e{l}")).unwrap();
        let mixed = glue_ports(&d3, "p1", &e, "ep0").unwrap();
        assert!(!is_omniconjugated(&mixed).unwrap().omniconjugated);
        assert!(matches!(glue_ports(&d3, "p1", &d3, "p2"), Err(Error::LabelCollision(_))));
    }

    #[test]
    fn reports_list_changes() {
        let a2 = make_a(2).unwrap();
        let a3 = subdivide_port_edge(&a2, "a1").unwrap();
        let r = RewriteReport::new("subdivide", &a2, &a3);
        assert_eq!(r.added_nodes, vec!["a1#1"]);
        assert_eq!(r.removed_edges, vec![("a1".to_string(), "a2".to_string())]);
        assert_eq!(r.added_edges.len(), 2);
    }
}
