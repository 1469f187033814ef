//! Graph representation.
//!
//! A graph is a finite set of undirected edges. Its nodes are exactly the
//! endpoints of its edges, so isolated nodes cannot occur. Nodes are stored
//! in lexicographic label order and edges in lexicographic order of their
//! sorted endpoint pairs; these orderings index every [`EdgeSet`] and
//! [`PortAssignment`](crate::cell::PortAssignment) derived from the graph.

mod curve;
mod document;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::bits::BitSet;
use crate::error::{Error, Result};

pub use curve::CurveComponent;
pub use document::{parse_graph, GraphDocument};

pub type NodeId = usize;
pub type EdgeId = usize;

/// Subset of the edges of one graph, as a bit vector over its edge order.
pub type EdgeSet = BitSet;

#[derive(Clone)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, NodeId>,
    edges: Vec<(NodeId, NodeId)>,
    incident: Vec<Vec<EdgeId>>,
    ports: Vec<NodeId>,
    port_index: Vec<Option<usize>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.edges.iter().map(|&(a, b)| (&self.labels[a], &self.labels[b])))
            .finish()
    }
}

/// Labels become node names in documents and CLI arguments, so the characters
/// those formats use as separators are rejected.
pub fn validate_label(label: &str) -> Result<()> {
    let bad = label.is_empty()
        || label
            .chars()
            .any(|c| c.is_whitespace() || c.is_control() || ",{}:/|\"".contains(c));
    if bad {
        Err(Error::MalformedLabel(label.to_string()))
    } else {
        Ok(())
    }
}

/// `base#k` with the smallest `k >= 1` not in `taken`.
pub fn fresh_label(base: &str, taken: &impl Fn(&str) -> bool) -> String {
    (1..)
        .map(|k| format!("{base}#{k}"))
        .find(|l| !taken(l))
        .expect("unbounded search")
}

impl Graph {
    /// Builds a graph from labeled endpoint pairs. An empty edge list yields
    /// the empty graph, which some transformations produce.
    pub fn from_edges<I, S>(pairs: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let mut raw = Vec::new();
        for (a, b) in pairs {
            let (a, b) = (a.as_ref(), b.as_ref());
            validate_label(a)?;
            validate_label(b)?;
            if a == b {
                return Err(Error::SelfLoop(a.to_string()));
            }
            raw.push(if a < b {
                (a.to_string(), b.to_string())
            } else {
                (b.to_string(), a.to_string())
            });
        }
        let labels: Vec<String> = raw
            .iter()
            .flat_map(|(a, b)| [a.clone(), b.clone()])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let index: HashMap<String, NodeId> =
            labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        let mut edges: Vec<(NodeId, NodeId)> = raw.iter().map(|(a, b)| (index[a], index[b])).collect();
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            let (a, b) = w[0];
            return Err(Error::DuplicateEdge(labels[a].clone(), labels[b].clone()));
        }
        Ok(Self::assemble(labels, index, edges))
    }

    fn assemble(labels: Vec<String>, index: HashMap<String, NodeId>, edges: Vec<(NodeId, NodeId)>) -> Graph {
        let mut incident = vec![Vec::new(); labels.len()];
        for (e, &(a, b)) in edges.iter().enumerate() {
            incident[a].push(e);
            incident[b].push(e);
        }
        let ports: Vec<NodeId> = (0..labels.len()).filter(|&v| incident[v].len() == 1).collect();
        let mut port_index = vec![None; labels.len()];
        for (i, &p) in ports.iter().enumerate() {
            port_index[p] = Some(i);
        }
        Graph {
            labels,
            index,
            edges,
            incident,
            ports,
            port_index,
        }
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn node(&self, label: &str) -> Option<NodeId> {
        self.index.get(label).copied()
    }

    pub fn require_node(&self, label: &str) -> Result<NodeId> {
        self.node(label).ok_or_else(|| Error::UnknownNode(label.to_string()))
    }

    pub fn has_label(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> (NodeId, NodeId) {
        self.edges[e]
    }

    pub fn edge_labels(&self, e: EdgeId) -> (&str, &str) {
        let (a, b) = self.edges[e];
        (&self.labels[a], &self.labels[b])
    }

    pub fn find_edge(&self, u: NodeId, v: NodeId) -> Option<EdgeId> {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edges.binary_search(&key).ok()
    }

    pub fn other_end(&self, e: EdgeId, v: NodeId) -> NodeId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v);
            a
        }
    }

    pub fn incident(&self, v: NodeId) -> &[EdgeId] {
        &self.incident[v]
    }

    pub fn neighbours(&self, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.incident[v].iter().map(move |&e| self.other_end(e, v))
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.incident[v].len()
    }

    pub fn is_port(&self, v: NodeId) -> bool {
        self.port_index[v].is_some()
    }

    pub fn is_internal(&self, v: NodeId) -> bool {
        !self.is_port(v)
    }

    /// Ports in canonical (lexicographic) order.
    pub fn ports(&self) -> &[NodeId] {
        &self.ports
    }

    pub fn port_count(&self) -> usize {
        self.ports.len()
    }

    /// Position of a port in the canonical port order.
    pub fn port_index(&self, v: NodeId) -> Option<usize> {
        self.port_index[v]
    }

    pub fn port_labels(&self) -> Vec<String> {
        self.ports.iter().map(|&p| self.labels[p].clone()).collect()
    }

    pub fn internal_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.node_count()).filter(move |&v| self.is_internal(v))
    }

    pub fn internal_count(&self) -> usize {
        self.node_count() - self.port_count()
    }

    /// The single edge at a port.
    pub fn port_edge(&self, p: NodeId) -> EdgeId {
        debug_assert!(self.is_port(p));
        self.incident[p][0]
    }

    pub fn empty_edge_set(&self) -> EdgeSet {
        EdgeSet::new(self.edge_count())
    }

    pub fn edge_set<I: IntoIterator<Item = EdgeId>>(&self, edges: I) -> EdgeSet {
        EdgeSet::from_indices(self.edge_count(), edges)
    }

    /// Edge set from labeled pairs; every pair must be an edge of the graph.
    pub fn edge_set_from_labels<S: AsRef<str>>(&self, pairs: &[(S, S)]) -> Result<EdgeSet> {
        let mut set = self.empty_edge_set();
        for (a, b) in pairs {
            let u = self.require_node(a.as_ref())?;
            let v = self.require_node(b.as_ref())?;
            let e = self.find_edge(u, v).ok_or_else(|| {
                Error::Precondition(format!("{{{}, {}}} is not an edge", a.as_ref(), b.as_ref()))
            })?;
            set.insert(e);
        }
        Ok(set)
    }

    pub fn check_subset(&self, set: &EdgeSet) -> Result<()> {
        if set.width() == self.edge_count() {
            Ok(())
        } else {
            Err(Error::WidthMismatch {
                expected: self.edge_count(),
                found: set.width(),
            })
        }
    }

    /// The subgraph formed by the given edges, as a graph of its own.
    pub fn subgraph(&self, set: &EdgeSet) -> Graph {
        Graph::from_edges(set.ones().map(|e| self.edge_labels(e))).expect("subgraph of a valid graph")
    }

    /// Labeled endpoint pairs, in canonical order.
    pub fn labeled_edges(&self) -> Vec<(String, String)> {
        self.edges
            .iter()
            .map(|&(a, b)| (self.labels[a].clone(), self.labels[b].clone()))
            .collect()
    }

    /// Degree of `v` counting only edges in `set`.
    pub fn degree_in(&self, set: &EdgeSet, v: NodeId) -> usize {
        self.incident[v].iter().filter(|&&e| set.contains(e)).count()
    }

    /// Nodes touched by `set`.
    pub fn nodes_of(&self, set: &EdgeSet) -> BTreeSet<NodeId> {
        set.ones()
            .flat_map(|e| {
                let (a, b) = self.edges[e];
                [a, b]
            })
            .collect()
    }

    /// Number of connected components (the empty graph has none).
    pub fn component_count(&self) -> usize {
        self.component_labels().1
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// Component number per node, numbered in order of smallest node.
    fn component_labels(&self) -> (Vec<usize>, usize) {
        let n = self.node_count();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = count;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for w in self.neighbours(v) {
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    /// Maximal connected subgraphs, ordered by their smallest node label.
    pub fn connected_components(&self) -> Vec<Graph> {
        self.component_edge_sets().iter().map(|s| self.subgraph(s)).collect()
    }

    /// Edge sets of the connected components, ordered by smallest node.
    pub fn component_edge_sets(&self) -> Vec<EdgeSet> {
        let (comp, count) = self.component_labels();
        let mut sets = vec![self.empty_edge_set(); count];
        for (e, &(a, _)) in self.edges.iter().enumerate() {
            sets[comp[a]].insert(e);
        }
        sets
    }

    /// Cyclomatic number `#E - #V + components`; equals `#G + 1 - #nG` for a
    /// connected graph.
    pub fn cycle_rank(&self) -> usize {
        self.edge_count() + self.component_count() - self.node_count()
    }

    /// Parity of the number of internal nodes.
    pub fn signature(&self) -> u8 {
        (self.internal_count() % 2) as u8
    }

    pub fn classify_nodes(&self) -> NodeClassification {
        NodeClassification {
            ports: self.ports.iter().map(|&p| self.labels[p].clone()).collect(),
            internal: self.internal_nodes().map(|v| self.labels[v].clone()).collect(),
            degrees: (0..self.node_count())
                .map(|v| (self.labels[v].clone(), self.degree(v)))
                .collect(),
        }
    }

    /// Rebuilds the graph with every label passed through `rename`.
    pub fn relabel(&self, rename: impl Fn(&str) -> String) -> Result<Graph> {
        Graph::from_edges(self.edges.iter().map(|&(a, b)| (rename(&self.labels[a]), rename(&self.labels[b]))))
    }

    /// Disjoint union; node labels must not overlap.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        if let Some(l) = other.labels.iter().find(|l| self.has_label(l)) {
            return Err(Error::LabelCollision(l.clone()));
        }
        Graph::from_edges(self.labeled_edges().into_iter().chain(other.labeled_edges()))
    }

    pub fn fresh_label(&self, base: &str) -> String {
        fresh_label(base, &|l| self.has_label(l))
    }

    /// Fundamental cycles of a BFS spanning tree rooted at the smallest node,
    /// one per non-tree edge in edge order.
    pub fn cycle_basis(&self) -> Result<Vec<EdgeSet>> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let n = self.node_count();
        let mut parent_edge = vec![usize::MAX; n];
        let mut depth = vec![usize::MAX; n];
        let mut tree = self.empty_edge_set();
        depth[0] = 0;
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.incident[v] {
                let w = self.other_end(e, v);
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    parent_edge[w] = e;
                    tree.insert(e);
                    queue.push_back(w);
                }
            }
        }
        let mut basis = Vec::new();
        for e in 0..self.edge_count() {
            if tree.contains(e) {
                continue;
            }
            let mut cycle = self.empty_edge_set();
            cycle.insert(e);
            let (mut a, mut b) = self.edges[e];
            while a != b {
                if depth[a] < depth[b] {
                    std::mem::swap(&mut a, &mut b);
                }
                let pe = parent_edge[a];
                cycle.toggle(pe);
                a = self.other_end(pe, a);
            }
            basis.push(cycle);
        }
        debug_assert_eq!(basis.len(), self.cycle_rank());
        Ok(basis)
    }

    /// Every node internal to this graph has degree 2 in `set`.
    pub fn is_curve(&self, set: &EdgeSet) -> bool {
        self.nodes_of(set)
            .into_iter()
            .filter(|&v| self.is_internal(v))
            .all(|v| self.degree_in(set, v) == 2)
    }

    /// Decomposes a curve into cycles and simple port-to-port paths, ordered
    /// by smallest node of each component.
    pub fn curve_components(&self, curve: &EdgeSet) -> Result<Vec<CurveComponent>> {
        curve::components(self, curve)
    }
}

/// Output of [`Graph::classify_nodes`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeClassification {
    pub ports: BTreeSet<String>,
    pub internal: BTreeSet<String>,
    pub degrees: std::collections::BTreeMap<String, usize>,
}
