//! Kekulé states, alternating curves and Kekulé cells of graphs.
//!
//! A Kekulé state is an edge subset that covers every internal node exactly
//! once; ports may or may not be covered. States are found by backtracking
//! over the internal nodes, smallest degree first, choosing the covering edge
//! of the first uncovered node and pruning as soon as some uncovered internal
//! node has no usable edge left.

use crate::bits::BitSet;
use crate::cell::{Cell, PortAssignment, PortSet};
use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph, NodeId};

/// Default ceiling on the cycle rank `r` accepted by enumerations; the number
/// of states per port assignment is at most `2^r`.
pub const DEFAULT_MAX_RANK: usize = 24;

/// Above this many ports, cells are computed from a full state enumeration
/// instead of one feasibility search per parity-correct assignment.
const PER_ASSIGNMENT_PORT_LIMIT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_rank: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_rank: DEFAULT_MAX_RANK,
        }
    }
}

impl Limits {
    pub fn unlimited() -> Self {
        Limits { max_rank: usize::MAX }
    }

    fn check(&self, g: &Graph) -> Result<()> {
        let r = g.cycle_rank();
        if r > self.max_rank {
            Err(Error::EnumerationTooLarge {
                r,
                limit: self.max_rank,
            })
        } else {
            Ok(())
        }
    }
}

/// Every internal node has exactly one incident edge in `w`.
pub fn is_kekule_state(g: &Graph, w: &EdgeSet) -> bool {
    w.width() == g.edge_count() && g.internal_nodes().all(|v| g.degree_in(w, v) == 1)
}

/// Every node, ports included, has exactly one incident edge in `w`.
pub fn is_perfect_matching(g: &Graph, w: &EdgeSet) -> bool {
    w.width() == g.edge_count() && (0..g.node_count()).all(|v| g.degree_in(w, v) == 1)
}

/// The ports touched by `w`, i.e. `(W|P)`.
pub fn port_assignment(g: &Graph, w: &EdgeSet) -> PortAssignment {
    let mut k = PortAssignment::new(g.port_count());
    for (i, &p) in g.ports().iter().enumerate() {
        if w.contains(g.port_edge(p)) {
            k.insert(i);
        }
    }
    k
}

pub fn port_set(g: &Graph) -> PortSet {
    PortSet::new(g.port_labels()).expect("graph labels are distinct")
}

struct Matcher<'g> {
    g: &'g Graph,
    order: Vec<NodeId>,
    covered: Vec<bool>,
    chosen: EdgeSet,
    allowed: EdgeSet,
}

impl<'g> Matcher<'g> {
    fn new(g: &'g Graph, allowed: EdgeSet) -> Self {
        let mut order: Vec<NodeId> = g.internal_nodes().collect();
        order.sort_by_key(|&v| (g.degree(v), v));
        Matcher {
            g,
            order,
            covered: vec![false; g.node_count()],
            chosen: g.empty_edge_set(),
            allowed,
        }
    }

    /// Seeds the search with port edges fixed by `assignment`. Returns false
    /// when the assignment is contradictory on its own.
    fn force_ports(&mut self, assignment: &PortAssignment) -> bool {
        let g = self.g;
        for (i, &p) in g.ports().iter().enumerate() {
            let e = g.port_edge(p);
            let v = g.other_end(e, p);
            let on = assignment.contains(i);
            if g.is_port(v) {
                let j = g.port_index(v).expect("port");
                if assignment.contains(j) != on {
                    return false;
                }
                if on && i < j {
                    self.chosen.insert(e);
                }
            } else if on {
                if self.covered[v] {
                    return false;
                }
                self.covered[v] = true;
                self.chosen.insert(e);
            }
        }
        true
    }

    fn usable(&self, e: usize, v: NodeId) -> bool {
        if !self.allowed.contains(e) {
            return false;
        }
        let w = self.g.other_end(e, v);
        !(self.g.is_internal(w) && self.covered[w])
    }

    fn has_option(&self, v: NodeId) -> bool {
        self.g.incident(v).iter().any(|&e| self.usable(e, v))
    }

    fn dead_neighbour(&self, v: NodeId) -> bool {
        self.g
            .neighbours(v)
            .any(|u| self.g.is_internal(u) && !self.covered[u] && !self.has_option(u))
    }

    /// Calls `visit` on every completion; stops early when it returns false.
    fn run(&mut self, mut pos: usize, visit: &mut dyn FnMut(&EdgeSet) -> bool) -> bool {
        while pos < self.order.len() && self.covered[self.order[pos]] {
            pos += 1;
        }
        if pos == self.order.len() {
            return visit(&self.chosen);
        }
        let v = self.order[pos];
        let g = self.g;
        for &e in g.incident(v) {
            if !self.usable(e, v) {
                continue;
            }
            let w = g.other_end(e, v);
            self.covered[v] = true;
            self.covered[w] = true;
            self.chosen.insert(e);
            let prune = self.dead_neighbour(v) || self.dead_neighbour(w);
            let go_on = prune || self.run(pos + 1, visit);
            self.chosen.remove(e);
            self.covered[w] = false;
            self.covered[v] = false;
            if !go_on {
                return false;
            }
        }
        true
    }
}

fn internal_edges(g: &Graph) -> EdgeSet {
    g.edge_set((0..g.edge_count()).filter(|&e| {
        let (a, b) = g.edge(e);
        g.is_internal(a) && g.is_internal(b)
    }))
}

/// Kekulé states with the given port assignment, visited in search order.
fn search_with_assignment(g: &Graph, assignment: &PortAssignment, visit: &mut dyn FnMut(&EdgeSet) -> bool) {
    let mut m = Matcher::new(g, internal_edges(g));
    if !m.force_ports(assignment) {
        return;
    }
    if g.internal_nodes().any(|v| !m.covered[v] && !m.has_option(v)) {
        return;
    }
    m.run(0, visit);
}

pub fn enumerate_kekule_states(g: &Graph) -> Result<Vec<EdgeSet>> {
    enumerate_kekule_states_with(g, Limits::default())
}

/// All Kekulé states, sorted by edge bit vector.
pub fn enumerate_kekule_states_with(g: &Graph, limits: Limits) -> Result<Vec<EdgeSet>> {
    limits.check(g)?;
    // Edges joining two ports only occur in single-edge components and are
    // free in every state.
    let free: Vec<usize> = (0..g.edge_count())
        .filter(|&e| {
            let (a, b) = g.edge(e);
            g.is_port(a) && g.is_port(b)
        })
        .collect();
    let mut allowed = BitSet::full(g.edge_count());
    for &e in &free {
        allowed.remove(e);
    }
    let mut m = Matcher::new(g, allowed);
    let mut out = Vec::new();
    if g.internal_nodes().all(|v| m.has_option(v)) {
        m.run(0, &mut |w| {
            for mask in 0u64..(1u64 << free.len()) {
                let mut s = w.clone();
                for (i, &e) in free.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        s.insert(e);
                    }
                }
                out.push(s);
            }
            true
        });
    }
    out.sort_unstable();
    Ok(out)
}

pub fn kekule_states_for(g: &Graph, assignment: &PortAssignment) -> Result<Vec<EdgeSet>> {
    kekule_states_for_with(g, assignment, Limits::default())
}

/// Kekulé states `W` with `(W|P) = assignment`, sorted. Port edges are fixed
/// by the assignment before the search starts.
pub fn kekule_states_for_with(g: &Graph, assignment: &PortAssignment, limits: Limits) -> Result<Vec<EdgeSet>> {
    check_assignment(g, assignment)?;
    limits.check(g)?;
    let mut out = Vec::new();
    search_with_assignment(g, assignment, &mut |w| {
        out.push(w.clone());
        true
    });
    out.sort_unstable();
    Ok(out)
}

/// Some Kekulé state realizing `assignment`, if one exists.
pub fn find_kekule_state_for(g: &Graph, assignment: &PortAssignment) -> Result<Option<EdgeSet>> {
    check_assignment(g, assignment)?;
    let mut found = None;
    search_with_assignment(g, assignment, &mut |w| {
        found = Some(w.clone());
        false
    });
    Ok(found)
}

pub fn is_kekule_assignment(g: &Graph, assignment: &PortAssignment) -> Result<bool> {
    Ok(find_kekule_state_for(g, assignment)?.is_some())
}

fn check_assignment(g: &Graph, assignment: &PortAssignment) -> Result<()> {
    if assignment.width() == g.port_count() {
        Ok(())
    } else {
        Err(Error::PortSetMismatch)
    }
}

/// The Kekulé cell `KP(G)` over the ports of `g`.
pub fn kekule_cell(g: &Graph) -> Result<Cell> {
    let ports = port_set(g);
    let n = g.port_count();
    if n <= PER_ASSIGNMENT_PORT_LIMIT {
        // Semi-Kekulé parity restricts members to one parity class.
        let parity = g.signature() as u32;
        let mut members = Vec::new();
        for mask in 0u64..(1u64 << n) {
            if mask.count_ones() % 2 != parity {
                continue;
            }
            let k = PortAssignment::from_mask(n, mask);
            if find_kekule_state_for(g, &k)?.is_some() {
                members.push(k);
            }
        }
        Cell::new(ports, members)
    } else {
        let states = enumerate_kekule_states(g)?;
        Cell::new(ports, states.iter().map(|w| port_assignment(g, w)))
    }
}

/// `W ⊕ W'`, which is a curve alternating for `W` whenever both are Kekulé.
pub fn state_difference(g: &Graph, w: &EdgeSet, w2: &EdgeSet) -> Result<EdgeSet> {
    g.check_subset(w)?;
    g.check_subset(w2)?;
    if !is_kekule_state(g, w) || !is_kekule_state(g, w2) {
        return Err(Error::NotKekule);
    }
    Ok(w.xor(w2))
}

/// `(C, W)` is alternating: `C` is a curve and `W ∩ C` covers every internal
/// node of `C` exactly once.
pub fn is_alternating(g: &Graph, curve: &EdgeSet, w: &EdgeSet) -> bool {
    if curve.width() != g.edge_count() || w.width() != g.edge_count() || !g.is_curve(curve) {
        return false;
    }
    let common = curve.and(w);
    g.nodes_of(curve)
        .into_iter()
        .filter(|&v| g.is_internal(v))
        .all(|v| g.degree_in(&common, v) == 1)
}

/// `W ⊕ C` for an alternating pair.
pub fn apply_curve(g: &Graph, w: &EdgeSet, curve: &EdgeSet) -> Result<EdgeSet> {
    g.check_subset(w)?;
    g.check_subset(curve)?;
    if !is_kekule_state(g, w) {
        return Err(Error::NotKekule);
    }
    if !is_alternating(g, curve, w) {
        return Err(Error::NotAlternating);
    }
    let out = w.xor(curve);
    debug_assert!(is_kekule_state(g, &out));
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveScope {
    /// Only curves that avoid every port.
    PortFree,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Fix {
    Open,
    In,
    Out,
}

struct CurveSearch<'g> {
    g: &'g Graph,
    w: &'g EdgeSet,
    order: Vec<NodeId>,
    fix: Vec<Fix>,
    out: Vec<EdgeSet>,
    free: Vec<usize>,
}

impl CurveSearch<'_> {
    fn run(&mut self, pos: usize) {
        let g = self.g;
        if pos == self.order.len() {
            let base = g.edge_set((0..g.edge_count()).filter(|&e| self.fix[e] == Fix::In));
            for mask in 0u64..(1u64 << self.free.len()) {
                let mut c = base.clone();
                for (i, &e) in self.free.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        c.insert(e);
                    }
                }
                self.out.push(c);
            }
            return;
        }
        let v = self.order[pos];
        let matched = *g.incident(v).iter().find(|&&e| self.w.contains(e)).expect("Kekulé state");
        let others: Vec<usize> = g.incident(v).iter().copied().filter(|&e| e != matched).collect();

        // v outside the curve.
        if g.incident(v).iter().all(|&e| self.fix[e] != Fix::In) {
            let saved = self.fix.clone();
            for &e in g.incident(v) {
                self.fix[e] = Fix::Out;
            }
            self.run(pos + 1);
            self.fix = saved;
        }
        // v on the curve: its matched edge and exactly one other edge.
        if self.fix[matched] == Fix::Out {
            return;
        }
        let forced_in: Vec<usize> = others.iter().copied().filter(|&e| self.fix[e] == Fix::In).collect();
        if forced_in.len() > 1 {
            return;
        }
        for &pick in &others {
            if self.fix[pick] == Fix::Out || (!forced_in.is_empty() && forced_in[0] != pick) {
                continue;
            }
            let saved = self.fix.clone();
            self.fix[matched] = Fix::In;
            for &e in &others {
                self.fix[e] = if e == pick { Fix::In } else { Fix::Out };
            }
            self.run(pos + 1);
            self.fix = saved;
        }
    }
}

/// All curves `C` with `(C, W)` alternating, found by a direct search over
/// edge choices at each internal node. Results are sorted.
pub fn alternating_curves(g: &Graph, w: &EdgeSet, scope: CurveScope) -> Result<Vec<EdgeSet>> {
    g.check_subset(w)?;
    if !is_kekule_state(g, w) {
        return Err(Error::NotKekule);
    }
    let mut fix = vec![Fix::Open; g.edge_count()];
    let mut free = Vec::new();
    for (e, f) in fix.iter_mut().enumerate() {
        let (a, b) = g.edge(e);
        let touches_port = g.is_port(a) || g.is_port(b);
        if scope == CurveScope::PortFree && touches_port {
            *f = Fix::Out;
        } else if g.is_port(a) && g.is_port(b) {
            free.push(e);
        }
    }
    let mut search = CurveSearch {
        g,
        w,
        order: g.internal_nodes().collect(),
        fix,
        out: Vec::new(),
        free,
    };
    search.run(0);
    let mut out = search.out;
    out.sort_unstable();
    Ok(out)
}

fn check_port_pair(g: &Graph, p: NodeId, q: NodeId) -> Result<()> {
    for v in [p, q] {
        if !g.is_port(v) {
            return Err(Error::NotAPort(g.label(v).to_string()));
        }
    }
    if p == q {
        return Err(Error::Precondition("channel needs two distinct ports".into()));
    }
    Ok(())
}

/// Simple alternating path from `p` to `q`, built from a Kekulé state for
/// the toggled assignment: the component of `p` in `W ⊕ W'`.
pub fn alternating_path(g: &Graph, w: &EdgeSet, p: NodeId, q: NodeId) -> Result<Option<EdgeSet>> {
    check_port_pair(g, p, q)?;
    g.check_subset(w)?;
    if !is_kekule_state(g, w) {
        return Err(Error::NotKekule);
    }
    let mut target = port_assignment(g, w);
    target.toggle(g.port_index(p).expect("port"));
    target.toggle(g.port_index(q).expect("port"));
    let Some(w2) = find_kekule_state_for(g, &target)? else {
        return Ok(None);
    };
    let diff = w.xor(&w2);
    for comp in g.curve_components(&diff)? {
        if let crate::graph::CurveComponent::Path { from, to, edges } = comp {
            if (from, to) == (p.min(q), p.max(q)) {
                return Ok(Some(edges));
            }
        }
    }
    Err(Error::Internal("toggled state differs without a p-q path".into()))
}

/// Simple alternating path from `p` to `q` found by depth-first search over
/// simple paths; independent of any cell computation.
pub fn search_alternating_path(g: &Graph, w: &EdgeSet, p: NodeId, q: NodeId) -> Result<Option<EdgeSet>> {
    check_port_pair(g, p, q)?;
    g.check_subset(w)?;
    if !is_kekule_state(g, w) {
        return Err(Error::NotKekule);
    }
    let mut visited = vec![false; g.node_count()];
    let mut path = g.empty_edge_set();
    visited[p] = true;
    let e = g.port_edge(p);
    path.insert(e);
    let found = dfs_path(g, w, g.other_end(e, p), w.contains(e), q, &mut visited, &mut path);
    Ok(found.then_some(path))
}

fn dfs_path(
    g: &Graph,
    w: &EdgeSet,
    at: NodeId,
    arrived_in_w: bool,
    target: NodeId,
    visited: &mut [bool],
    path: &mut EdgeSet,
) -> bool {
    if at == target {
        return true;
    }
    if g.is_port(at) || visited[at] {
        return false;
    }
    visited[at] = true;
    for &e in g.incident(at) {
        if path.contains(e) || w.contains(e) == arrived_in_w {
            continue;
        }
        path.insert(e);
        if dfs_path(g, w, g.other_end(e, at), !arrived_in_w, target, visited, path) {
            return true;
        }
        path.remove(e);
    }
    visited[at] = false;
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    /// Brute force over every edge subset.
    fn brute_states(g: &Graph) -> Vec<EdgeSet> {
        assert!(g.edge_count() <= 20);
        let mut out: Vec<EdgeSet> = (0u64..1 << g.edge_count())
            .map(|m| EdgeSet::from_mask(g.edge_count(), m))
            .filter(|w| is_kekule_state(g, w))
            .collect();
        out.sort_unstable();
        out
    }

    fn assignment(g: &Graph, labels: &[&str]) -> PortAssignment {
        port_set(g).assignment(labels).unwrap()
    }

    #[test]
    fn house5_states() {
        let g = builtins::house5();
        let a = g.edge_set_from_labels(&[("n2", "n5"), ("n3", "n4")]).unwrap();
        assert!(is_kekule_state(&g, &a));
        assert!(!is_kekule_state(&g, &g.empty_edge_set()));
        let states = enumerate_kekule_states(&g).unwrap();
        assert_eq!(states.len(), 2);
        assert!(states.iter().all(|w| !is_perfect_matching(&g, w)));
        assert_eq!(states, brute_states(&g));
    }

    #[test]
    fn house5_with_extra_port() {
        let g = builtins::house5_extra_port();
        let states = enumerate_kekule_states(&g).unwrap();
        assert_eq!(states.len(), 4);
        assert_eq!(states.iter().filter(|w| is_perfect_matching(&g, w)).count(), 1);
    }

    #[test]
    fn single_edge() {
        let g = Graph::from_edges([("a", "b")]).unwrap();
        let w = g.edge_set([0]);
        assert!(is_perfect_matching(&g, &w));
        assert_eq!(enumerate_kekule_states(&g).unwrap().len(), 2);
        let cell = kekule_cell(&g).unwrap();
        assert_eq!(cell.to_text(), "{}\n{a, b}\n");
    }

    #[test]
    fn ethene_states_and_cell() {
        let g = builtins::ethene3();
        let uv = g.edge_set_from_labels(&[("u", "v")]).unwrap();
        assert!(is_kekule_state(&g, &uv));
        assert_eq!(enumerate_kekule_states(&g).unwrap().len(), 3);
        assert_eq!(kekule_cell(&g).unwrap().to_text(), "{}\n{p0, p1}\n{p1, p2}\n");
        assert!(kekule_states_for(&g, &assignment(&g, &["p0", "p2"])).unwrap().is_empty());
    }

    #[test]
    fn phenantrene_counts() {
        let g = builtins::phenantrene();
        assert_eq!(enumerate_kekule_states(&g).unwrap().len(), 5);
        assert_eq!(kekule_states_for(&g, &PortAssignment::new(0)).unwrap().len(), 5);
        assert_eq!(kekule_cell(&g).unwrap().to_text(), "{}\n");
    }

    #[test]
    fn house5_cell() {
        let g = builtins::house5();
        assert_eq!(kekule_cell(&g).unwrap().to_text(), "{n1}\n{n4}\n");
    }

    #[test]
    fn delta3_single_port_assignment() {
        let g = builtins::delta(3).unwrap();
        let states = kekule_states_for(&g, &assignment(&g, &["p1"])).unwrap();
        let expected = g.edge_set_from_labels(&[("p1", "u1"), ("u2", "u3")]).unwrap();
        assert_eq!(states, vec![expected.clone()]);
        let brute: Vec<_> = brute_states(&g)
            .into_iter()
            .filter(|w| port_assignment(&g, w) == assignment(&g, &["p1"]))
            .collect();
        assert_eq!(brute, vec![expected]);
    }

    #[test]
    fn differences_and_curves() {
        let g = builtins::ethene3();
        let states = enumerate_kekule_states(&g).unwrap();
        let w = g.edge_set_from_labels(&[("u", "v")]).unwrap();
        assert!(state_difference(&g, &w, &w).unwrap().is_empty());
        let wa = g.edge_set_from_labels(&[("p0", "u"), ("p1", "v")]).unwrap();
        let c = state_difference(&g, &w, &wa).unwrap();
        assert_eq!(c, g.edge_set_from_labels(&[("p0", "u"), ("u", "v"), ("p1", "v")]).unwrap());
        assert_eq!(apply_curve(&g, &w, &c).unwrap(), wa);
        assert_eq!(apply_curve(&g, &w, &g.empty_edge_set()).unwrap(), w);
        for a in &states {
            for b in &states {
                let c = state_difference(&g, a, b).unwrap();
                assert!(is_alternating(&g, &c, a));
                assert_eq!(&apply_curve(&g, a, &c).unwrap(), b);
            }
        }
        // {p0u, p2u} is a curve through u with no W edge.
        let bad = g.edge_set_from_labels(&[("p0", "u"), ("p2", "u")]).unwrap();
        assert_eq!(apply_curve(&g, &w, &bad), Err(Error::NotAlternating));
        let bad_width = EdgeSet::new(3);
        assert!(matches!(state_difference(&g, &w, &bad_width), Err(Error::WidthMismatch { .. })));
    }

    #[test]
    fn phenantrene_union_of_extreme_hexagons() {
        let g = builtins::phenantrene();
        let w = builtins::phenantrene_depicted_state(&g);
        let hex = builtins::phenantrene_hexagons(&g);
        let union = hex[0].xor(&hex[2]);
        let w2 = apply_curve(&g, &w, &union).unwrap();
        assert!(is_kekule_state(&g, &w2));
        assert_ne!(w2, w);
    }

    #[test]
    fn phenantrene_alternating_curves() {
        let g = builtins::phenantrene();
        let w = builtins::phenantrene_depicted_state(&g);
        let curves = alternating_curves(&g, &w, CurveScope::PortFree).unwrap();
        assert_eq!(curves.len(), 5);
        let mut lengths: Vec<Vec<usize>> = curves
            .iter()
            .map(|c| {
                let mut l: Vec<usize> =
                    g.curve_components(c).unwrap().iter().map(|k| k.edges().count()).collect();
                l.sort();
                l
            })
            .collect();
        lengths.sort();
        assert_eq!(lengths, vec![vec![], vec![6], vec![6], vec![6, 6], vec![10]]);
    }

    #[test]
    fn small_alternating_curve_counts() {
        let a2 = Graph::from_edges([("a", "b")]).unwrap();
        let w = a2.edge_set([0]);
        assert_eq!(alternating_curves(&a2, &w, CurveScope::PortFree).unwrap().len(), 1);
        assert_eq!(alternating_curves(&a2, &w, CurveScope::All).unwrap().len(), 2);

        let d3 = builtins::delta(3).unwrap();
        let w = d3.edge_set_from_labels(&[("p1", "u1"), ("u2", "u3")]).unwrap();
        let curves = alternating_curves(&d3, &w, CurveScope::PortFree).unwrap();
        assert_eq!(curves, vec![d3.empty_edge_set()]);
        let all = alternating_curves(&d3, &w, CurveScope::All).unwrap();
        assert_eq!(all.len(), enumerate_kekule_states(&d3).unwrap().len());
    }

    #[test]
    fn ethene_channels() {
        let g = builtins::ethene3();
        let w = g.edge_set_from_labels(&[("u", "v")]).unwrap();
        let (p0, p1, p2) = (g.node("p0").unwrap(), g.node("p1").unwrap(), g.node("p2").unwrap());
        let path = alternating_path(&g, &w, p0, p1).unwrap().unwrap();
        assert_eq!(path, g.edge_set_from_labels(&[("p0", "u"), ("u", "v"), ("p1", "v")]).unwrap());
        assert_eq!(search_alternating_path(&g, &w, p0, p1).unwrap(), Some(path));
        assert_eq!(alternating_path(&g, &w, p0, p2).unwrap(), None);
        assert_eq!(search_alternating_path(&g, &w, p0, p2).unwrap(), None);
        let u = g.node("u").unwrap();
        assert_eq!(alternating_path(&g, &w, p0, u), Err(Error::NotAPort("u".into())));
    }

    #[test]
    fn delta3_every_channel_has_a_path() {
        let g = builtins::delta(3).unwrap();
        for w in enumerate_kekule_states(&g).unwrap() {
            for &p in g.ports() {
                for &q in g.ports() {
                    if p != q {
                        let path = alternating_path(&g, &w, p, q).unwrap().expect("path");
                        assert!(is_alternating(&g, &path, &w));
                    }
                }
            }
        }
    }

    #[test]
    fn guardrail() {
        let g = builtins::phenantrene();
        let err = enumerate_kekule_states_with(&g, Limits { max_rank: 2 }).unwrap_err();
        assert_eq!(err, Error::EnumerationTooLarge { r: 3, limit: 2 });
        assert!(enumerate_kekule_states_with(&g, Limits::unlimited()).is_ok());
    }

    #[test]
    fn cell_routes_agree_on_builtins() {
        for g in [
            builtins::house5(),
            builtins::ethene3(),
            builtins::ycell_tree().0,
            builtins::delta(4).unwrap(),
            builtins::pyracylene().0,
            builtins::indene().0,
        ] {
            let states = enumerate_kekule_states(&g).unwrap();
            let via_states = Cell::new(port_set(&g), states.iter().map(|w| port_assignment(&g, w))).unwrap();
            assert_eq!(kekule_cell(&g).unwrap(), via_states);
        }
    }
}
