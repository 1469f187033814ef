use std::collections::VecDeque;

use super::{EdgeSet, Graph, NodeId};
use crate::error::{Error, Result};

/// One connected component of a curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveComponent {
    Cycle(EdgeSet),
    /// Simple path between two ports of the parent graph; `from < to`.
    Path { from: NodeId, to: NodeId, edges: EdgeSet },
}

impl CurveComponent {
    pub fn edges(&self) -> &EdgeSet {
        match self {
            CurveComponent::Cycle(e) => e,
            CurveComponent::Path { edges, .. } => edges,
        }
    }

    pub fn is_cycle(&self) -> bool {
        matches!(self, CurveComponent::Cycle(_))
    }
}

pub(super) fn components(g: &Graph, curve: &EdgeSet) -> Result<Vec<CurveComponent>> {
    g.check_subset(curve)?;
    if !g.is_curve(curve) {
        return Err(Error::Precondition("edge set is not a curve".into()));
    }
    let mut seen = g.empty_edge_set();
    let mut out = Vec::new();
    for start in g.nodes_of(curve) {
        if g.incident(start).iter().all(|&e| !curve.contains(e) || seen.contains(e)) {
            continue;
        }
        let mut edges = g.empty_edge_set();
        let mut nodes = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &e in g.incident(v) {
                if curve.contains(e) && !seen.contains(e) {
                    seen.insert(e);
                    edges.insert(e);
                    let w = g.other_end(e, v);
                    if !nodes.contains(&w) {
                        nodes.push(w);
                        queue.push_back(w);
                    }
                }
            }
        }
        let mut ends: Vec<NodeId> = nodes.iter().copied().filter(|&v| g.degree_in(&edges, v) == 1).collect();
        ends.sort_unstable();
        let all_two = nodes.iter().all(|&v| g.degree_in(&edges, v) == 2);
        let component = match ends.as_slice() {
            [] if all_two => CurveComponent::Cycle(edges),
            &[from, to]
                if g.is_port(from)
                    && g.is_port(to)
                    && nodes.iter().all(|&v| v == from || v == to || g.degree_in(&edges, v) == 2) =>
            {
                CurveComponent::Path { from, to, edges }
            }
            _ => return Err(Error::Internal("curve component is neither a cycle nor a port path".into())),
        };
        out.push(component);
    }
    Ok(out)
}
