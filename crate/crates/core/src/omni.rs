//! Omniconjugated graphs: the Kekulé cell is the whole parity class
//! `Pow(P)_ε`, so every channel is open in every state.

use crate::cell::{PortAssignment, PortSet};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::kekule::{find_kekule_state_for, port_set};

pub const MAX_OMNI_PORTS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmniVerdict {
    pub omniconjugated: bool,
    pub signature: u8,
    pub cell_size: usize,
    pub parity_size: usize,
    /// First missing parity-correct assignment, by cardinality and then
    /// lexicographically.
    pub witness: Option<PortAssignment>,
    pub ports: PortSet,
}

impl OmniVerdict {
    pub fn witness_text(&self) -> Option<String> {
        self.witness.as_ref().map(|w| self.ports.format(w))
    }
}

/// Parity-correct assignments in display order.
fn parity_class_in_order(n: usize, epsilon: u8) -> Vec<PortAssignment> {
    let mut all: Vec<PortAssignment> = (0u64..1 << n)
        .filter(|m| m.count_ones() % 2 == epsilon as u32)
        .map(|m| PortAssignment::from_mask(n, m))
        .collect();
    all.sort_by_key(|k| k.display_key());
    all
}

pub fn is_omniconjugated(g: &Graph) -> Result<OmniVerdict> {
    let n = g.port_count();
    if n < 2 {
        return Err(Error::TooFewPorts);
    }
    if n > MAX_OMNI_PORTS {
        return Err(Error::TooManyPorts {
            limit: MAX_OMNI_PORTS,
            found: n,
        });
    }
    let signature = g.signature();
    let class = parity_class_in_order(n, signature);
    let mut witness = None;
    let mut cell_size = 0;
    for k in &class {
        if find_kekule_state_for(g, k)?.is_some() {
            cell_size += 1;
        } else if witness.is_none() {
            witness = Some(k.clone());
        }
    }
    Ok(OmniVerdict {
        omniconjugated: witness.is_none(),
        signature,
        cell_size,
        parity_size: class.len(),
        witness,
        ports: port_set(g),
    })
}

/// Path `a1 - a2 - ... - an`.
pub fn make_a(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::Precondition("A_n needs n >= 2".into()));
    }
    let labels: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
    Graph::from_edges(labels.windows(2).map(|w| (w[0].as_str(), w[1].as_str())))
}

/// Complete graph on `u1..un` with a pendant port `pi` at every `ui`.
pub fn make_delta(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::Precondition("delta_n needs n >= 2".into()));
    }
    let mut edges = Vec::new();
    for i in 1..=n {
        edges.push((format!("p{i}"), format!("u{i}")));
        for j in i + 1..=n {
            edges.push((format!("u{i}"), format!("u{j}")));
        }
    }
    Graph::from_edges(edges.iter().map(|(a, b)| (a.as_str(), b.as_str())))
}

/// `A6` with the extra internal edges `a2-a4` and `a3-a5`.
pub fn make_b() -> Graph {
    let mut edges: Vec<(String, String)> = (1..6).map(|i| (format!("a{i}"), format!("a{}", i + 1))).collect();
    edges.push(("a2".into(), "a4".into()));
    edges.push(("a3".into(), "a5".into()));
    Graph::from_edges(edges.iter().map(|(a, b)| (a.as_str(), b.as_str()))).expect("B is well formed")
}

/// For a graph in which every internal node carries exactly one pendant
/// port (and nothing else is a port), whether the internal nodes form a
/// complete graph.
pub fn pendant_core_is_complete(g: &Graph) -> Result<bool> {
    let core: Vec<_> = g.internal_nodes().collect();
    if core.len() < 2 {
        return Err(Error::Precondition("pendant form needs at least two internal nodes".into()));
    }
    for &p in g.ports() {
        let v = g.other_end(g.port_edge(p), p);
        if g.is_port(v) {
            return Err(Error::Precondition("port adjacent to a port".into()));
        }
    }
    for &v in &core {
        if g.neighbours(v).filter(|&u| g.is_port(u)).count() != 1 {
            return Err(Error::Precondition(format!("`{}` does not carry exactly one port", g.label(v))));
        }
    }
    Ok(core
        .iter()
        .enumerate()
        .all(|(i, &u)| core[i + 1..].iter().all(|&v| g.find_edge(u, v).is_some())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::cell::parity_space;
    use crate::kekule::kekule_cell;

    #[test]
    fn families_are_omniconjugated() {
        for n in 2..=6 {
            assert!(is_omniconjugated(&make_a(n).unwrap()).unwrap().omniconjugated, "A{n}");
        }
        for n in 2..=5 {
            let g = make_delta(n).unwrap();
            assert_eq!((g.node_count(), g.edge_count()), (2 * n, n * (n - 1) / 2 + n));
            assert!(is_omniconjugated(&g).unwrap().omniconjugated, "delta{n}");
        }
        let b = make_b();
        assert_eq!((b.node_count(), b.edge_count()), (6, 7));
        assert!(is_omniconjugated(&b).unwrap().omniconjugated);
    }

    #[test]
    fn small_identities() {
        assert_eq!(make_a(2).unwrap().edge_count(), 1);
        // Delta_2 is A_4 up to the names of its nodes.
        let d2 = make_delta(2).unwrap();
        assert_eq!(d2.edge_count(), 3);
        assert_eq!(d2.port_count(), 2);
        assert!(make_a(1).is_err());
        assert!(make_delta(1).is_err());
    }

    #[test]
    fn ethene_is_not_omniconjugated() {
        let v = is_omniconjugated(&builtins::ethene3()).unwrap();
        assert!(!v.omniconjugated);
        assert_eq!(v.witness_text().as_deref(), Some("{p0, p2}"));
        assert_eq!((v.signature, v.cell_size, v.parity_size), (0, 3, 4));
    }

    #[test]
    fn verdict_agrees_with_cell() {
        for g in [builtins::ethene3(), builtins::house5(), make_delta(3).unwrap(), builtins::ycell_tree().0] {
            let v = is_omniconjugated(&g).unwrap();
            let full = parity_space(&port_set(&g), g.signature());
            assert_eq!(v.omniconjugated, kekule_cell(&g).unwrap() == full);
        }
    }

    #[test]
    fn port_bounds() {
        assert_eq!(is_omniconjugated(&builtins::phenantrene()), Err(Error::TooFewPorts));
    }

    #[test]
    fn pendant_cores() {
        assert!(pendant_core_is_complete(&make_delta(4).unwrap()).unwrap());
        assert!(pendant_core_is_complete(&make_delta(2).unwrap()).unwrap());
        let square = Graph::from_edges([
            ("u1", "u2"),
            ("u2", "u3"),
            ("u3", "u4"),
            ("u4", "u1"),
            ("p1", "u1"),
            ("p2", "u2"),
            ("p3", "u3"),
            ("p4", "u4"),
        ])
        .unwrap();
        assert!(!pendant_core_is_complete(&square).unwrap());
        assert!(!is_omniconjugated(&square).unwrap().omniconjugated);
        assert!(pendant_core_is_complete(&builtins::ethene3()).is_err());
    }
}
