//! Exhaustive catalogues of small connected graphs and of the cells they
//! realize, plus seeded random graphs.

use std::collections::{BTreeMap, HashMap};

use petgraph::algo::is_isomorphic;
use petgraph::graph::UnGraph;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::cell::Cell;
use crate::error::Result;
use crate::graph::Graph;
use crate::kekule::kekule_cell;

type PetGraph = UnGraph<(), ()>;
/// Graphs seen so far, keyed by node count and fingerprint.
type Buckets = HashMap<(usize, Vec<u64>), Vec<(SmallGraph, PetGraph)>>;

/// Connected graph on nodes `0..nodes` with no isolated node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallGraph {
    pub nodes: usize,
    pub edges: Vec<(u8, u8)>,
}

impl SmallGraph {
    /// Nodes are labelled `n0, n1, ...`.
    pub fn to_graph(&self) -> Graph {
        Graph::from_edges(self.edges.iter().map(|&(a, b)| (format!("n{a}"), format!("n{b}"))))
            .expect("catalogue graphs are simple")
    }

    fn has_edge(&self, a: u8, b: u8) -> bool {
        self.edges.iter().any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a))
    }

    fn with_edge(&self, a: u8, b: u8) -> SmallGraph {
        let mut edges = self.edges.clone();
        edges.push((a.min(b), a.max(b)));
        edges.sort_unstable();
        SmallGraph {
            nodes: self.nodes.max(a.max(b) as usize + 1),
            edges,
        }
    }

    fn petgraph(&self) -> PetGraph {
        let mut g = UnGraph::with_capacity(self.nodes, self.edges.len());
        for _ in 0..self.nodes {
            g.add_node(());
        }
        for &(a, b) in &self.edges {
            g.add_edge((a as u32).into(), (b as u32).into(), ());
        }
        g
    }

    /// Colour refinement fingerprint; equal for isomorphic graphs.
    fn fingerprint(&self) -> Vec<u64> {
        let mut adj = vec![Vec::new(); self.nodes];
        for &(a, b) in &self.edges {
            adj[a as usize].push(b as usize);
            adj[b as usize].push(a as usize);
        }
        let mut colour: Vec<u64> = adj.iter().map(|n| n.len() as u64).collect();
        for _ in 0..3 {
            colour = (0..self.nodes)
                .map(|v| {
                    let mut around: Vec<u64> = adj[v].iter().map(|&w| colour[w]).collect();
                    around.sort_unstable();
                    let mut h = colour[v].wrapping_mul(0x9e37_79b9_7f4a_7c15);
                    for c in around {
                        h = (h ^ c).wrapping_mul(0x1000_0000_01b3).rotate_left(17);
                    }
                    h
                })
                .collect();
        }
        colour.sort_unstable();
        colour
    }
}

/// Non-isomorphic connected graphs by edge count: entry `m` holds every
/// graph with exactly `m` edges (entry 0 is empty).
pub fn connected_graphs(max_edges: usize) -> Vec<Vec<SmallGraph>> {
    connected_graphs_bounded(max_edges + 1, max_edges)
}

/// As [`connected_graphs`], keeping only graphs on at most `max_nodes`
/// nodes.
pub fn connected_graphs_bounded(max_nodes: usize, max_edges: usize) -> Vec<Vec<SmallGraph>> {
    let mut levels: Vec<Vec<SmallGraph>> = vec![Vec::new()];
    if max_edges == 0 || max_nodes < 2 {
        return levels;
    }
    levels.push(vec![SmallGraph {
        nodes: 2,
        edges: vec![(0, 1)],
    }]);
    for _ in 2..=max_edges {
        let mut buckets: Buckets = HashMap::new();
        let mut next = Vec::new();
        for g in levels.last().expect("previous level") {
            let n = g.nodes as u8;
            let mut candidates = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    if !g.has_edge(a, b) {
                        candidates.push(g.with_edge(a, b));
                    }
                }
                if g.nodes < max_nodes {
                    candidates.push(g.with_edge(a, n));
                }
            }
            for c in candidates {
                let key = (c.nodes, c.fingerprint());
                let pg = c.petgraph();
                let bucket = buckets.entry(key).or_default();
                if bucket.iter().any(|(_, other)| is_isomorphic(&pg, other)) {
                    continue;
                }
                bucket.push((c.clone(), pg));
                next.push(c);
            }
        }
        levels.push(next);
    }
    levels
}

/// Member set of a cell on at most four ports, as a bitmask over the 16
/// assignments (port `i` of the cell is bit `i` of an assignment).
pub type CellShape = u16;

pub fn cell_shape(cell: &Cell) -> CellShape {
    assert!(cell.ports().len() <= 4, "cell shapes cover at most four ports");
    cell.members().map(|m| 1u16 << m.to_mask()).fold(0, |a, b| a | b)
}

#[derive(Debug, Clone)]
pub struct Realization {
    pub edges: usize,
    pub graph: Graph,
}

/// Every cell on exactly `ports` ports (at most four) realized by some
/// graph, connected or not, with at most `max_edges` edges; each shape
/// keeps a smallest witness.
pub fn realizable_shapes(catalogue: &[Vec<SmallGraph>], max_edges: usize, ports: usize) -> Result<BTreeMap<CellShape, Realization>> {
    assert!(ports <= 4);
    // Cells of connected graphs, keyed by port count.
    let mut pieces: Vec<BTreeMap<CellShape, Realization>> = vec![BTreeMap::new(); ports + 1];
    for level in catalogue.iter().take(max_edges + 1) {
        for sg in level {
            let g = sg.to_graph();
            let n = g.port_count();
            if n == 0 || n > ports {
                continue;
            }
            let cell = kekule_cell(&g)?;
            if cell.is_empty() {
                continue;
            }
            pieces[n].entry(cell_shape(&cell)).or_insert(Realization {
                edges: g.edge_count(),
                graph: g,
            });
        }
    }
    let mut out = BTreeMap::new();
    let mut stack = Vec::new();
    combine(&pieces, ports, 1, 0, &mut stack, max_edges, &mut out)?;
    Ok(out)
}

fn combine(
    pieces: &[BTreeMap<CellShape, Realization>],
    remaining: usize,
    min_part: usize,
    edges: usize,
    stack: &mut Vec<(usize, CellShape, Graph)>,
    max_edges: usize,
    out: &mut BTreeMap<CellShape, Realization>,
) -> Result<()> {
    if remaining == 0 {
        let (shape, graph) = product(stack)?;
        let better = out.get(&shape).is_none_or(|r| r.edges > edges);
        if better {
            out.insert(shape, Realization { edges, graph });
        }
        return Ok(());
    }
    for part in min_part..=remaining {
        for (&shape, r) in &pieces[part] {
            if edges + r.edges > max_edges {
                continue;
            }
            stack.push((part, shape, r.graph.clone()));
            combine(pieces, remaining - part, part, edges + r.edges, stack, max_edges, out)?;
            stack.pop();
        }
    }
    Ok(())
}

/// Disjoint union of the components with its product cell. Labels of
/// component `i` get the prefix `c{i}`, so ports sort in component order.
fn product(parts: &[(usize, CellShape, Graph)]) -> Result<(CellShape, Graph)> {
    let mut shape: CellShape = 1;
    let mut width = 0;
    let mut union: Option<Graph> = None;
    for (i, (n, s, g)) in parts.iter().enumerate() {
        let mut next = 0u16;
        for a in 0..16u16 {
            if shape >> a & 1 == 0 {
                continue;
            }
            for b in 0..16u16 {
                if s >> b & 1 == 1 {
                    next |= 1 << (a | b << width);
                }
            }
        }
        shape = next;
        width += n;
        let g = g.relabel(|l| format!("c{i}{l}"))?;
        union = Some(match union {
            None => g,
            Some(u) => u.disjoint_union(&g)?,
        });
    }
    Ok((shape, union.expect("at least one component")))
}

/// Random connected graph: a random spanning tree on `nodes` nodes plus
/// `extra` further distinct edges (fewer if the graph fills up).
pub fn random_connected_graph<R: Rng>(rng: &mut R, nodes: usize, extra: usize) -> Graph {
    assert!(nodes >= 2);
    let mut order: Vec<usize> = (0..nodes).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..nodes {
        let j = rng.gen_range(0..i);
        edges.push((order[i].min(order[j]), order[i].max(order[j])));
    }
    let mut missing: Vec<(usize, usize)> = (0..nodes)
        .flat_map(|a| (a + 1..nodes).map(move |b| (a, b)))
        .filter(|e| !edges.contains(e))
        .collect();
    missing.shuffle(rng);
    edges.extend(missing.into_iter().take(extra));
    Graph::from_edges(edges.iter().map(|&(a, b)| (format!("n{a}"), format!("n{b}")))).expect("simple by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn counts_by_edges() {
        let cat = connected_graphs(8);
        let counts: Vec<usize> = cat.iter().skip(1).map(Vec::len).collect();
        assert_eq!(counts, vec![1, 1, 3, 5, 12, 30, 79, 227]);
    }

    #[test]
    fn counts_by_nodes() {
        let cat = connected_graphs_bounded(6, 15);
        let mut by_nodes = [0usize; 7];
        for g in cat.iter().flatten().filter(|g| g.nodes <= 6) {
            by_nodes[g.nodes] += 1;
        }
        assert_eq!(&by_nodes[2..], &[1, 2, 6, 21, 112]);
        assert!(cat.iter().flatten().all(|g| g.to_graph().is_connected()));
    }

    #[test]
    fn two_port_shapes() {
        let cat = connected_graphs(4);
        let shapes = realizable_shapes(&cat, 4, 2).unwrap();
        assert!(shapes.contains_key(&0b1001));
        assert!(shapes.contains_key(&0b0110));
        for r in shapes.values() {
            assert!(r.graph.edge_count() <= 4);
        }
    }

    #[test]
    fn products_combine_cells() {
        let cat = connected_graphs(6);
        let shapes = realizable_shapes(&cat, 6, 4).unwrap();
        // K0 = {∅, ab, cd, abcd} arises from two free port-port edges.
        let k0: CellShape = 1 << 0b0000 | 1 << 0b0011 | 1 << 0b1100 | 1 << 0b1111;
        let r = &shapes[&k0];
        assert_eq!(r.edges, 2);
        assert_eq!(cell_shape(&kekule_cell(&r.graph).unwrap()), k0);
    }

    #[test]
    fn random_graphs_are_connected() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let g = random_connected_graph(&mut rng, 8, 4);
            assert!(g.is_connected());
            assert_eq!(g.edge_count(), 11);
        }
    }
}
