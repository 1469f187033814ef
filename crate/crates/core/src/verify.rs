//! Exhaustive checks of the structural claims over every small connected
//! graph, reporting a counterexample graph for the first falsified claim.

use std::collections::BTreeMap;

use crate::catalog::connected_graphs_bounded;
use crate::cell::{hamming, parity_space, Cell, Channel, PortAssignment};
use crate::classify::{classify_cell, ClassTag, Classification};
use crate::error::{Error, Result};
use crate::gf2::{enumerate_semi_kekule, hsk_basis, solve_semi_kekule};
use crate::graph::{Graph, GraphDocument};
use crate::kekule::{
    alternating_curves, apply_curve, enumerate_kekule_states, is_alternating, port_assignment, port_set,
    search_alternating_path, CurveScope,
};
use crate::omni::{is_omniconjugated, make_a, make_delta, pendant_core_is_complete};
use crate::transform::{
    add_internal_edge, attach_handles, flexible_subgraph, glue_ports, merge_node, subdivide_port_edge, translate_graph,
};

/// Deliberate bugs, used to check that the suites can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutant {
    /// The cell loses its last member whenever it has two or more.
    CellMembership,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub max_edges: usize,
    pub max_nodes: usize,
    pub mutant: Option<Mutant>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_edges: 10,
            max_nodes: 7,
            mutant: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Counterexample {
    pub graph: Graph,
    pub detail: String,
}

impl Counterexample {
    pub fn document(&self) -> String {
        GraphDocument::from_graph(self.graph.clone()).to_json()
    }
}

#[derive(Debug, Clone)]
pub struct ClaimResult {
    pub claim: &'static str,
    pub statement: &'static str,
    pub graphs: usize,
    pub counterexample: Option<Counterexample>,
}

impl ClaimResult {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Everything the checks read about one graph.
pub struct Sample {
    pub graph: Graph,
    pub states: Vec<crate::graph::EdgeSet>,
    pub cell: Cell,
}

impl Sample {
    pub fn new(graph: Graph, mutant: Option<Mutant>) -> Result<Sample> {
        let states = enumerate_kekule_states(&graph)?;
        let ports = port_set(&graph);
        let mut members: Vec<PortAssignment> = states.iter().map(|w| port_assignment(&graph, w)).collect();
        members.sort();
        members.dedup();
        if mutant == Some(Mutant::CellMembership) && members.len() >= 2 {
            members.pop();
        }
        let cell = Cell::new(ports, members)?;
        Ok(Sample { graph, states, cell })
    }

    fn port_label(&self, i: usize) -> &str {
        self.graph.label(self.graph.ports()[i])
    }
}

type Outcome = Result<Option<String>>;

struct Claim {
    name: &'static str,
    statement: &'static str,
    check: fn(&Sample) -> Outcome,
}

fn fail(msg: impl Into<String>) -> Outcome {
    Ok(Some(msg.into()))
}

const CLAIMS: &[Claim] = &[
    Claim {
        name: "state-difference",
        statement: "W xor W' is an alternating curve for any two Kekulé states",
        check: state_difference,
    },
    Claim {
        name: "curve-toggle",
        statement: "toggling an alternating curve yields a Kekulé state",
        check: curve_toggle,
    },
    Claim {
        name: "port-free-curves",
        statement: "port-free alternating curves of W number the states with W's assignment",
        check: port_free_curves,
    },
    Claim {
        name: "channel-path",
        statement: "k xor {p,q} is Kekulé iff some alternating path joins p and q",
        check: channel_path,
    },
    Claim {
        name: "translation",
        statement: "subdividing port edges realizes every translate g xor K",
        check: translation,
    },
    Claim {
        name: "channel-decomposition",
        statement: "members are joined by disjoint channels whose partial sums stay in K",
        check: channel_decomposition,
    },
    Claim {
        name: "flexible-ports",
        statement: "a flexible port has an open channel at every member; flexible ports are never alone",
        check: flexible_ports,
    },
    Claim {
        name: "flex-realized",
        statement: "the flexible subgraph realizes flex(K) and handles restore K",
        check: flex_realized,
    },
    Claim {
        name: "merge-nodes",
        statement: "merging around a degree-2 node keeps the cell",
        check: merge_nodes,
    },
    Claim {
        name: "classification",
        statement: "flexible Kekulé cells on at most four ports fall in the known classes",
        check: classification,
    },
    Claim {
        name: "semi-kekule-parity",
        statement: "semi-Kekulé assignments are exactly the parity class of the signature",
        check: semi_kekule_parity,
    },
    Claim {
        name: "hsk-dimension",
        statement: "the even-degree space has dimension #edges + 1 - #nodes and 2^r states per assignment",
        check: hsk_dimension,
    },
    Claim {
        name: "omni-paths",
        statement: "an omniconjugated graph joins every port pair by an alternating path in every state",
        check: omni_paths,
    },
    Claim {
        name: "omni-pendant",
        statement: "an omniconjugated pendant graph has a complete core",
        check: omni_pendant,
    },
    Claim {
        name: "omni-operations",
        statement: "internal edges, port subdivision and gluing keep omniconjugation",
        check: omni_operations,
    },
];

pub fn claim_names() -> Vec<&'static str> {
    CLAIMS.iter().map(|c| c.name).collect()
}

/// Runs every claim (or only `only`, if given) over all connected graphs
/// within the bounds.
pub fn run_suite(opts: &VerifyOptions, only: Option<&str>) -> Result<Vec<ClaimResult>> {
    let claims: Vec<&Claim> = CLAIMS.iter().filter(|c| only.is_none_or(|n| n == c.name)).collect();
    if claims.is_empty() {
        return Err(Error::Precondition(format!(
            "unknown claim `{}`; known: {}",
            only.unwrap_or_default(),
            claim_names().join(", ")
        )));
    }
    let catalogue = connected_graphs_bounded(opts.max_nodes, opts.max_edges);
    let mut samples = Vec::new();
    for sg in catalogue.iter().flatten() {
        samples.push(Sample::new(sg.to_graph(), opts.mutant)?);
    }
    let mut out = Vec::new();
    for claim in claims {
        let mut result = ClaimResult {
            claim: claim.name,
            statement: claim.statement,
            graphs: 0,
            counterexample: None,
        };
        for s in &samples {
            result.graphs += 1;
            if let Some(detail) = (claim.check)(s)? {
                result.counterexample = Some(Counterexample {
                    graph: s.graph.clone(),
                    detail,
                });
                break;
            }
        }
        out.push(result);
    }
    Ok(out)
}

fn state_difference(s: &Sample) -> Outcome {
    for (i, w) in s.states.iter().enumerate() {
        for w2 in &s.states[i + 1..] {
            let c = w.xor(w2);
            if !s.graph.is_curve(&c) || !is_alternating(&s.graph, &c, w) {
                return fail("difference of two states is not an alternating curve");
            }
        }
    }
    Ok(None)
}

fn curve_toggle(s: &Sample) -> Outcome {
    for w in s.states.iter().take(8) {
        for c in alternating_curves(&s.graph, w, CurveScope::All)? {
            if apply_curve(&s.graph, w, &c).is_err() {
                return fail("toggled curve does not give a Kekulé state");
            }
        }
    }
    Ok(None)
}

fn port_free_curves(s: &Sample) -> Outcome {
    let mut per_assignment: BTreeMap<PortAssignment, usize> = BTreeMap::new();
    for w in &s.states {
        *per_assignment.entry(port_assignment(&s.graph, w)).or_default() += 1;
    }
    for w in &s.states {
        let n = per_assignment[&port_assignment(&s.graph, w)];
        let curves = alternating_curves(&s.graph, w, CurveScope::PortFree)?.len();
        if curves != n {
            return fail(format!("{curves} port-free curves but {n} states share the assignment"));
        }
    }
    Ok(None)
}

fn channel_path(s: &Sample) -> Outcome {
    let g = &s.graph;
    let n = g.port_count();
    for w in &s.states {
        let k = port_assignment(g, w);
        for i in 0..n {
            for j in i + 1..n {
                let c = Channel::new(n, i, j)?;
                let open = s.cell.contains(&k.xor(c.as_assignment()));
                let path = search_alternating_path(g, w, g.ports()[i], g.ports()[j])?.is_some();
                if open != path {
                    return fail(format!(
                        "channel {{{}, {}}} open={open} but alternating path={path} at {}",
                        s.port_label(i),
                        s.port_label(j),
                        s.cell.format(&k)
                    ));
                }
            }
        }
    }
    Ok(None)
}

fn translation(s: &Sample) -> Outcome {
    let n = s.graph.port_count();
    if n > 4 || s.cell.is_empty() {
        return Ok(None);
    }
    for mask in 1u64..(1 << n) {
        let g = PortAssignment::from_mask(n, mask);
        let labels = s.cell.ports().labels_of(&g);
        let t = translate_graph(&s.graph, &labels)?;
        let got = Sample::new(t, None)?.cell;
        if got != s.cell.translate(&g)? {
            return fail(format!("translation by {} not realized", s.cell.format(&g)));
        }
    }
    Ok(None)
}

fn channel_decomposition(s: &Sample) -> Outcome {
    let members: Vec<&PortAssignment> = s.cell.members().collect();
    for (i, a) in members.iter().enumerate() {
        if hamming(a, a)? != 0 {
            return fail("hamming distance to self");
        }
        for b in &members[i + 1..] {
            if hamming(a, b)? % 2 == 1 {
                return fail(format!("odd distance between {} and {}", s.cell.format(a), s.cell.format(b)));
            }
            match s.cell.channel_decomposition(a, b) {
                Ok(_) => {}
                Err(Error::NotKekuleCell(_)) => {
                    return fail(format!(
                        "no channel decomposition from {} to {}",
                        s.cell.format(a),
                        s.cell.format(b)
                    ))
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(None)
}

fn flexible_ports(s: &Sample) -> Outcome {
    let flexible = s.cell.flexible_indices();
    if flexible.len() == 1 {
        return fail(format!("single flexible port {}", s.port_label(flexible[0])));
    }
    let n = s.cell.ports().len();
    for &p in &flexible {
        for k in s.cell.members() {
            let found = (0..n)
                .filter(|&q| q != p)
                .any(|q| s.cell.contains(&k.xor(Channel::new(n, p, q).expect("distinct").as_assignment())));
            if !found {
                return fail(format!("flexible port {} has no open channel at {}", s.port_label(p), s.cell.format(k)));
            }
        }
    }
    Ok(None)
}

fn flex_realized(s: &Sample) -> Outcome {
    let Some(first) = s.cell.members().next() else {
        return Ok(None);
    };
    let f = flexible_subgraph(&s.graph)?;
    let flex_cell = Sample::new(f.clone(), None)?.cell;
    if flex_cell != s.cell.flex() {
        return fail("flexible subgraph does not realize flex(K)");
    }
    let flexible = s.cell.flexible_ports();
    let (mut on, mut off) = (Vec::new(), Vec::new());
    for (i, p) in s.cell.ports().labels().iter().enumerate() {
        if !flexible.contains(p) {
            if first.contains(i) {
                on.push(p.clone());
            } else {
                off.push(p.clone());
            }
        }
    }
    let rebuilt = attach_handles(&f, &on, &off)?;
    if Sample::new(rebuilt, None)?.cell != s.cell {
        return fail("handles on the flexible subgraph do not restore K");
    }
    Ok(None)
}

fn merge_nodes(s: &Sample) -> Outcome {
    let g = &s.graph;
    for u0 in g.internal_nodes() {
        if g.degree(u0) != 2 || g.neighbours(u0).any(|v| g.is_port(v)) {
            continue;
        }
        let merged = match merge_node(g, g.label(u0)) {
            Ok(m) => m,
            Err(Error::Precondition(_)) => continue,
            Err(e) => return Err(e),
        };
        if Sample::new(merged, None)?.cell != s.cell {
            return fail(format!("merging at {} changes the cell", g.label(u0)));
        }
    }
    Ok(None)
}

fn classification(s: &Sample) -> Outcome {
    let flex = s.cell.flex();
    if flex.is_empty() || flex.ports().len() > 4 {
        return Ok(None);
    }
    let class = classify_cell(&flex)?;
    let Classification::Kekule(kc) = class else {
        return fail(format!("flex(K) = {} not recognised", flex.to_text().trim_end().replace('\n', " ")));
    };
    let diameter = flex.diameter()?;
    let consistent = match kc.class {
        ClassTag::Trivial => diameter == 0,
        ClassTag::Star | ClassTag::Even3 => diameter == 2,
        ClassTag::K(_) => diameter == 4,
    };
    if !consistent {
        return fail(format!("class {} with diameter {diameter}", kc.class));
    }
    Ok(None)
}

fn semi_kekule_parity(s: &Sample) -> Outcome {
    let g = &s.graph;
    let n = g.port_count();
    if n > 10 {
        return Ok(None);
    }
    let eps = g.signature() as u32;
    for mask in 0u64..(1 << n) {
        let k = PortAssignment::from_mask(n, mask);
        let solvable = solve_semi_kekule(g, &k)?.is_some();
        if solvable != (mask.count_ones() % 2 == eps) {
            return fail(format!("semi-Kekulé solvability {solvable} at {}", s.cell.format(&k)));
        }
    }
    for k in s.cell.members() {
        if k.count() as u32 % 2 != eps {
            return fail(format!("member {} has the wrong parity", s.cell.format(k)));
        }
    }
    Ok(None)
}

fn hsk_dimension(s: &Sample) -> Outcome {
    let g = &s.graph;
    let r = hsk_basis(g)?.dimension();
    if r + g.node_count() != g.edge_count() + 1 {
        return fail(format!("dimension {r}"));
    }
    let n = g.port_count();
    if n > 8 {
        return Ok(None);
    }
    let class = parity_space(&port_set(g), g.signature());
    for k in class.members() {
        let count = enumerate_semi_kekule(g, k)?.len();
        if count != 1 << r {
            return fail(format!("{count} semi-Kekulé states at {}, expected 2^{r}", class.format(k)));
        }
        let kekule = s.states.iter().filter(|w| &port_assignment(g, w) == k).count();
        if kekule > count {
            return fail("more Kekulé than semi-Kekulé states");
        }
    }
    Ok(None)
}

fn is_omni(s: &Sample) -> bool {
    s.graph.port_count() >= 2 && s.cell == parity_space(s.cell.ports(), s.graph.signature())
}

fn omni_paths(s: &Sample) -> Outcome {
    if !is_omni(s) {
        return Ok(None);
    }
    let g = &s.graph;
    for w in &s.states {
        for (i, &p) in g.ports().iter().enumerate() {
            for &q in &g.ports()[i + 1..] {
                if search_alternating_path(g, w, p, q)?.is_none() {
                    return fail(format!("no alternating path {} to {}", g.label(p), g.label(q)));
                }
            }
        }
    }
    Ok(None)
}

fn omni_pendant(s: &Sample) -> Outcome {
    if !is_omni(s) {
        return Ok(None);
    }
    match pendant_core_is_complete(&s.graph) {
        Ok(true) | Err(Error::Precondition(_)) => Ok(None),
        Ok(false) => fail("omniconjugated pendant graph without a complete core"),
        Err(e) => Err(e),
    }
}

fn omni_operations(s: &Sample) -> Outcome {
    if !is_omni(s) {
        return Ok(None);
    }
    let g = &s.graph;
    let internal: Vec<_> = g.internal_nodes().collect();
    for (i, &u) in internal.iter().enumerate() {
        for &v in &internal[i + 1..] {
            if g.find_edge(u, v).is_none() {
                let h = add_internal_edge(g, g.label(u), g.label(v))?;
                if !is_omniconjugated(&h)?.omniconjugated {
                    return fail(format!("adding {}-{} breaks omniconjugation", g.label(u), g.label(v)));
                }
            }
        }
    }
    let p = g.label(g.ports()[0]).to_string();
    if !is_omniconjugated(&subdivide_port_edge(g, &p)?)?.omniconjugated {
        return fail(format!("subdividing at {p} breaks omniconjugation"));
    }
    for partner in [make_a(2)?, make_a(3)?, make_delta(3)?] {
        let partner = partner.relabel(|l| format!("z{l}"))?;
        let renamed = g.relabel(|l| format!("y{l}"))?;
        let pp = partner.label(partner.ports()[0]).to_string();
        let Ok(glued) = glue_ports(&renamed, &format!("y{p}"), &partner, &pp) else {
            continue;
        };
        if glued.port_count() < 2 {
            continue;
        }
        if !is_omniconjugated(&glued)?.omniconjugated {
            return fail(format!("gluing at {p} with an omniconjugated partner breaks omniconjugation"));
        }
    }
    Ok(None)
}
