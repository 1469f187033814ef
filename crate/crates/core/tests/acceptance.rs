use std::process::ExitCode;
use std::time::Instant;

use kekule::builtins::{self, builtin, lemma2_cell_members, lemma2_template};
use kekule::catalog::{connected_graphs, random_connected_graph, realizable_shapes, CellShape};
use kekule::cell::{parity_space, Cell, PortAssignment, PortSet};
use kekule::classify::{classify_cell, ClassTag, Classification};
use kekule::gf2::{enumerate_semi_kekule, hsk_basis};
use kekule::graph::{CurveComponent, Graph};
use kekule::kekule::{
    alternating_curves, enumerate_kekule_states, is_perfect_matching, kekule_cell, port_assignment,
    search_alternating_path, CurveScope,
};
use kekule::omni::{is_omniconjugated, make_a, make_b, make_delta};
use kekule::switch::is_ycell;
use kekule::transform::{attach_handles, flexible_subgraph, merge_node, split_node, translate_graph};
use kekule::verify::{run_suite, VerifyOptions};
use kekule::Result;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Verdict = Result<std::result::Result<String, String>>;

fn ensure(ok: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

macro_rules! check {
    ($cond:expr, $($fmt:tt)*) => {
        if let Err(e) = ensure($cond, format!($($fmt)*)) {
            return Ok(Err(e));
        }
    };
}

fn four_ports() -> PortSet {
    PortSet::new(["p0", "p1", "p2", "p3"]).unwrap()
}

fn shape_cell(shape: CellShape) -> Cell {
    let members = (0..16u64).filter(|m| shape >> m & 1 == 1).map(|m| PortAssignment::from_mask(4, m));
    Cell::new(four_ports(), members).unwrap()
}

fn ac1() -> Verdict {
    let g = builtins::phenantrene();
    let states = enumerate_kekule_states(&g)?;
    check!(states.len() == 5, "{} Kekulé states", states.len());
    let w = builtins::phenantrene_depicted_state(&g);
    let curves = alternating_curves(&g, &w, CurveScope::PortFree)?;
    check!(curves.len() == 5, "{} port-free curves", curves.len());
    let hex = builtins::phenantrene_hexagons(&g);
    let two = hex[0].xor(&hex[2]);
    let mut found = false;
    for c in &curves {
        let comps = g.curve_components(c)?;
        if comps.len() == 2 && comps.iter().all(CurveComponent::is_cycle) && c == &two {
            found = true;
        }
    }
    check!(found, "no curve made of the two outer hexagons");
    Ok(Ok("5 states, 5 port-free curves incl. the two-hexagon curve".into()))
}

fn ac2() -> Verdict {
    let count = |g: &Graph| -> Result<(usize, usize)> {
        let s = enumerate_kekule_states(g)?;
        let pm = s.iter().filter(|w| is_perfect_matching(g, w)).count();
        Ok((s.len(), pm))
    };
    let plain = count(&builtins::house5())?;
    let extra = count(&builtins::house5_extra_port())?;
    check!(plain == (2, 0), "house: {plain:?}");
    check!(extra == (4, 1), "house with extra port: {extra:?}");
    Ok(Ok("2 states / 0 matchings; with extra port 4 / 1".into()))
}

fn ac3() -> Verdict {
    let (g, mut fc) = builtins::ethene3_switch();
    let cell = kekule_cell(&g)?;
    check!(cell.to_text() == "{}\n{p0, p1}\n{p1, p2}\n", "cell {}", cell.to_text());
    check!(!cell.contains(&cell.assignment(&["p0", "p2"])?), "T is a member");
    check!(!fc.is_open("T")?, "T open at the origin");
    let s = fc.signal("A")?;
    check!(s.accepted, "A refused");
    check!(fc.is_open("T")? && fc.is_open("A")?, "T or A closed after A");
    fc.signal("A")?;
    check!(fc.current().is_empty(), "A, A ends at {}", fc.format(fc.current()));
    Ok(Ok("cell {∅, p0p1, p1p2}; A,A returns; T opens after A".into()))
}

fn ac4() -> Verdict {
    let ports = PortSet::new(["a", "b", "c", "d"])?;
    for i in 0..=5 {
        let cell = kekule_cell(&lemma2_template(i)?)?;
        let expected = Cell::new(
            ports.clone(),
            lemma2_cell_members(i).iter().map(|m| ports.assignment(m).unwrap()),
        )?;
        check!(cell == expected, "template {i} gives {}", cell.to_text());
    }
    let cat = connected_graphs(10);
    let shapes = realizable_shapes(&cat, 10, 4)?;
    let mut diameter4 = 0;
    let mut classes = std::collections::BTreeSet::new();
    for (&shape, r) in &shapes {
        let cell = shape_cell(shape);
        if cell.diameter()? != 4 {
            continue;
        }
        diameter4 += 1;
        match classify_cell(&cell)? {
            Classification::Kekule(k) if matches!(k.class, ClassTag::K(_)) => {
                classes.insert(k.class);
            }
            other => {
                return Ok(Err(format!(
                    "cell of {:?} outside K0..K5: {other:?}",
                    r.graph.labeled_edges()
                )))
            }
        }
    }
    check!(classes.len() == 6, "only classes {classes:?} occur");
    Ok(Ok(format!(
        "templates give K0..K5; {diameter4} diameter-4 cells from {} shapes all in the orbit",
        shapes.len()
    )))
}

fn ac5() -> Verdict {
    let mut family: Vec<(String, Graph)> = (2..=8).map(|n| (format!("A{n}"), make_a(n).unwrap())).collect();
    family.extend((2..=5).map(|n| (format!("delta{n}"), make_delta(n).unwrap())));
    family.push(("B".into(), make_b()));
    for (name, g) in &family {
        check!(is_omniconjugated(g)?.omniconjugated, "{name} not omniconjugated");
    }
    let v = is_omniconjugated(&builtins::ethene3())?;
    check!(!v.omniconjugated, "ethene omniconjugated");
    check!(v.witness_text().as_deref() == Some("{p0, p2}"), "witness {:?}", v.witness_text());
    let mut pairs = 0;
    for g in [make_delta(3)?, make_delta(4)?, make_b()] {
        for w in enumerate_kekule_states(&g)? {
            for (i, &p) in g.ports().iter().enumerate() {
                for &q in &g.ports()[i + 1..] {
                    pairs += 1;
                    check!(search_alternating_path(&g, &w, p, q)?.is_some(), "no path {}-{}", g.label(p), g.label(q));
                }
            }
        }
    }
    Ok(Ok(format!("{} omniconjugated families; ethene witness {{p0, p2}}; {pairs} state/pair paths", family.len())))
}

fn ac6() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut assignments = 0;
    for i in 0..200 {
        let nodes = rng.gen_range(3..=11);
        let extra = rng.gen_range(0..=(17 - nodes));
        let g = random_connected_graph(&mut rng, nodes, extra);
        check!(g.edge_count() <= 16, "graph {i} has {} edges", g.edge_count());
        let r = hsk_basis(&g)?.dimension();
        check!(r + g.node_count() == g.edge_count() + 1, "graph {i}: dim {r}");
        let states = enumerate_kekule_states(&g)?;
        let ports = kekule::kekule::port_set(&g);
        for k in parity_space(&ports, g.signature()).members() {
            assignments += 1;
            let semi = enumerate_semi_kekule(&g, k)?.len();
            check!(semi == 1 << r, "graph {i}: {semi} semi-Kekulé states, r = {r}");
            let kek = states.iter().filter(|w| &port_assignment(&g, w) == k).count();
            check!(kek <= semi, "graph {i}: {kek} Kekulé above {semi}");
        }
    }
    Ok(Ok(format!("200 graphs, {assignments} assignments with 2^r semi-Kekulé states")))
}

fn ac7() -> Verdict {
    let opts = VerifyOptions {
        max_edges: 10,
        max_nodes: 7,
        mutant: None,
    };
    let r = run_suite(&opts, Some("channel-path"))?.remove(0);
    if let Some(c) = r.counterexample {
        return Ok(Err(format!("{}: {}", c.detail, c.document())));
    }
    Ok(Ok(format!("{} connected graphs agree with path search", r.graphs)))
}

struct Tally {
    merge: usize,
    split: usize,
    translate: usize,
    flex: usize,
    handles: usize,
}

fn handles_for(g: &Graph, k: &Cell) -> Result<Cell> {
    let f = flexible_subgraph(g)?;
    let flexible = k.flexible_ports();
    let first = k.members().next().expect("nonempty");
    let (mut on, mut off) = (Vec::new(), Vec::new());
    for (i, p) in k.ports().labels().iter().enumerate() {
        if !flexible.contains(p) {
            if first.contains(i) {
                on.push(p.clone());
            } else {
                off.push(p.clone());
            }
        }
    }
    kekule_cell(&attach_handles(&f, &on, &off)?)
}

fn transform_instance(g: &Graph, rng: &mut ChaCha8Rng, t: &mut Tally) -> std::result::Result<(), String> {
    let k = kekule_cell(g).map_err(|e| e.to_string())?;
    if k.is_empty() {
        return Ok(());
    }
    let err = |e: kekule::Error| e.to_string();
    for u0 in g.internal_nodes() {
        if g.degree(u0) == 2 && g.neighbours(u0).all(|v| g.is_internal(v)) {
            if let Ok(m) = merge_node(g, g.label(u0)) {
                ensure(kekule_cell(&m).map_err(err)? == k, format!("merge at {} in {:?}", g.label(u0), g.labeled_edges()))?;
                t.merge += 1;
            }
        }
    }
    let internal: Vec<_> = g.internal_nodes().collect();
    if let Some(&u) = internal.choose(rng) {
        let mut nb: Vec<&str> = g.neighbours(u).map(|v| g.label(v)).collect();
        nb.shuffle(rng);
        let cut = rng.gen_range(1..nb.len());
        let s = split_node(g, g.label(u), &nb[..cut], &nb[cut..]).map_err(err)?;
        ensure(kekule_cell(&s).map_err(err)? == k, format!("split at {} in {:?}", g.label(u), g.labeled_edges()))?;
        t.split += 1;
    }
    let n = g.port_count();
    if n <= 8 {
        let shift = PortAssignment::from_mask(n, rng.gen_range(0..1u64 << n));
        let tg = translate_graph(g, &k.ports().labels_of(&shift)).map_err(err)?;
        ensure(
            kekule_cell(&tg).map_err(err)? == k.translate(&shift).map_err(err)?,
            format!("translation in {:?}", g.labeled_edges()),
        )?;
        t.translate += 1;
    }
    let f = flexible_subgraph(g).map_err(err)?;
    ensure(kekule_cell(&f).map_err(err)? == k.flex(), format!("flex in {:?}", g.labeled_edges()))?;
    t.flex += 1;
    ensure(handles_for(g, &k).map_err(err)? == k, format!("handles in {:?}", g.labeled_edges()))?;
    t.handles += 1;
    Ok(())
}

fn ac8() -> Verdict {
    let mut t = Tally {
        merge: 0,
        split: 0,
        translate: 0,
        flex: 0,
        handles: 0,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut figures = vec![
        builtins::phenantrene(),
        builtins::house5(),
        builtins::house5_extra_port(),
        builtins::ethene3(),
        builtins::ycell_tree().0,
        builtins::pyracylene().0,
        builtins::indene().0,
        make_delta(4)?,
        make_b(),
    ];
    figures.extend((0..=5).map(|i| lemma2_template(i).unwrap()));
    for g in &figures {
        if let Err(e) = transform_instance(g, &mut rng, &mut t) {
            return Ok(Err(e));
        }
    }
    let mut attempts = 0;
    while [t.merge, t.split, t.translate, t.flex, t.handles].iter().any(|&c| c < 100) {
        attempts += 1;
        check!(attempts < 20_000, "not enough eligible instances: merge {} split {}", t.merge, t.split);
        let nodes = rng.gen_range(4..=10);
        let extra = rng.gen_range(0..=4);
        let g = random_connected_graph(&mut rng, nodes, extra);
        if let Err(e) = transform_instance(&g, &mut rng, &mut t) {
            return Ok(Err(e));
        }
    }
    Ok(Ok(format!(
        "merge {}, split {}, translate {}, flex {}, handles {} instances",
        t.merge, t.split, t.translate, t.flex, t.handles
    )))
}

fn ac9() -> Verdict {
    let tree = builtin("ycell-tree")?;
    let fc = tree.functional.as_ref().expect("functional");
    let parity = 1usize << (tree.graph.port_count() - 1);
    check!(fc.cell().len() == 8 && parity == 16, "ycell-tree {} of {parity}", fc.cell().len());
    let pyr = builtin("ycell-pyracylene")?;
    let pfc = pyr.functional.as_ref().expect("functional");
    check!(pfc.cell().len() == 12, "pyracylene cell {}", pfc.cell().len());
    check!(pfc.reachable_states().len() == 4, "pyracylene reachable {}", pfc.reachable_states().len());
    let ind = builtin("splitter-indene")?;
    let ifc = ind.functional.as_ref().expect("functional");
    let parity = 1usize << (ind.graph.port_count() - 1);
    check!(ifc.cell().len() == 18 && parity == 32, "indene {} of {parity}", ifc.cell().len());
    let conj = builtin("conjunction4")?;
    let report = conj.functional.as_ref().expect("functional").verify_gate(&["A", "B"], "T", &[false, false, false, true])?;
    check!(report.passed(), "AND table: {:?}", report.violations);
    for (name, f) in [("ycell-tree", fc), ("ycell-pyracylene", pfc), ("splitter-indene", ifc)] {
        if let Err(e) = f.check_socket_invariant() {
            return Ok(Err(format!("{name}: {e}")));
        }
    }
    Ok(Ok("8/16, 12 with 4 reachable, 18/32, sockets hold, AND table".into()))
}

fn ac10() -> Verdict {
    let ports = four_ports();
    let ch = |a: &str, b: &str| ports.assignment(&[a, b]).unwrap();
    let control = Cell::from_labels(
        &["p0", "p1", "p2", "p3"],
        &[&[], &["p0", "p2"], &["p0", "p3"], &["p0", "p1", "p2", "p3"]],
    )?;
    let zero = ports.empty_assignment();
    check!(
        is_ycell(&control, &zero, &ch("p0", "p2"), &ch("p1", "p2"), &ch("p3", "p2")),
        "abstract Y-cell not recognised"
    );
    check!(
        control.channel_decomposition(&zero, &ports.assignment(&["p0", "p1", "p2", "p3"])?).is_err(),
        "abstract Y-cell admits a channel decomposition"
    );
    let cat = connected_graphs(10);
    let shapes = realizable_shapes(&cat, 10, 4)?;
    let labels = ["p0", "p1", "p2", "p3"];
    let mut roles: Vec<[usize; 4]> = Vec::new();
    for p in 0..4 {
        for q in 0..4 {
            for r in 0..4 {
                for t in 0..4 {
                    let v = [p, q, r, t];
                    if (0..4).all(|i| v.iter().filter(|&&x| x == i).count() == 1) {
                        roles.push(v);
                    }
                }
            }
        }
    }
    for (&shape, r) in &shapes {
        let cell = shape_cell(shape);
        for k0 in cell.members() {
            for &[p, q, rr, t] in &roles {
                let (a, b, tt) = (ch(labels[p], labels[rr]), ch(labels[q], labels[rr]), ch(labels[t], labels[rr]));
                if is_ycell(&cell, k0, &a, &b, &tt) {
                    return Ok(Err(format!("Y-cell realized by {:?}", r.graph.labeled_edges())));
                }
            }
        }
    }
    Ok(Ok(format!("none of {} realizable 4-port cells is a Y-cell", shapes.len())))
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("AC1", ac1),
        ("AC2", ac2),
        ("AC3", ac3),
        ("AC4", ac4),
        ("AC5", ac5),
        ("AC6", ac6),
        ("AC7", ac7),
        ("AC8", ac8),
        ("AC9", ac9),
        ("AC10", ac10),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let (status, detail) = match f() {
            Ok(Ok(d)) => ("PASS", d),
            Ok(Err(d)) => ("FAIL", d),
            Err(e) => ("FAIL", format!("error: {e}")),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{name} {status} {detail} ({:.2?})", start.elapsed());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} acceptance criteria failed");
        ExitCode::FAILURE
    }
}
