//! Recognition of flexible Kekulé cells with at most four ports.
//!
//! A cell is matched against a short list of representatives under every
//! port permutation and translation. A match yields a realizing graph, whose
//! cell is recomputed before it is returned.

use std::collections::BTreeSet;
use std::fmt;

use crate::builtins::lemma2_template;
use crate::cell::{Cell, PortAssignment};
use crate::error::{Error, Result};
use crate::graph::{fresh_label, Graph};
use crate::kekule::kekule_cell;
use crate::omni::make_delta;
use crate::transform::translate_graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassTag {
    /// No ports: the cell `{∅}`.
    Trivial,
    /// Translates of the singletons `{{p} | p ∈ P}`.
    Star,
    /// Translates of `Even(P)` on three ports.
    Even3,
    /// The diameter-4 classes on four ports.
    K(u8),
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassTag::Trivial => f.write_str("trivial"),
            ClassTag::Star => f.write_str("K1-star"),
            ClassTag::Even3 => f.write_str("Even-translate"),
            ClassTag::K(i) => write!(f, "K{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KekuleClass {
    pub class: ClassTag,
    /// `g` with `K = g ⊕ π(R)` for the class representative `R`.
    pub translation: PortAssignment,
    /// The ports of the cell in the order that plays `a, b, c, d` (or
    /// `p0, p1, ...`) in the representative.
    pub ordering: Vec<String>,
    /// A graph whose Kekulé cell is exactly the classified cell.
    pub template: Graph,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    NotKekule { reason: String },
    Kekule(Box<KekuleClass>),
}

impl Classification {
    pub fn is_kekule(&self) -> bool {
        matches!(self, Classification::Kekule(_))
    }

    pub fn tag(&self) -> Option<ClassTag> {
        match self {
            Classification::Kekule(k) => Some(k.class),
            Classification::NotKekule { .. } => None,
        }
    }
}

const LADDER_PORTS: [&str; 4] = ["a", "b", "c", "d"];

fn mask_of(labels: &[&str]) -> u8 {
    labels
        .iter()
        .map(|l| 1u8 << LADDER_PORTS.iter().position(|p| p == l).expect("ladder port"))
        .sum()
}

/// Representatives for `n` ports, as member masks over port indices.
fn representatives(n: usize) -> Vec<(ClassTag, Vec<u8>)> {
    let star: Vec<u8> = (0..n).map(|i| 1u8 << i).collect();
    match n {
        0 => vec![(ClassTag::Trivial, vec![0])],
        2 => vec![(ClassTag::Star, star)],
        3 => vec![(ClassTag::Star, star), (ClassTag::Even3, vec![0b000, 0b011, 0b101, 0b110])],
        4 => {
            let mut reps = vec![(ClassTag::Star, star)];
            for i in 0..=5u8 {
                let members = crate::builtins::lemma2_cell_members(i as usize)
                    .iter()
                    .map(|m| mask_of(m))
                    .collect();
                reps.push((ClassTag::K(i), members));
            }
            reps
        }
        _ => Vec::new(),
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

fn permute(mask: u8, perm: &[usize]) -> u8 {
    perm.iter()
        .enumerate()
        .filter(|&(i, _)| mask >> i & 1 == 1)
        .map(|(_, &j)| 1u8 << j)
        .sum()
}

/// Realizing graph of a representative, with placeholder ports `a..d`.
fn representative_graph(tag: ClassTag, n: usize) -> Result<Graph> {
    let ports = &LADDER_PORTS[..n];
    match tag {
        ClassTag::Trivial => Graph::from_edges([("x1", "x2"), ("x2", "x3"), ("x3", "x4"), ("x4", "x1")]),
        ClassTag::Star => Graph::from_edges(ports.iter().map(|&p| ("x", p))),
        ClassTag::Even3 => {
            let d3 = make_delta(3)?.relabel(|l| match l {
                "p1" => "a".into(),
                "p2" => "b".into(),
                "p3" => "c".into(),
                other => other.to_string(),
            })?;
            translate_graph(&d3, &["a"])
        }
        ClassTag::K(i) => lemma2_template(i as usize),
    }
}

/// Renames placeholder port `LADDER_PORTS[i]` to `ordering[i]` and moves
/// internal labels out of the way of the cell's port labels.
fn rename_template(g: &Graph, ordering: &[String]) -> Result<Graph> {
    let port_names: BTreeSet<&str> = ordering.iter().map(String::as_str).collect();
    let mut taken: BTreeSet<String> = ordering.iter().cloned().collect();
    let mut rename = std::collections::BTreeMap::new();
    for l in g.labels() {
        let v = g.node(l).expect("own label");
        let new = if g.is_port(v) {
            let i = LADDER_PORTS.iter().position(|p| p == l).expect("placeholder port");
            ordering[i].clone()
        } else if port_names.contains(l.as_str()) || taken.contains(l) {
            fresh_label(l, &|x| taken.contains(x) || g.has_label(x))
        } else {
            l.clone()
        };
        taken.insert(new.clone());
        rename.insert(l.clone(), new);
    }
    g.relabel(|l| rename[l].clone())
}

/// Classifies a flexible cell with at most four ports.
pub fn classify_cell(k: &Cell) -> Result<Classification> {
    if k.is_empty() {
        return Err(Error::EmptyCell);
    }
    let n = k.ports().len();
    if n > 4 {
        return Err(Error::TooManyPortsToClassify);
    }
    if !k.is_flexible() {
        return Err(Error::NotFlexible);
    }
    let diameter = k.diameter()?;
    if diameter % 2 == 1 {
        return Ok(Classification::NotKekule {
            reason: format!("diameter {diameter} is odd"),
        });
    }
    let target: BTreeSet<u8> = k.members().map(|m| m.to_mask() as u8).collect();
    for (tag, members) in representatives(n) {
        if members.len() != target.len() {
            continue;
        }
        for perm in permutations(n) {
            let image: Vec<u8> = members.iter().map(|&m| permute(m, &perm)).collect();
            for g in 0u8..(1 << n) {
                if image.iter().all(|&m| target.contains(&(m ^ g))) {
                    let mut ordering = vec![String::new(); n];
                    for (i, &j) in perm.iter().enumerate() {
                        ordering[i] = k.ports().labels()[j].clone();
                    }
                    let translation = PortAssignment::from_mask(n, g as u64);
                    let base = rename_template(&representative_graph(tag, n)?, &ordering)?;
                    let shift = k.ports().labels_of(&translation);
                    let template = translate_graph(&base, &shift)?;
                    if &kekule_cell(&template)? != k {
                        return Err(Error::Internal(format!("template for {tag} does not realize the cell")));
                    }
                    return Ok(Classification::Kekule(Box::new(KekuleClass {
                        class: tag,
                        translation,
                        ordering,
                        template,
                    })));
                }
            }
        }
    }
    Ok(Classification::NotKekule {
        reason: format!("no flexible Kekulé cell on {n} ports has this shape"),
    })
}
