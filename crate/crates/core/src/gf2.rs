//! Linear algebra over the two-element field and the semi-Kekulé theory
//! built on it.
//!
//! A semi-Kekulé state gives every internal node odd degree. With the port
//! edges fixed by a port assignment, the remaining conditions are one parity
//! equation per internal node over the edge variables.

use crate::bits::BitSet;
use crate::cell::PortAssignment;
use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph};
use crate::kekule::{is_kekule_state, Limits};

/// Dense matrix with bit-packed rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    cols: usize,
    rows: Vec<BitSet>,
}

/// Reduced row echelon form: `rows[i]` has its leading one at `pivots[i]`.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rows: Vec<BitSet>,
    pub pivots: Vec<usize>,
}

impl Gf2Matrix {
    pub fn new(cols: usize) -> Self {
        Gf2Matrix { cols, rows: Vec::new() }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitSet>) -> Self {
        assert!(rows.iter().all(|r| r.width() == cols));
        Gf2Matrix { cols, rows }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[BitSet] {
        &self.rows
    }

    pub fn push_row(&mut self, row: BitSet) {
        assert_eq!(row.width(), self.cols);
        self.rows.push(row);
    }

    /// Row reduction restricted to the first `limit` columns as pivots.
    fn reduce(mut rows: Vec<BitSet>, limit: usize) -> Echelon {
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..limit {
            let Some(found) = (next..rows.len()).find(|&i| rows[i].contains(col)) else {
                continue;
            };
            rows.swap(next, found);
            let pivot_row = rows[next].clone();
            for (i, r) in rows.iter_mut().enumerate() {
                if i != next && r.contains(col) {
                    r.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            next += 1;
        }
        Echelon { rows, pivots }
    }

    pub fn echelon(&self) -> Echelon {
        let mut e = Self::reduce(self.rows.clone(), self.cols);
        e.rows.truncate(e.pivots.len());
        e
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Some `x` with `M x = rhs`; free variables are zero.
    pub fn solve(&self, rhs: &BitSet) -> Option<BitSet> {
        assert_eq!(rhs.width(), self.rows.len());
        let aug: Vec<BitSet> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut a = BitSet::new(self.cols + 1);
                for j in r.ones() {
                    a.insert(j);
                }
                a.set(self.cols, rhs.contains(i));
                a
            })
            .collect();
        let e = Self::reduce(aug, self.cols);
        // A zero row with a one on the right-hand side means inconsistency.
        if e.rows[e.pivots.len()..].iter().any(|r| r.contains(self.cols)) {
            return None;
        }
        let mut x = BitSet::new(self.cols);
        for (r, &p) in e.rows.iter().zip(&e.pivots) {
            x.set(p, r.contains(self.cols));
        }
        Some(x)
    }

    /// A basis of `{x : M x = 0}`.
    pub fn nullspace(&self) -> Vec<BitSet> {
        let e = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &e.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut x = BitSet::new(self.cols);
                x.insert(f);
                for (r, &p) in e.rows.iter().zip(&e.pivots) {
                    if r.contains(f) {
                        x.insert(p);
                    }
                }
                x
            })
            .collect()
    }

    pub fn mul(&self, x: &BitSet) -> BitSet {
        let mut out = BitSet::new(self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            out.set(i, r.and(x).count() % 2 == 1);
        }
        out
    }
}

/// Every internal node has odd degree in `w`.
pub fn is_semi_kekule(g: &Graph, w: &EdgeSet) -> bool {
    w.width() == g.edge_count() && g.internal_nodes().all(|v| g.degree_in(w, v) % 2 == 1)
}

/// Node-by-edge incidence matrix.
pub fn incidence_matrix(g: &Graph) -> Gf2Matrix {
    let rows = (0..g.node_count())
        .map(|v| g.edge_set(g.incident(v).iter().copied()))
        .collect();
    Gf2Matrix::from_rows(g.edge_count(), rows)
}

/// The parity system for assignment `k`: one row per internal node with
/// right-hand side 1, and one row per port fixing its edge to `p ∈ k`.
pub fn semi_kekule_system(g: &Graph, k: &PortAssignment) -> (Gf2Matrix, BitSet) {
    let mut m = Gf2Matrix::new(g.edge_count());
    let mut rhs = Vec::new();
    for v in g.internal_nodes() {
        m.push_row(g.edge_set(g.incident(v).iter().copied()));
        rhs.push(true);
    }
    for (i, &p) in g.ports().iter().enumerate() {
        m.push_row(g.edge_set([g.port_edge(p)]));
        rhs.push(k.contains(i));
    }
    let rhs = BitSet::from_indices(rhs.len(), rhs.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i));
    (m, rhs)
}

fn require_connected(g: &Graph) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::Disconnected)
    }
}

fn check_assignment(g: &Graph, k: &PortAssignment) -> Result<()> {
    if k.width() == g.port_count() {
        Ok(())
    } else {
        Err(Error::PortSetMismatch)
    }
}

/// A semi-Kekulé state with `(W|P) = k`, or `None` when the parity of `k`
/// does not match the signature.
pub fn solve_semi_kekule(g: &Graph, k: &PortAssignment) -> Result<Option<EdgeSet>> {
    require_connected(g)?;
    check_assignment(g, k)?;
    let (m, rhs) = semi_kekule_system(g, k);
    let x = m.solve(&rhs);
    debug_assert!(x.as_ref().is_none_or(|x| m.mul(x) == rhs));
    Ok(x)
}

/// Basis of the homogeneous kernel `HSK(G)`: edge sets with every degree
/// even. Its elements are fundamental cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HskBasis {
    pub cycles: Vec<EdgeSet>,
}

impl HskBasis {
    pub fn dimension(&self) -> usize {
        self.cycles.len()
    }

    pub fn span_len(&self) -> u128 {
        1u128 << self.cycles.len()
    }
}

pub fn hsk_basis(g: &Graph) -> Result<HskBasis> {
    require_connected(g)?;
    let cycles = g.cycle_basis()?;
    let r = g.edge_count() + 1 - g.node_count();
    if cycles.len() != r {
        return Err(Error::Internal(format!("cycle basis has {} elements, expected {r}", cycles.len())));
    }
    for c in &cycles {
        if (0..g.node_count()).any(|v| g.degree_in(c, v) % 2 == 1) {
            return Err(Error::Internal("basis element has an odd node".into()));
        }
    }
    Ok(HskBasis { cycles })
}

/// Visits `base ⊕ span(basis)` in Gray-code order.
pub fn for_each_in_span(base: &EdgeSet, basis: &[EdgeSet], mut visit: impl FnMut(&EdgeSet)) {
    assert!(basis.len() < 64);
    let mut cur = base.clone();
    visit(&cur);
    for i in 1u64..(1u64 << basis.len()) {
        cur.xor_assign(&basis[i.trailing_zeros() as usize]);
        visit(&cur);
    }
}

pub fn enumerate_semi_kekule(g: &Graph, k: &PortAssignment) -> Result<Vec<EdgeSet>> {
    enumerate_semi_kekule_with(g, k, Limits::default())
}

/// All `2^r` semi-Kekulé states with `(W|P) = k`, sorted.
pub fn enumerate_semi_kekule_with(g: &Graph, k: &PortAssignment, limits: Limits) -> Result<Vec<EdgeSet>> {
    let w0 = solve_semi_kekule(g, k)?.ok_or(Error::ParityMismatch)?;
    let basis = hsk_basis(g)?;
    if basis.dimension() > limits.max_rank {
        return Err(Error::EnumerationTooLarge {
            r: basis.dimension(),
            limit: limits.max_rank,
        });
    }
    let mut out = Vec::with_capacity(1 << basis.dimension());
    for_each_in_span(&w0, &basis.cycles, |w| out.push(w.clone()));
    out.sort_unstable();
    Ok(out)
}

/// Kekulé states with `(W|P) = k`, found by filtering the semi-Kekulé span.
/// An independent route to the backtracking enumeration.
pub fn kekule_states_by_span(g: &Graph, k: &PortAssignment) -> Result<Vec<EdgeSet>> {
    let Some(w0) = solve_semi_kekule(g, k)? else {
        return Ok(Vec::new());
    };
    let basis = hsk_basis(g)?;
    if basis.dimension() > Limits::default().max_rank {
        return Err(Error::EnumerationTooLarge {
            r: basis.dimension(),
            limit: Limits::default().max_rank,
        });
    }
    let mut out = Vec::new();
    for_each_in_span(&w0, &basis.cycles, |w| {
        if is_kekule_state(g, w) {
            out.push(w.clone());
        }
    });
    out.sort_unstable();
    Ok(out)
}
