//! Cells: sets of port assignments over a fixed port set.

use std::collections::BTreeSet;
use std::fmt;

use crate::bits::BitSet;
use crate::error::{Error, Result};

/// Subset of a port set, as a bit vector over its canonical ordering.
pub type PortAssignment = BitSet;

/// Lexicographically ordered, duplicate-free list of port labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PortSet {
    labels: Vec<String>,
}

impl PortSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        labels.sort();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::LabelCollision(w[0].clone()));
        }
        Ok(PortSet { labels })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.labels.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }

    pub fn empty_assignment(&self) -> PortAssignment {
        PortAssignment::new(self.len())
    }

    pub fn assignment<S: AsRef<str>>(&self, labels: &[S]) -> Result<PortAssignment> {
        let mut k = self.empty_assignment();
        for l in labels {
            let l = l.as_ref();
            k.insert(self.index(l).ok_or_else(|| Error::NotAPort(l.to_string()))?);
        }
        Ok(k)
    }

    pub fn labels_of(&self, k: &PortAssignment) -> Vec<String> {
        k.ones().map(|i| self.labels[i].clone()).collect()
    }

    /// `{a, b}` with labels sorted; `{}` for the empty assignment.
    pub fn format(&self, k: &PortAssignment) -> String {
        format!("{{{}}}", self.labels_of(k).join(", "))
    }

    pub fn check(&self, k: &PortAssignment) -> Result<()> {
        if k.width() == self.len() {
            Ok(())
        } else {
            Err(Error::PortSetMismatch)
        }
    }

    fn subset(&self, indices: &[usize]) -> PortSet {
        PortSet {
            labels: indices.iter().map(|&i| self.labels[i].clone()).collect(),
        }
    }
}

/// Two distinct ports `{p, q}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Channel {
    bits: PortAssignment,
}

impl Channel {
    pub fn new(width: usize, p: usize, q: usize) -> Result<Self> {
        if p == q || p >= width || q >= width {
            return Err(Error::Precondition("channel needs two distinct ports".into()));
        }
        Ok(Channel {
            bits: PortAssignment::from_indices(width, [p, q]),
        })
    }

    pub fn from_labels(ports: &PortSet, p: &str, q: &str) -> Result<Self> {
        let i = ports.index(p).ok_or_else(|| Error::NotAPort(p.to_string()))?;
        let j = ports.index(q).ok_or_else(|| Error::NotAPort(q.to_string()))?;
        Channel::new(ports.len(), i, j)
    }

    pub fn from_assignment(k: PortAssignment) -> Result<Self> {
        if k.count() != 2 {
            return Err(Error::Precondition("channel needs exactly two ports".into()));
        }
        Ok(Channel { bits: k })
    }

    pub fn as_assignment(&self) -> &PortAssignment {
        &self.bits
    }

    pub fn ends(&self) -> (usize, usize) {
        let mut it = self.bits.ones();
        (it.next().expect("two ports"), it.next().expect("two ports"))
    }
}

pub fn sym_diff(k: &PortAssignment, k2: &PortAssignment) -> Result<PortAssignment> {
    if k.width() != k2.width() {
        return Err(Error::PortSetMismatch);
    }
    Ok(k.xor(k2))
}

pub fn hamming(k: &PortAssignment, k2: &PortAssignment) -> Result<usize> {
    Ok(sym_diff(k, k2)?.count())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cell {
    ports: PortSet,
    members: BTreeSet<PortAssignment>,
}

impl Cell {
    pub fn new<I: IntoIterator<Item = PortAssignment>>(ports: PortSet, members: I) -> Result<Self> {
        let members: BTreeSet<_> = members.into_iter().collect();
        for k in &members {
            ports.check(k)?;
        }
        Ok(Cell { ports, members })
    }

    /// Builds a cell from label lists; convenient for literals.
    pub fn from_labels<S: AsRef<str>>(ports: &[S], members: &[&[S]]) -> Result<Self> {
        let ports = PortSet::new(ports.iter().map(|s| s.as_ref().to_string()))?;
        let members = members
            .iter()
            .map(|m| ports.assignment(m))
            .collect::<Result<Vec<_>>>()?;
        Cell::new(ports, members)
    }

    pub fn ports(&self) -> &PortSet {
        &self.ports
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, k: &PortAssignment) -> bool {
        self.members.contains(k)
    }

    pub fn members(&self) -> impl Iterator<Item = &PortAssignment> {
        self.members.iter()
    }

    /// Members by cardinality, then lexicographically by label.
    pub fn sorted_members(&self) -> Vec<&PortAssignment> {
        let mut v: Vec<_> = self.members.iter().collect();
        v.sort_by_key(|k| k.display_key());
        v
    }

    pub fn assignment<S: AsRef<str>>(&self, labels: &[S]) -> Result<PortAssignment> {
        self.ports.assignment(labels)
    }

    pub fn format(&self, k: &PortAssignment) -> String {
        self.ports.format(k)
    }

    /// One member per line in display order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for k in self.sorted_members() {
            out.push_str(&self.format(k));
            out.push('\n');
        }
        out
    }

    pub fn diameter(&self) -> Result<usize> {
        if self.is_empty() {
            return Err(Error::EmptyCell);
        }
        let m: Vec<_> = self.members.iter().collect();
        let mut best = 0;
        for (i, a) in m.iter().enumerate() {
            for b in &m[i + 1..] {
                best = best.max(a.xor(b).count());
            }
        }
        Ok(best)
    }

    /// `g ⊕ K`.
    pub fn translate(&self, g: &PortAssignment) -> Result<Cell> {
        self.ports.check(g)?;
        Ok(Cell {
            ports: self.ports.clone(),
            members: self.members.iter().map(|k| k.xor(g)).collect(),
        })
    }

    pub fn is_open(&self, k: &PortAssignment, c: &Channel) -> Result<bool> {
        self.ports.check(k)?;
        self.ports.check(c.as_assignment())?;
        if !self.contains(k) {
            return Err(Error::StateNotInCell);
        }
        Ok(self.contains(&k.xor(c.as_assignment())))
    }

    pub fn flexible_indices(&self) -> Vec<usize> {
        let Some(first) = self.members.first() else {
            return Vec::new();
        };
        let mut varies = self.ports.empty_assignment();
        for k in &self.members {
            varies = varies.or(&k.xor(first));
        }
        varies.ones().collect()
    }

    pub fn flexible_ports(&self) -> Vec<String> {
        self.flexible_indices().into_iter().map(|i| self.ports.labels[i].clone()).collect()
    }

    pub fn is_flexible(&self) -> bool {
        self.flexible_indices().len() == self.ports.len()
    }

    /// Restriction to the flexible ports.
    pub fn flex(&self) -> Cell {
        let keep = self.flexible_indices();
        self.restrict(&keep)
    }

    /// Restriction `{k ∩ Q}` to the ports at `indices` (ascending).
    pub fn restrict(&self, indices: &[usize]) -> Cell {
        let ports = self.ports.subset(indices);
        let members = self
            .members
            .iter()
            .map(|k| PortAssignment::from_indices(indices.len(), (0..indices.len()).filter(|&j| k.contains(indices[j]))))
            .collect();
        Cell { ports, members }
    }

    /// Disjoint channels `D` leading from `g` to `g2` such that every partial
    /// sum stays in the cell. Failure means the cell is not Kekulé.
    pub fn channel_decomposition(&self, g: &PortAssignment, g2: &PortAssignment) -> Result<Vec<Channel>> {
        self.ports.check(g)?;
        self.ports.check(g2)?;
        for k in [g, g2] {
            if !self.contains(k) {
                return Err(Error::StateNotInCell);
            }
        }
        let diff = g.xor(g2);
        if diff.count() % 2 == 1 {
            return Err(Error::NotKekuleCell(format!(
                "{} and {} are at odd distance",
                self.format(g),
                self.format(g2)
            )));
        }
        let mut chosen = Vec::new();
        let mut sums = vec![g.clone()];
        if self.pair_up(diff, &mut sums, &mut chosen) {
            Ok(chosen)
        } else {
            Err(Error::NotKekuleCell(format!(
                "no channel decomposition from {} to {}",
                self.format(g),
                self.format(g2)
            )))
        }
    }

    fn pair_up(&self, rest: PortAssignment, sums: &mut Vec<PortAssignment>, chosen: &mut Vec<Channel>) -> bool {
        let Some(i) = rest.first() else {
            return true;
        };
        for j in rest.ones().skip(1) {
            let c = Channel::new(rest.width(), i, j).expect("distinct");
            let shifted: Vec<_> = sums.iter().map(|s| s.xor(c.as_assignment())).collect();
            if !shifted.iter().all(|s| self.contains(s)) {
                continue;
            }
            let before = sums.len();
            sums.extend(shifted);
            let mut next = rest.clone();
            next.remove(i);
            next.remove(j);
            chosen.push(c);
            if self.pair_up(next, sums, chosen) {
                return true;
            }
            chosen.pop();
            sums.truncate(before);
        }
        false
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `Pow(P)_ε`: all subsets of `ports` with cardinality of parity `epsilon`.
pub fn parity_space(ports: &PortSet, epsilon: u8) -> Cell {
    let n = ports.len();
    assert!(n < 64, "parity space too large");
    let members = (0u64..1 << n)
        .filter(|m| m.count_ones() % 2 == epsilon as u32 % 2)
        .map(|m| PortAssignment::from_mask(n, m));
    Cell::new(ports.clone(), members).expect("widths match")
}
