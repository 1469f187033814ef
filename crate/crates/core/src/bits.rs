//! Fixed-width bit vectors.
//!
//! Every subset in this crate (edge subsets, port assignments, rows of a
//! parity system) is a [`BitSet`] indexed by a canonical ordering owned by
//! some parent object. The width is part of the value: two sets of different
//! width never compare equal, and binary operations on mismatched widths
//! panic, so callers that accept foreign input check widths first.

use std::fmt;

use smallvec::SmallVec;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitSet {
    len: usize,
    words: SmallVec<[u64; 2]>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            len,
            words: SmallVec::from_elem(0, len.div_ceil(WORD)),
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::new(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut s = Self::new(len);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Builds a set of width `len` from the low bits of `mask`.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= WORD || mask == 0);
        let mut s = Self::new(len);
        if len > 0 {
            s.words[0] = if len < WORD { mask & ((1u64 << len) - 1) } else { mask };
        }
        s
    }

    /// The low word, for sets of width at most 64.
    pub fn to_mask(&self) -> u64 {
        assert!(self.len <= WORD, "bit set too wide for a mask");
        self.words.first().copied().unwrap_or(0)
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for width {}", self.len);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / WORD] &= !(1 << (i % WORD));
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        if value {
            self.insert(i)
        } else {
            self.remove(i)
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / WORD] ^= 1 << (i % WORD);
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitSet) {
        assert_eq!(self.len, other.len, "bit set width mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitSet) -> BitSet {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn and(&self, other: &BitSet) -> BitSet {
        assert_eq!(self.len, other.len, "bit set width mismatch");
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
        out
    }

    pub fn or(&self, other: &BitSet) -> BitSet {
        assert_eq!(self.len, other.len, "bit set width mismatch");
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
        out
    }

    pub fn difference(&self, other: &BitSet) -> BitSet {
        assert_eq!(self.len, other.len, "bit set width mismatch");
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        out
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.len == other.len && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// Key used for human-facing ordering: by cardinality, then by the sorted
    /// list of member indices.
    pub fn display_key(&self) -> (usize, Vec<usize>) {
        (self.count(), self.ones().collect())
    }
}

pub struct Ones<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + bit);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.ones().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}/{}", self.len)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn wide_sets_cross_word_boundaries() {
        let mut s = BitSet::new(130);
        s.insert(0);
        s.insert(63);
        s.insert(64);
        s.insert(129);
        assert_eq!(s.ones().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
        assert_eq!(s.count(), 4);
        s.toggle(64);
        assert!(!s.contains(64));
        assert_eq!(s.first(), Some(0));
    }

    #[test]
    fn zero_width() {
        let s = BitSet::new(0);
        assert!(s.is_empty());
        assert_eq!(s.ones().count(), 0);
        assert_eq!(s.to_mask(), 0);
    }

    proptest! {
        #[test]
        fn xor_is_a_group(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
            let (a, b, c) = (BitSet::from_mask(40, a), BitSet::from_mask(40, b), BitSet::from_mask(40, c));
            prop_assert_eq!(a.xor(&b), b.xor(&a));
            prop_assert_eq!(a.xor(&b).xor(&c), a.xor(&b.xor(&c)));
            prop_assert!(a.xor(&a).is_empty());
            prop_assert_eq!(a.xor(&BitSet::new(40)), a.clone());
            prop_assert_eq!(a.xor(&b).count(), a.count() + b.count() - 2 * a.and(&b).count());
        }
    }
}
