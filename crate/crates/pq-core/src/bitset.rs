//! Compact sets of element indices over a fixed universe `0..n`.
//!
//! Subgroups, conjugacy classes, and kernels are all index sets over a small
//! carrier, so a word-packed bitset is the working representation everywhere.

use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IndexSet {
    universe: usize,
    words: Vec<u64>,
}

impl IndexSet {
    pub fn empty(universe: usize) -> Self {
        IndexSet {
            universe,
            words: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = Self::empty(universe);
        for i in 0..universe {
            set.insert(i);
        }
        set
    }

    pub fn singleton(universe: usize, index: usize) -> Self {
        let mut set = Self::empty(universe);
        set.insert(index);
        set
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, indices: I) -> Self {
        let mut set = Self::empty(universe);
        for i in indices {
            set.insert(i);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Inserts `index`, returning true if it was not already present.
    pub fn insert(&mut self, index: usize) -> bool {
        debug_assert!(index < self.universe);
        let word = &mut self.words[index / 64];
        let mask = 1u64 << (index % 64);
        let fresh = *word & mask == 0;
        *word |= mask;
        fresh
    }

    pub fn contains(&self, index: usize) -> bool {
        debug_assert!(index < self.universe);
        self.words[index / 64] & (1u64 << (index % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + bit)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union(&self, other: &Self) -> Self {
        debug_assert_eq!(self.universe, other.universe);
        IndexSet {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        debug_assert_eq!(self.universe, other.universe);
        IndexSet {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn difference(&self, other: &Self) -> Self {
        debug_assert_eq!(self.universe, other.universe);
        IndexSet {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & !b)
                .collect(),
        }
    }

    pub fn complement(&self) -> Self {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        if let Some(last) = words.last_mut() {
            let used = self.universe % 64;
            if used != 0 {
                *last &= (1u64 << used) - 1;
            }
        }
        IndexSet {
            universe: self.universe,
            words,
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Lexicographic order on the sorted member lists, used for canonical
    /// subgroup ordering after comparing by size.
    pub fn cmp_members(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_contains_len() {
        let mut s = IndexSet::empty(130);
        assert!(s.insert(0));
        assert!(s.insert(129));
        assert!(!s.insert(0));
        assert!(s.contains(0) && s.contains(129) && !s.contains(64));
        assert_eq!(s.len(), 2);
        assert_eq!(s.to_vec(), vec![0, 129]);
    }

    #[test]
    fn complement_respects_universe() {
        let s = IndexSet::from_indices(70, [0, 69]);
        let c = s.complement();
        assert_eq!(c.len(), 68);
        assert!(!c.contains(0) && !c.contains(69) && c.contains(68));
        assert!(s.is_disjoint(&c));
        assert_eq!(s.union(&c).len(), 70);
    }

    #[test]
    fn subset_and_member_order() {
        let a = IndexSet::from_indices(8, [0, 5]);
        let b = IndexSet::from_indices(8, [1, 2]);
        let all = IndexSet::full(8);
        assert!(a.is_subset(&all) && !all.is_subset(&a));
        // {0,5} precedes {1,2} on first differing member.
        assert_eq!(a.cmp_members(&b), Ordering::Less);
        assert_eq!(a.cmp_members(&a), Ordering::Equal);
    }
}
