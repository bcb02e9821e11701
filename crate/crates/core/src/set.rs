//! Index newtypes and the two set representations used everywhere else:
//! state sets as single-word bitmasks (states are capped at 64) and property
//! sets as dynamically sized bitsets.

use alloc::vec;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

/// Index of a state in [`crate::StatePropertySystem::state_names`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct StateId(pub usize);

/// A subset of the state set, as a bitmask over state indices.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
pub struct StateSet(pub u64);

impl FromIterator<StateId> for StateSet {
    fn from_iter<I: IntoIterator<Item = StateId>>(iter: I) -> Self {
        let mut set = StateSet::EMPTY;
        for s in iter {
            set.insert(s);
        }
        set
    }
}

impl StateSet {
    pub const EMPTY: StateSet = StateSet(0);

    pub fn singleton(s: StateId) -> Self {
        StateSet(1 << s.0)
    }

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= 64);
        if n == 64 {
            StateSet(u64::MAX)
        } else {
            StateSet((1u64 << n) - 1)
        }
    }

    pub fn insert(&mut self, s: StateId) {
        self.0 |= 1 << s.0;
    }

    pub fn remove(&mut self, s: StateId) {
        self.0 &= !(1 << s.0);
    }

    pub fn contains(&self, s: StateId) -> bool {
        self.0 & (1 << s.0) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(&self, other: &StateSet) -> StateSet {
        StateSet(self.0 | other.0)
    }

    pub fn intersection(&self, other: &StateSet) -> StateSet {
        StateSet(self.0 & other.0)
    }

    pub fn difference(&self, other: &StateSet) -> StateSet {
        StateSet(self.0 & !other.0)
    }

    pub fn complement(&self, n: usize) -> StateSet {
        StateSet(!self.0 & StateSet::full(n).0)
    }

    pub fn with(&self, s: StateId) -> StateSet {
        StateSet(self.0 | (1 << s.0))
    }

    pub fn without(&self, s: StateId) -> StateSet {
        StateSet(self.0 & !(1 << s.0))
    }

    /// Members in ascending index order.
    pub fn iter(&self) -> impl Iterator<Item = StateId> + '_ {
        let mask = self.0;
        (0..64).filter(move |i| mask & (1 << i) != 0).map(StateId)
    }

    pub fn to_vec(&self) -> Vec<StateId> {
        self.iter().collect()
    }
}

/// Enumerates the subsets of a set of size `n` in the canonical witness
/// order: by increasing cardinality, then lexicographically on the sorted
/// element tuple.
pub fn subsets_in_witness_order(n: usize) -> impl Iterator<Item = StateSet> {
    debug_assert!(n <= 64);
    (0..=n).flat_map(move |k| CombinationIter::new(n, k))
}

/// Same order, restricted to the members of `universe`.
pub fn subsets_of(universe: StateSet) -> impl Iterator<Item = StateSet> {
    let members: Vec<StateId> = universe.to_vec();
    let n = members.len();
    (0..=n).flat_map(move |k| {
        let members = members.clone();
        CombinationIter::new(n, k)
            .map(move |positions| StateSet::from_iter(positions.iter().map(|i| members[i.0])))
    })
}

struct CombinationIter {
    n: usize,
    k: usize,
    current: Option<Vec<usize>>,
}

impl CombinationIter {
    fn new(n: usize, k: usize) -> Self {
        let current = if k <= n { Some((0..k).collect()) } else { None };
        CombinationIter { n, k, current }
    }
}

impl Iterator for CombinationIter {
    type Item = StateSet;

    fn next(&mut self) -> Option<StateSet> {
        let indices = self.current.as_mut()?;
        let result = StateSet::from_iter(indices.iter().map(|&i| StateId(i)));
        // advance to the next k-combination in lexicographic order
        let mut i = self.k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if indices[i] != i + self.n - self.k {
                indices[i] += 1;
                for j in i + 1..self.k {
                    indices[j] = indices[j - 1] + 1;
                }
                break;
            }
        }
        Some(result)
    }
}

/// Index of a property in [`crate::PropertyLattice::names`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PropIdRaw(pub usize);

/// A subset of the property lattice, as a dynamically sized bitset.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PropSet {
    words: Vec<u64>,
    len: usize,
}

impl PropSet {
    pub fn empty(len: usize) -> Self {
        PropSet {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn full(len: usize) -> Self {
        let mut set = PropSet::empty(len);
        for i in 0..len {
            set.insert(i);
        }
        set
    }

    pub fn universe_len(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &PropSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersect_with(&mut self, other: &PropSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &PropSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersection(&self, other: &PropSet) -> PropSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn union(&self, other: &PropSet) -> PropSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    /// Members in ascending index order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.contains(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn witness_order_is_cardinality_then_lex() {
        let order: Vec<u64> = subsets_in_witness_order(3).map(|s| s.0).collect();
        // {}, {0}, {1}, {2}, {01}, {02}, {12}, {012}
        assert_eq!(
            order,
            alloc::vec![0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111]
        );
    }

    #[test]
    fn witness_order_lex_breaks_ties_on_smallest_element() {
        let order: Vec<u64> = subsets_in_witness_order(4)
            .filter(|s| s.len() == 2)
            .map(|s| s.0)
            .collect();
        // {0,1} {0,2} {0,3} {1,2} {1,3} {2,3}
        assert_eq!(
            order,
            alloc::vec![0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100]
        );
    }

    #[test]
    fn subsets_of_respects_universe() {
        let universe = StateSet(0b101);
        let all: Vec<u64> = subsets_of(universe).map(|s| s.0).collect();
        assert_eq!(all, alloc::vec![0b000, 0b001, 0b100, 0b101]);
    }

    #[test]
    fn propset_ops() {
        let mut a = PropSet::empty(130);
        a.insert(0);
        a.insert(64);
        a.insert(129);
        assert_eq!(a.count(), 3);
        assert!(a.contains(64));
        let b = PropSet::full(130);
        assert!(a.is_subset(&b));
        assert!(!b.is_subset(&a));
        assert_eq!(a.intersection(&b), a);
        assert_eq!(a.iter().collect::<Vec<_>>(), alloc::vec![0, 64, 129]);
    }
}
