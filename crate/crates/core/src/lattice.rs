//! Finite bounded lattices of properties.
//!
//! The order is given extensionally as a set of `a ≤ b` pairs; the
//! reflexive-transitive closure is computed at construction time, and the
//! constructor verifies antisymmetry, that every pair of elements has a meet
//! and a join, and that the declared bottom and top are extremal. Meets over
//! the empty set are the top, joins over the empty set the bottom.

use crate::set::PropSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

/// Index of a property in [`PropertyLattice::names`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PropId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeError {
    DuplicateName(String),
    UnknownName(String),
    NotAntisymmetric(String, String),
    NoMeet(String, String),
    NoJoin(String, String),
    BottomNotLeast(String),
    TopNotGreatest(String),
    Empty,
}

impl core::fmt::Display for LatticeError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            LatticeError::DuplicateName(n) => write!(f, "duplicate property name: {}", n),
            LatticeError::UnknownName(n) => write!(f, "unknown property name: {}", n),
            LatticeError::NotAntisymmetric(a, b) => {
                write!(f, "order not antisymmetric: {} and {} are equivalent", a, b)
            }
            LatticeError::NoMeet(a, b) => write!(f, "no greatest lower bound for {} and {}", a, b),
            LatticeError::NoJoin(a, b) => write!(f, "no least upper bound for {} and {}", a, b),
            LatticeError::BottomNotLeast(n) => write!(f, "bottom is not below {}", n),
            LatticeError::TopNotGreatest(n) => write!(f, "top is not above {}", n),
            LatticeError::Empty => write!(f, "lattice has no elements"),
        }
    }
}

/// A finite bounded lattice with explicit order and operation tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyLattice {
    names: Vec<String>,
    /// `up[a]` = the set of `b` with `a ≤ b`.
    up: Vec<PropSet>,
    /// `down[a]` = the set of `b` with `b ≤ a`.
    down: Vec<PropSet>,
    meet_table: Vec<Vec<PropId>>,
    join_table: Vec<Vec<PropId>>,
    bottom: PropId,
    top: PropId,
}

impl PropertyLattice {
    /// Builds from names, `leq` pairs (closure implied) and declared bounds.
    pub fn new(
        names: Vec<String>,
        leq_pairs: &[(PropId, PropId)],
        bottom: PropId,
        top: PropId,
    ) -> Result<Self, LatticeError> {
        let n = names.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(LatticeError::DuplicateName(name.clone()));
            }
        }
        let mut up: Vec<PropSet> = (0..n).map(|_| PropSet::empty(n)).collect();
        for (i, row) in up.iter_mut().enumerate() {
            row.insert(i);
        }
        for &(a, b) in leq_pairs {
            up[a.0].insert(b.0);
        }
        // reflexive-transitive closure
        for k in 0..n {
            for a in 0..n {
                if up[a].contains(k) {
                    let uk = up[k].clone();
                    up[a].union_with(&uk);
                }
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if up[a].contains(b) && up[b].contains(a) {
                    return Err(LatticeError::NotAntisymmetric(
                        names[a].clone(),
                        names[b].clone(),
                    ));
                }
            }
        }
        let mut down: Vec<PropSet> = (0..n).map(|_| PropSet::empty(n)).collect();
        for (a, ups) in up.iter().enumerate() {
            for b in ups.iter() {
                down[b].insert(a);
            }
        }
        for (x, name) in names.iter().enumerate() {
            if !up[bottom.0].contains(x) {
                return Err(LatticeError::BottomNotLeast(name.clone()));
            }
            if !down[top.0].contains(x) {
                return Err(LatticeError::TopNotGreatest(name.clone()));
            }
        }
        // greatest element of a bound set, if any
        let extremum = |bounds: &PropSet, of: &[PropSet]| -> Option<usize> {
            bounds.iter().find(|&m| bounds.is_subset(&of[m]))
        };
        let mut meet_table = vec![vec![PropId(0); n]; n];
        let mut join_table = vec![vec![PropId(0); n]; n];
        for a in 0..n {
            for b in 0..n {
                let lower = down[a].intersection(&down[b]);
                match extremum(&lower, &down) {
                    Some(m) => meet_table[a][b] = PropId(m),
                    None => return Err(LatticeError::NoMeet(names[a].clone(), names[b].clone())),
                }
                let upper = up[a].intersection(&up[b]);
                match extremum(&upper, &up) {
                    Some(j) => join_table[a][b] = PropId(j),
                    None => return Err(LatticeError::NoJoin(names[a].clone(), names[b].clone())),
                }
            }
        }
        Ok(PropertyLattice {
            names,
            up,
            down,
            meet_table,
            join_table,
            bottom,
            top,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: PropId) -> &str {
        &self.names[a.0]
    }

    pub fn index_of(&self, name: &str) -> Option<PropId> {
        self.names.iter().position(|n| n == name).map(PropId)
    }

    pub fn bottom(&self) -> PropId {
        self.bottom
    }

    pub fn top(&self) -> PropId {
        self.top
    }

    pub fn leq(&self, a: PropId, b: PropId) -> bool {
        self.up[a.0].contains(b.0)
    }

    pub fn lt(&self, a: PropId, b: PropId) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn meet(&self, a: PropId, b: PropId) -> PropId {
        self.meet_table[a.0][b.0]
    }

    pub fn join(&self, a: PropId, b: PropId) -> PropId {
        self.join_table[a.0][b.0]
    }

    /// Meet of a set; the empty meet is the top.
    pub fn meet_all<I: IntoIterator<Item = PropId>>(&self, items: I) -> PropId {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Join of a set; the empty join is the bottom.
    pub fn join_all<I: IntoIterator<Item = PropId>>(&self, items: I) -> PropId {
        items
            .into_iter()
            .fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// The set of `b` with `a ≤ b`.
    pub fn upset(&self, a: PropId) -> &PropSet {
        &self.up[a.0]
    }

    /// The set of `b` with `b ≤ a`.
    pub fn downset(&self, a: PropId) -> &PropSet {
        &self.down[a.0]
    }

    pub fn elements(&self) -> impl Iterator<Item = PropId> {
        (0..self.len()).map(PropId)
    }

    /// Minimal nonzero elements.
    pub fn atoms(&self) -> Vec<PropId> {
        self.elements()
            .filter(|&a| a != self.bottom && self.down[a.0].count() == 2)
            .collect()
    }

    /// Maximal elements below the top.
    pub fn coatoms(&self) -> Vec<PropId> {
        self.elements()
            .filter(|&a| a != self.top && self.up[a.0].count() == 2)
            .collect()
    }

    /// `a ⋖ b`: `a < b` with nothing strictly between.
    pub fn covers(&self, a: PropId, b: PropId) -> bool {
        if !self.lt(a, b) {
            return false;
        }
        let between = self.up[a.0].intersection(&self.down[b.0]);
        between.count() == 2
    }

    /// Covering pairs of the order diagram.
    pub fn cover_pairs(&self) -> Vec<(PropId, PropId)> {
        let mut pairs = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if self.covers(a, b) {
                    pairs.push((a, b));
                }
            }
        }
        pairs
    }

    /// Every element is the join of the atoms below it.
    pub fn is_atomistic(&self) -> Option<PropId> {
        let atoms = self.atoms();
        for b in self.elements() {
            let below = atoms.iter().copied().filter(|&a| self.leq(a, b));
            if self.join_all(below) != b {
                return Some(b);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    /// 0 < a, a' < 1, the four-element Boolean lattice.
    pub(crate) fn diamond() -> PropertyLattice {
        PropertyLattice::new(
            names(&["0", "a", "a'", "I"]),
            &[
                (PropId(0), PropId(1)),
                (PropId(0), PropId(2)),
                (PropId(1), PropId(3)),
                (PropId(2), PropId(3)),
            ],
            PropId(0),
            PropId(3),
        )
        .unwrap()
    }

    #[test]
    fn diamond_tables() {
        let l = diamond();
        assert_eq!(l.meet(PropId(1), PropId(2)), PropId(0));
        assert_eq!(l.join(PropId(1), PropId(2)), PropId(3));
        assert_eq!(l.meet_all([]), l.top());
        assert_eq!(l.join_all([]), l.bottom());
        assert_eq!(l.atoms(), alloc::vec![PropId(1), PropId(2)]);
        assert_eq!(l.coatoms(), alloc::vec![PropId(1), PropId(2)]);
        assert!(l.covers(PropId(0), PropId(1)));
        assert!(!l.covers(PropId(0), PropId(3)));
        assert!(l.is_atomistic().is_none());
    }

    #[test]
    fn transitive_closure_is_implied() {
        // chain 0 < m < 1 given only as covers
        let l = PropertyLattice::new(
            names(&["0", "m", "I"]),
            &[(PropId(0), PropId(1)), (PropId(1), PropId(2))],
            PropId(0),
            PropId(2),
        )
        .unwrap();
        assert!(l.leq(PropId(0), PropId(2)));
        // chain is not atomistic: I is not a join of atoms
        assert_eq!(l.is_atomistic(), Some(PropId(2)));
    }

    #[test]
    fn missing_join_is_rejected() {
        // two maximal elements, no top: not a lattice (also fails top check)
        let err = PropertyLattice::new(
            names(&["0", "x", "y"]),
            &[(PropId(0), PropId(1)), (PropId(0), PropId(2))],
            PropId(0),
            PropId(1),
        )
        .unwrap_err();
        assert!(matches!(err, LatticeError::TopNotGreatest(_)));

        // 0 < {x,y} < {u,v} < 1: x,y have no unique join
        let err = PropertyLattice::new(
            names(&["0", "x", "y", "u", "v", "I"]),
            &[
                (PropId(0), PropId(1)),
                (PropId(0), PropId(2)),
                (PropId(1), PropId(3)),
                (PropId(1), PropId(4)),
                (PropId(2), PropId(3)),
                (PropId(2), PropId(4)),
                (PropId(3), PropId(5)),
                (PropId(4), PropId(5)),
            ],
            PropId(0),
            PropId(5),
        )
        .unwrap_err();
        assert!(matches!(err, LatticeError::NoJoin(_, _)));
    }

    #[test]
    fn cycles_are_rejected() {
        let err = PropertyLattice::new(
            names(&["0", "a", "b", "I"]),
            &[
                (PropId(0), PropId(1)),
                (PropId(1), PropId(2)),
                (PropId(2), PropId(1)),
                (PropId(1), PropId(3)),
            ],
            PropId(0),
            PropId(3),
        )
        .unwrap_err();
        assert!(matches!(err, LatticeError::NotAntisymmetric(_, _)));
    }
}
