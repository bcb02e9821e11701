//! Definitional brute-force evaluator.
//!
//! Everything here recomputes closures and relations straight from their
//! set-theoretic definitions — spans as intersections of all stable
//! supersets, sector blocks through an explicit transitive closure — with no
//! memoized tables and no worklist fixpoints. The optimized implementations
//! elsewhere in the crate are diffed against this module; the two sides
//! must agree exactly on every instance.

use crate::lattice::PropId;
use crate::set::{subsets_in_witness_order, PropSet, StateId, StateSet};
use crate::system::StatePropertySystem;
use alloc::vec;
use alloc::vec::Vec;

/// States keeping every property shared by `p` and `q`, straight from the
/// definition.
pub fn line(sys: &StatePropertySystem, p: StateId, q: StateId) -> StateSet {
    let mut out = StateSet::EMPTY;
    for s in sys.states() {
        let mut superposed = true;
        for a in sys.lattice().elements() {
            if sys.is_actual(a, p) && sys.is_actual(a, q) && !sys.is_actual(a, s) {
                superposed = false;
                break;
            }
        }
        if superposed {
            out.insert(s);
        }
    }
    out
}

/// True when `s` is stable under lines through its members, recomputing each
/// line from the actuality sets.
pub fn is_span_closed(sys: &StatePropertySystem, s: StateSet) -> bool {
    for p in s.iter() {
        for q in s.iter() {
            if !line(sys, p, q).is_subset(&s) {
                return false;
            }
        }
    }
    true
}

/// The span as defined: the intersection of all span-closed supersets.
///
/// Enumerates every subset of the state set; quadratic-exponential and
/// deliberately so.
pub fn span(sys: &StatePropertySystem, p: StateSet) -> StateSet {
    let n = sys.n_states();
    let mut acc = StateSet::full(n);
    for g in subsets_in_witness_order(n) {
        if p.is_subset(&g) && is_span_closed(sys, g) {
            acc = acc.intersection(&g);
        }
    }
    acc
}

/// The hull as defined: states whose actuality sets contain the intersection
/// of the actuality sets over `s`.
pub fn hull(sys: &StatePropertySystem, s: StateSet) -> StateSet {
    let mut out = StateSet::EMPTY;
    for p in sys.states() {
        let mut ok = true;
        for a in sys.lattice().elements() {
            if s.iter().all(|t| sys.is_actual(a, t)) && !sys.is_actual(a, p) {
                ok = false;
                break;
            }
        }
        if ok {
            out.insert(p);
        }
    }
    out
}

/// The hull restricted to testable properties.
pub fn testable_hull(sys: &StatePropertySystem, s: StateSet) -> StateSet {
    let mut out = StateSet::EMPTY;
    for p in sys.states() {
        let mut ok = true;
        for &a in sys.testable() {
            if s.iter().all(|t| sys.is_actual(a, t)) && !sys.is_actual(a, p) {
                ok = false;
                break;
            }
        }
        if ok {
            out.insert(p);
        }
    }
    out
}

/// All span-closed subsets, by filtering the power set.
pub fn span_closed_family(sys: &StatePropertySystem) -> Vec<StateSet> {
    let mut members: Vec<StateSet> = subsets_in_witness_order(sys.n_states())
        .filter(|&s| is_span_closed(sys, s))
        .collect();
    members.sort_by_key(|m| (m.len(), m.0));
    members
}

/// All hull-closed subsets, by filtering the power set.
pub fn hull_closed_family(sys: &StatePropertySystem) -> Vec<StateSet> {
    let mut members: Vec<StateSet> = subsets_in_witness_order(sys.n_states())
        .filter(|&s| hull(sys, s) == s)
        .collect();
    members.sort_by_key(|m| (m.len(), m.0));
    members
}

/// The extent of a property, straight from the actuality sets.
pub fn extent(sys: &StatePropertySystem, a: PropId) -> StateSet {
    StateSet::from_iter(sys.states().filter(|&p| sys.is_actual(a, p)))
}

/// The support of a state, by scanning for the least actual property rather
/// than folding the meet table.
pub fn support(sys: &StatePropertySystem, p: StateId) -> Option<PropId> {
    let xi: &PropSet = sys.actual(p);
    xi.iter()
        .map(PropId)
        .find(|&m| xi.iter().all(|a| sys.lattice().leq(m, PropId(a))))
}

/// State orthogonality from the probability table, straight from the
/// definition.
pub fn state_orthogonal(sys: &StatePropertySystem, p: StateId, q: StateId) -> bool {
    sys.testable().iter().any(|&a| {
        sys.mu(p, a).is_some_and(|v| v.is_one()) && sys.mu(q, a).is_some_and(|v| v.is_zero())
    })
}

/// `T'` under the probability-induced orthogonality.
pub fn perp_set(sys: &StatePropertySystem, t: StateSet) -> StateSet {
    StateSet::from_iter(
        sys.states()
            .filter(|&p| t.iter().all(|s| state_orthogonal(sys, p, s))),
    )
}

/// Sector blocks via an explicit transitive closure of the superposition
/// relation, rather than union-find over its edges.
pub fn sector_blocks(sys: &StatePropertySystem) -> Vec<StateSet> {
    let n = sys.n_states();
    let mut related = vec![StateSet::EMPTY; n];
    for p in sys.states() {
        related[p.0].insert(p);
        for q in sys.states() {
            if p != q {
                let pair = StateSet::from_iter([p, q]);
                let extra = hull(sys, pair).difference(&pair);
                if !extra.is_empty() {
                    related[p.0].insert(q);
                }
            }
        }
    }
    // Warshall closure
    for k in 0..n {
        for p in 0..n {
            if related[p].contains(StateId(k)) {
                let rk = related[k];
                related[p] = related[p].union(&rk);
            }
        }
    }
    let mut blocks: Vec<StateSet> = Vec::new();
    for p in sys.states() {
        if !blocks.iter().any(|b| b.contains(p)) {
            blocks.push(related[p.0]);
        }
    }
    blocks
}

/// Classical elements by scanning every candidate partner.
pub fn classical_elements(sys: &StatePropertySystem) -> Vec<PropId> {
    let lat = sys.lattice();
    let n = sys.n_states();
    lat.elements()
        .filter(|&a| {
            let ka = extent(sys, a);
            lat.elements().any(|b| extent(sys, b) == ka.complement(n))
        })
        .collect()
}
