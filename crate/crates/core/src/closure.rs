//! The two closure operators induced by superposition, and the subset
//! families they generate.
//!
//! `line(p, q)` is the set of states whose actuality sets contain everything
//! actual in both `p` and `q`; a set is *span-closed* when it is stable under
//! lines through its members, and `span(P)` is the least span-closed superset
//! of `P`. The *hull* of a set `S` is the set of all superpositions of `S`:
//! states whose actuality sets contain the intersection of the actuality sets
//! over `S`. Hulls of pairs and lines coincide; on larger sets the span is
//! contained in the hull and equality is governed by the minimal
//! superposition axioms (see [`crate::superposition`]).

use crate::lattice::{PropId, PropertyLattice};
use crate::report::{AxiomEntry, AxiomReport, Witness};
use crate::set::{subsets_in_witness_order, PropSet, StateId, StateSet};
use crate::system::StatePropertySystem;
use crate::{BudgetExceeded, Limits};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

/// States superposed on the pair `{p, q}`: everything actual in both stays
/// actual. This is both the span and the hull of the pair.
pub fn line(sys: &StatePropertySystem, p: StateId, q: StateId) -> StateSet {
    let common = sys.actual(p).intersection(sys.actual(q));
    StateSet::from_iter(sys.states().filter(|&s| common.is_subset(sys.actual(s))))
}

/// The set of all superpositions of `s`: states whose actuality sets contain
/// `⋂_{t ∈ s} ξ(t)`. The hull of the empty set is empty, because the empty
/// intersection is the whole lattice and no state has the bottom actual.
pub fn hull(sys: &StatePropertySystem, s: StateSet) -> StateSet {
    let n_props = sys.lattice().len();
    let mut common = PropSet::full(n_props);
    for t in s.iter() {
        common.intersect_with(sys.actual(t));
    }
    StateSet::from_iter(sys.states().filter(|&p| common.is_subset(sys.actual(p))))
}

/// Superpositions of `s` with respect to the testable properties only.
pub fn testable_hull(sys: &StatePropertySystem, s: StateSet) -> StateSet {
    let mut common: Vec<PropId> = sys.testable().to_vec();
    common.retain(|&a| s.iter().all(|t| sys.is_actual(a, t)));
    StateSet::from_iter(
        sys.states()
            .filter(|&p| common.iter().all(|&a| sys.is_actual(a, p))),
    )
}

/// Memoized line table over ordered state pairs.
#[derive(Clone, Debug)]
pub struct LineTable {
    table: Vec<Vec<StateSet>>,
}

impl LineTable {
    pub fn build(sys: &StatePropertySystem) -> Self {
        let n = sys.n_states();
        let table = (0..n)
            .map(|p| (0..n).map(|q| line(sys, StateId(p), StateId(q))).collect())
            .collect();
        LineTable { table }
    }

    pub fn line(&self, p: StateId, q: StateId) -> StateSet {
        self.table[p.0][q.0]
    }

    pub fn n_states(&self) -> usize {
        self.table.len()
    }

    /// Least span-closed superset of `seed`: the fixpoint of adjoining lines
    /// through members.
    pub fn span(&self, seed: StateSet) -> StateSet {
        let mut current = seed;
        loop {
            let mut next = current;
            let members: Vec<StateId> = current.to_vec();
            for (i, &p) in members.iter().enumerate() {
                for &q in &members[i..] {
                    next = next.union(&self.line(p, q));
                }
            }
            if next == current {
                return current;
            }
            current = next;
        }
    }

    /// True when `s` is stable under lines through its members.
    pub fn is_span_closed(&self, s: StateSet) -> bool {
        let members: Vec<StateId> = s.to_vec();
        for (i, &p) in members.iter().enumerate() {
            for &q in &members[i..] {
                if !self.line(p, q).is_subset(&s) {
                    return false;
                }
            }
        }
        true
    }
}

/// Least span-closed superset of `p`.
pub fn span(sys: &StatePropertySystem, p: StateSet) -> StateSet {
    LineTable::build(sys).span(p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    /// All span-closed subsets: the subspaces of the derived geometry.
    Subspaces,
    /// All hull-closed subsets: the closed subspaces.
    Closed,
    /// All subsets closed under the testable-restricted hull.
    TestableClosed,
}

impl FamilyKind {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::Subspaces => "subspaces",
            FamilyKind::Closed => "closed",
            FamilyKind::TestableClosed => "testable-closed",
        }
    }
}

/// A family of state subsets closed under intersection, ordered by
/// inclusion; meet is intersection and join is the closure of the union.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetFamily {
    pub kind: FamilyKind,
    pub n_states: usize,
    /// Sorted by (cardinality, bitmask); deterministic.
    pub members: Vec<StateSet>,
}

impl SubsetFamily {
    pub fn contains(&self, s: StateSet) -> bool {
        self.members.contains(&s)
    }

    pub fn index_of(&self, s: StateSet) -> Option<usize> {
        self.members.iter().position(|&m| m == s)
    }

    pub fn bottom(&self) -> StateSet {
        StateSet::EMPTY
    }

    pub fn top(&self) -> StateSet {
        StateSet::full(self.n_states)
    }

    /// Least member containing `s`; families are intersection systems, so
    /// this is the intersection of all members containing `s`.
    pub fn closure_of(&self, s: StateSet) -> StateSet {
        let mut acc = self.top();
        for &m in &self.members {
            if s.is_subset(&m) {
                acc = acc.intersection(&m);
            }
        }
        acc
    }

    pub fn meet(&self, a: StateSet, b: StateSet) -> StateSet {
        a.intersection(&b)
    }

    pub fn join(&self, a: StateSet, b: StateSet) -> StateSet {
        self.closure_of(a.union(&b))
    }

    /// Member name used in exported lattices and diagrams.
    pub fn member_name(sys: &StatePropertySystem, m: StateSet) -> String {
        format!("{{{}}}", sys.set_names(m).join(","))
    }

    /// The family as an explicit bounded lattice under inclusion.
    pub fn to_lattice(&self, sys: &StatePropertySystem) -> PropertyLattice {
        let names: Vec<String> = self
            .members
            .iter()
            .map(|&m| Self::member_name(sys, m))
            .collect();
        let mut leq = Vec::new();
        for (i, &a) in self.members.iter().enumerate() {
            for (j, &b) in self.members.iter().enumerate() {
                if a.is_subset(&b) {
                    leq.push((PropId(i), PropId(j)));
                }
            }
        }
        let bottom = PropId(self.index_of(self.bottom()).expect("empty set is closed"));
        let top = PropId(self.index_of(self.top()).expect("full set is closed"));
        PropertyLattice::new(names, &leq, bottom, top)
            .expect("an intersection system is a lattice under inclusion")
    }
}

/// Enumerates all closed subsets for the chosen closure.
///
/// Refuses when `2^|Σ|` exceeds the budget; use the on-demand closures
/// instead on larger instances.
pub fn enumerate_family(
    sys: &StatePropertySystem,
    kind: FamilyKind,
    limits: &Limits,
) -> Result<SubsetFamily, BudgetExceeded> {
    let n = sys.n_states();
    if !limits.allows_power_set(n) {
        return Err(BudgetExceeded {
            required: Limits::subset_space(n),
            budget: limits.max_subsets,
        });
    }
    let lines = LineTable::build(sys);
    let mut members = Vec::new();
    for s in subsets_in_witness_order(n) {
        let closed = match kind {
            FamilyKind::Subspaces => lines.is_span_closed(s),
            FamilyKind::Closed => hull(sys, s) == s,
            FamilyKind::TestableClosed => testable_hull(sys, s) == s,
        };
        if closed {
            members.push(s);
        }
    }
    members.sort_by_key(|m| (m.len(), m.0));
    Ok(SubsetFamily {
        kind,
        n_states: n,
        members,
    })
}

fn set_witness(sys: &StatePropertySystem, sets: &[StateSet]) -> Witness {
    Witness::Subsets {
        subsets: sets.iter().map(|&s| sys.set_names(s)).collect(),
        states: Vec::new(),
        props: Vec::new(),
    }
}

/// Verifies the closure laws of the span and hull operators over all
/// subsets (and subset pairs) within the budget:
///
/// - span is extensive, monotone and idempotent (`C1`, `C2`);
/// - the union and intersection interchange laws for spans, for pairs and
///   for small families (unions exactly, intersections as inclusions);
/// - span is a simple closure exactly when axiom A holds (given at least two
///   states);
/// - the hull is extensive, monotone, and span-closed, and contains the span.
pub fn check_closure_laws(sys: &StatePropertySystem, limits: &Limits) -> AxiomReport {
    let mut report = AxiomReport::new();
    let n = sys.n_states();
    if !limits.allows_power_set(n) {
        for axiom in [
            "C1",
            "C2",
            "span-union-law",
            "span-intersection-law",
            "hull-laws",
        ] {
            report.push(AxiomEntry::partial(
                axiom,
                "state set too large for subset enumeration",
            ));
        }
        return report;
    }
    let lines = LineTable::build(sys);
    let subsets: Vec<StateSet> = subsets_in_witness_order(n).collect();
    // tables indexed by bitmask
    let mut spans = alloc::vec![StateSet::EMPTY; 1 << n];
    let mut hulls = alloc::vec![StateSet::EMPTY; 1 << n];
    for &s in &subsets {
        spans[s.0 as usize] = lines.span(s);
        hulls[s.0 as usize] = hull(sys, s);
    }
    let span_of = |s: StateSet| spans[s.0 as usize];
    let hull_of = |s: StateSet| hulls[s.0 as usize];

    // C1 extensive + idempotent
    let mut entry = AxiomEntry::holds("C1");
    for &s in &subsets {
        let sp = span_of(s);
        if !s.is_subset(&sp) || span_of(sp) != sp {
            entry = AxiomEntry::fails("C1", set_witness(sys, &[s]));
            break;
        }
    }
    report.push(entry);

    // C2 monotone: P1 ⊆ span(P2) ⇒ span(P1) ⊆ span(P2), over all pairs
    let pair_budget = (subsets.len() as u64).checked_mul(subsets.len() as u64);
    let mut entry = AxiomEntry::holds("C2");
    if pair_budget.is_none_or(|b| b > limits.max_subsets) {
        entry = AxiomEntry::partial("C2", "subset pair space exceeds budget");
    } else {
        'c2: for &p1 in &subsets {
            for &p2 in &subsets {
                if p1.is_subset(&span_of(p2)) && !span_of(p1).is_subset(&span_of(p2)) {
                    entry = AxiomEntry::fails("C2", set_witness(sys, &[p1, p2]));
                    break 'c2;
                }
            }
        }
    }
    report.push(entry);

    // union law: span(A∪B) = span(span(A)∪B) = span(span(A)∪span(B))
    let mut entry = AxiomEntry::holds("span-union-law");
    let mut steps = limits.steps();
    'u: for &a in &subsets {
        let sa = span_of(a);
        for &b in &subsets {
            if !steps.take() {
                entry = AxiomEntry::partial(
                    "span-union-law",
                    &format!(
                        "explored {} subset pairs before hitting the budget",
                        steps.taken()
                    ),
                );
                break 'u;
            }
            let lhs = span_of(a.union(&b));
            if lhs != span_of(sa.union(&b)) || lhs != span_of(sa.union(&span_of(b))) {
                entry = AxiomEntry::fails("span-union-law", set_witness(sys, &[a, b]));
                break 'u;
            }
        }
    }
    report.push(entry);

    // intersection law: span(A∩B) ⊆ span(span(A)∩B) ⊆ span(A)∩span(B)
    let mut entry = AxiomEntry::holds("span-intersection-law");
    let mut steps = limits.steps();
    'i: for &a in &subsets {
        let sa = span_of(a);
        for &b in &subsets {
            if !steps.take() {
                entry = AxiomEntry::partial(
                    "span-intersection-law",
                    &format!(
                        "explored {} subset pairs before hitting the budget",
                        steps.taken()
                    ),
                );
                break 'i;
            }
            let mid = span_of(sa.intersection(&b));
            if !span_of(a.intersection(&b)).is_subset(&mid)
                || !mid.is_subset(&sa.intersection(&span_of(b)))
            {
                entry = AxiomEntry::fails("span-intersection-law", set_witness(sys, &[a, b]));
                break 'i;
            }
        }
    }
    report.push(entry);

    // family laws on three-member families: span(∪A) = span(∪ span(A)) and
    // span(∩A) ⊆ ∩ span(A)
    let mut entry = AxiomEntry::holds("span-family-laws");
    let mut steps = limits.steps();
    'f: for &a in &subsets {
        let sa = span_of(a);
        for &b in &subsets {
            let sb = span_of(b);
            for &c in &subsets {
                if !steps.take() {
                    entry = AxiomEntry::partial(
                        "span-family-laws",
                        &format!(
                            "explored {} subset triples before hitting the budget",
                            steps.taken()
                        ),
                    );
                    break 'f;
                }
                let sc = span_of(c);
                let union = span_of(a.union(&b).union(&c));
                if union != span_of(sa.union(&sb).union(&sc)) {
                    entry = AxiomEntry::fails("span-family-laws", set_witness(sys, &[a, b, c]));
                    break 'f;
                }
                let inter = span_of(a.intersection(&b).intersection(&c));
                if !inter.is_subset(&sa.intersection(&sb).intersection(&sc)) {
                    entry = AxiomEntry::fails("span-family-laws", set_witness(sys, &[a, b, c]));
                    break 'f;
                }
            }
        }
    }
    report.push(entry);

    // simplicity ⇔ axiom A, when there are at least two states
    if n >= 2 {
        let simple = span_of(StateSet::EMPTY).is_empty()
            && sys
                .states()
                .all(|p| span_of(StateSet::singleton(p)) == StateSet::singleton(p));
        let a_holds = sys.axiom_a_holds();
        let entry = if simple == a_holds {
            AxiomEntry::holds("simple-iff-A")
        } else if simple {
            AxiomEntry::fails(
                "simple-iff-A",
                Witness::text("span is simple but axiom A fails"),
            )
        } else {
            let p = sys
                .states()
                .find(|&p| span_of(StateSet::singleton(p)) != StateSet::singleton(p))
                .expect("non-simple span has a fat singleton");
            AxiomEntry::fails(
                "simple-iff-A",
                set_witness(
                    sys,
                    &[StateSet::singleton(p), span_of(StateSet::singleton(p))],
                ),
            )
            .with_note("axiom A holds but a singleton span is larger")
        };
        report.push(entry);
    } else {
        report.push(AxiomEntry::unmet(
            "simple-iff-A",
            "needs at least two states",
        ));
    }

    // hull laws: extensive, monotone, span-closed, and above the span
    let mut entry = AxiomEntry::holds("hull-laws");
    let mut steps = limits.steps();
    'h: for &a in &subsets {
        let ha = hull_of(a);
        if !a.is_subset(&ha) || !lines.is_span_closed(ha) || !span_of(a).is_subset(&ha) {
            entry = AxiomEntry::fails("hull-laws", set_witness(sys, &[a]));
            break 'h;
        }
        for &b in &subsets {
            if !steps.take() {
                entry = AxiomEntry::partial(
                    "hull-laws",
                    &format!(
                        "explored {} subset pairs before hitting the budget",
                        steps.taken()
                    ),
                );
                break 'h;
            }
            let hb = hull_of(b);
            if a.is_subset(&hb) && !ha.is_subset(&hb) {
                entry = AxiomEntry::fails("hull-laws", set_witness(sys, &[a, b]));
                break 'h;
            }
        }
    }
    report.push(entry);

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::fixture;
    use crate::BudgetExceeded;

    #[test]
    fn family_enumeration_respects_the_budget() {
        let sys = fixture("FANO").unwrap();
        let tight = Limits::with_budget(64);
        assert_eq!(
            enumerate_family(&sys, FamilyKind::Subspaces, &tight),
            Err(BudgetExceeded {
                required: Some(128),
                budget: 64
            })
        );
    }

    #[test]
    fn family_lattice_round_trip() {
        let sys = fixture("MO2").unwrap();
        let fam = enumerate_family(&sys, FamilyKind::Closed, &Limits::default()).unwrap();
        let lat = fam.to_lattice(&sys);
        assert_eq!(lat.len(), fam.members.len());
        // meet is intersection, join is the closure of the union
        for (i, &a) in fam.members.iter().enumerate() {
            for (j, &b) in fam.members.iter().enumerate() {
                let m = lat.meet(crate::PropId(i), crate::PropId(j));
                assert_eq!(fam.members[m.0], a.intersection(&b));
                let jn = lat.join(crate::PropId(i), crate::PropId(j));
                assert_eq!(fam.members[jn.0], fam.closure_of(a.union(&b)));
            }
        }
    }

    #[test]
    fn empty_hull_is_empty() {
        for name in ["CBIT", "MO2", "FANO"] {
            let sys = fixture(name).unwrap();
            assert!(hull(&sys, StateSet::EMPTY).is_empty());
            assert!(testable_hull(&sys, StateSet::EMPTY).is_empty());
        }
    }
}
