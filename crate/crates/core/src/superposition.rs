//! Minimal superpositions and the minimal superposition axiom family.
//!
//! A state is a *minimal* superposition of a set `S` when it lies in the
//! hull of `S` but in the hull of no proper subset. The n-MSP / f-MSP axioms
//! demand that every minimal superposition of a (bounded / finite) set stays
//! entangled with both halves of every two-block partition of the set. On a
//! finite state set the finite and unrestricted variants coincide.

use crate::closure::{hull, line, LineTable};
use crate::report::{AxiomEntry, AxiomReport, Witness};
use crate::set::{subsets_in_witness_order, subsets_of, StateId, StateSet};
use crate::system::StatePropertySystem;
use crate::Limits;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MspLevel {
    /// Sets of cardinality at most `n`.
    N(usize),
    /// All finite sets; on a finite state set this is the unrestricted axiom.
    Finite,
}

impl MspLevel {
    pub fn name(&self) -> String {
        match self {
            MspLevel::N(n) => format!("{}-MSP", n),
            MspLevel::Finite => String::from("f-MSP"),
        }
    }

    fn cap(&self, n_states: usize) -> usize {
        match self {
            MspLevel::N(n) => (*n).min(n_states),
            MspLevel::Finite => n_states,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MspWitness {
    pub set: StateSet,
    pub minimal_superposition: StateId,
    pub part1: StateSet,
    pub part2: StateSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MspOutcome {
    Holds,
    Fails(MspWitness),
    /// Budget ran out; no counterexample among the explored subsets.
    Partial {
        explored_subsets: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MspVerdict {
    pub level: MspLevel,
    pub outcome: MspOutcome,
}

impl MspVerdict {
    pub fn holds(&self) -> bool {
        matches!(self.outcome, MspOutcome::Holds)
    }

    pub fn to_entry(&self, sys: &StatePropertySystem) -> AxiomEntry {
        match &self.outcome {
            MspOutcome::Holds => AxiomEntry::holds(&self.level.name()),
            MspOutcome::Fails(w) => AxiomEntry::fails(
                &self.level.name(),
                Witness::Msp {
                    s: sys.set_names(w.set),
                    p: sys.state_name(w.minimal_superposition).into(),
                    s1: sys.set_names(w.part1),
                    s2: sys.set_names(w.part2),
                },
            ),
            MspOutcome::Partial { explored_subsets } => AxiomEntry::partial(
                &self.level.name(),
                &format!(
                    "explored {} subsets before hitting the budget",
                    explored_subsets
                ),
            ),
        }
    }
}

/// True when `p` lies in the hull of `s` but in the hull of no proper
/// subset. Hulls are monotone, so it is enough to miss the hulls of the
/// maximal proper subsets.
pub fn is_minimal_superposition(sys: &StatePropertySystem, p: StateId, s: StateSet) -> bool {
    if !hull(sys, s).contains(p) {
        return false;
    }
    s.iter().all(|t| !hull(sys, s.without(t)).contains(p))
}

/// Quantifies the minimal superposition axiom at the given level over all
/// subsets within the budget, in witness order; the first counterexample
/// wins deterministically.
pub fn check_msp(sys: &StatePropertySystem, level: MspLevel, limits: &Limits) -> MspVerdict {
    let n = sys.n_states();
    let cap = level.cap(n);
    let mut explored: u64 = 0;
    for set in subsets_in_witness_order(n) {
        if set.len() < 2 || set.len() > cap {
            continue;
        }
        if explored >= limits.max_subsets {
            return MspVerdict {
                level,
                outcome: MspOutcome::Partial {
                    explored_subsets: explored,
                },
            };
        }
        explored += 1;
        let hull_of_set = hull(sys, set);
        for p in sys.states() {
            // a minimal superposition of a set with two or more members is
            // never a member
            if set.contains(p) || !hull_of_set.contains(p) {
                continue;
            }
            if !is_minimal_superposition(sys, p, set) {
                continue;
            }
            for part1 in subsets_of(set) {
                if part1.is_empty() || part1 == set {
                    continue;
                }
                let part2 = set.difference(&part1);
                let left = hull(sys, part1.with(p));
                let right = hull(sys, part2);
                if left.intersection(&right).is_empty() {
                    return MspVerdict {
                        level,
                        outcome: MspOutcome::Fails(MspWitness {
                            set,
                            minimal_superposition: p,
                            part1,
                            part2,
                        }),
                    };
                }
            }
        }
    }
    MspVerdict {
        level,
        outcome: MspOutcome::Holds,
    }
}

/// The exchange form of the two-element axiom, meaningful under axiom A:
/// `r ∈ hull{p,q} ∖ {p,q}` implies `p ∈ hull{r,q}`.
pub fn check_exchange(sys: &StatePropertySystem) -> AxiomEntry {
    const NAME: &str = "2-MSP-exchange";
    if !sys.axiom_a_holds() {
        return AxiomEntry::unmet(NAME, "axiom A fails");
    }
    let lines = LineTable::build(sys);
    for p in sys.states() {
        for q in sys.states() {
            for r in lines.line(p, q).iter() {
                if r != p && r != q && !lines.line(r, q).contains(p) {
                    return AxiomEntry::fails(
                        NAME,
                        Witness::states([
                            sys.state_name(p).into(),
                            sys.state_name(q).into(),
                            sys.state_name(r).into(),
                        ]),
                    );
                }
            }
        }
    }
    AxiomEntry::holds(NAME)
}

/// The superposition principle on `within`: every two distinct members admit
/// a third state in the line through them.
pub fn check_sp(sys: &StatePropertySystem, within: StateSet) -> AxiomEntry {
    for p in within.iter() {
        for q in within.iter() {
            if p < q {
                let third = line(sys, p, q).difference(&StateSet::from_iter([p, q]));
                if third.is_empty() {
                    return AxiomEntry::fails(
                        "SP",
                        Witness::states([sys.state_name(p).into(), sys.state_name(q).into()]),
                    );
                }
            }
        }
    }
    AxiomEntry::holds("SP")
}

pub fn sp_holds(sys: &StatePropertySystem) -> bool {
    check_sp(sys, sys.all_states()).verdict.holds()
}

/// The span/hull equalities that follow from the minimal superposition
/// axioms on distinguishable-state systems: hulls of pairs are lines
/// always; under axiom A, hulls of triples are spans given 3-MSP, and hulls
/// of arbitrary finite sets are spans given f-MSP.
pub fn check_span_hull_equalities(sys: &StatePropertySystem, limits: &Limits) -> AxiomReport {
    let mut report = AxiomReport::new();
    let n = sys.n_states();
    let lines = LineTable::build(sys);
    let distinguishable = sys.axiom_a_holds();

    let mut entry = AxiomEntry::holds("pair-hull-is-line");
    'pairs: for p in sys.states() {
        for q in sys.states() {
            if hull(sys, StateSet::from_iter([p, q])) != lines.line(p, q) {
                entry = AxiomEntry::fails(
                    "pair-hull-is-line",
                    Witness::states([sys.state_name(p).into(), sys.state_name(q).into()]),
                );
                break 'pairs;
            }
        }
    }
    report.push(entry);

    let msp3 = check_msp(sys, MspLevel::N(3), limits);
    if !distinguishable {
        report.push(AxiomEntry::unmet("triple-span-is-hull", "axiom A fails"));
    } else if msp3.holds() {
        let mut entry = AxiomEntry::holds("triple-span-is-hull");
        'triples: for s in subsets_in_witness_order(n) {
            if s.len() > 3 || s.is_empty() {
                continue;
            }
            if lines.span(s) != hull(sys, s) {
                entry = AxiomEntry::fails(
                    "triple-span-is-hull",
                    Witness::Subsets {
                        subsets: alloc::vec![sys.set_names(s)],
                        states: Vec::new(),
                        props: Vec::new(),
                    },
                );
                break 'triples;
            }
        }
        report.push(entry);
    } else {
        report.push(AxiomEntry::unmet(
            "triple-span-is-hull",
            "3-MSP does not hold",
        ));
    }

    let mspf = check_msp(sys, MspLevel::Finite, limits);
    if !distinguishable {
        report.push(AxiomEntry::unmet("span-is-hull", "axiom A fails"));
    } else if mspf.holds() {
        if limits.allows_power_set(n) {
            let mut entry = AxiomEntry::holds("span-is-hull");
            for s in subsets_in_witness_order(n) {
                if lines.span(s) != hull(sys, s) {
                    entry = AxiomEntry::fails(
                        "span-is-hull",
                        Witness::Subsets {
                            subsets: alloc::vec![sys.set_names(s)],
                            states: Vec::new(),
                            props: Vec::new(),
                        },
                    );
                    break;
                }
            }
            report.push(entry);
        } else {
            report.push(AxiomEntry::partial(
                "span-is-hull",
                "subset space exceeds budget",
            ));
        }
    } else {
        report.push(AxiomEntry::unmet("span-is-hull", "f-MSP does not hold"));
    }

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::fixture;

    #[test]
    fn level_names() {
        assert_eq!(MspLevel::N(3).name(), "3-MSP");
        assert_eq!(MspLevel::Finite.name(), "f-MSP");
    }

    #[test]
    fn exhausted_budget_reports_partial() {
        let sys = fixture("MO2").unwrap();
        let verdict = check_msp(&sys, MspLevel::Finite, &Limits::with_budget(0));
        assert!(matches!(
            verdict.outcome,
            MspOutcome::Partial {
                explored_subsets: 0
            }
        ));
    }

    #[test]
    fn minimal_superposition_needs_membership_in_the_hull() {
        let sys = fixture("CBIT").unwrap();
        let p = sys.state_index("p").unwrap();
        let q = sys.state_index("q").unwrap();
        // nothing lies outside the pair hull here
        assert!(!is_minimal_superposition(&sys, p, StateSet::singleton(q)));
        assert!(is_minimal_superposition(&sys, p, StateSet::singleton(p)));
    }
}
