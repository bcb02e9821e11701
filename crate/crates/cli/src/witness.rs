//! Re-evaluation of failure witnesses.
//!
//! Every failed axiom entry in a report carries the concrete data that
//! falsified it; this module replays that data against an instance so a
//! report alone reproduces the failure. Axioms of derived structures whose
//! witnesses name synthetic family members are reported as unsupported
//! rather than silently accepted.

use spslab_core::closure::{hull, line, testable_hull, LineTable};
use spslab_core::probability::{
    effective_perp, mu_perp_relation, perp_set_in, prop_orthogonal, testable_complement,
};
use spslab_core::superposition::is_minimal_superposition;
use spslab_core::{PropId, StateId, StatePropertySystem, StateSet, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Recheck {
    /// The witness still falsifies the axiom on this instance.
    Violates,
    /// The witness does not falsify the axiom (stale report or wrong
    /// instance).
    NoViolation,
    /// The axiom is not re-checkable from names on the base instance.
    Unsupported,
}

fn state(sys: &StatePropertySystem, name: &str) -> Option<StateId> {
    sys.state_index(name)
}

fn prop(sys: &StatePropertySystem, name: &str) -> Option<PropId> {
    sys.lattice().index_of(name)
}

fn state_set(sys: &StatePropertySystem, names: &[String]) -> Option<StateSet> {
    let mut set = StateSet::EMPTY;
    for name in names {
        set.insert(state(sys, name)?);
    }
    Some(set)
}

fn check(outcome: Option<bool>) -> Recheck {
    match outcome {
        Some(true) => Recheck::Violates,
        Some(false) => Recheck::NoViolation,
        None => Recheck::NoViolation,
    }
}

/// Replays a failure witness for the named axiom.
pub fn reevaluate(sys: &StatePropertySystem, axiom: &str, witness: &Witness) -> Recheck {
    let lat = sys.lattice();
    match (axiom, witness) {
        ("top-actual", Witness::StateProp { state: s, .. }) => {
            check((|| Some(!sys.is_actual(lat.top(), state(sys, s)?)))())
        }
        ("bottom-not-actual", Witness::StateProp { state: s, .. }) => {
            check((|| Some(sys.is_actual(lat.bottom(), state(sys, s)?)))())
        }
        ("actual-principal-upset", Witness::StateProp { state: s, prop: m }) => check((|| {
            let p = state(sys, s)?;
            let m = prop(sys, m)?;
            Some(sys.support(p) == m && !sys.is_actual(m, p))
        })()),
        ("actual-principal-upset", Witness::Subsets { states, props, .. }) => check((|| {
            let p = state(sys, states.first()?)?;
            let m = prop(sys, props.first()?)?;
            let b = prop(sys, props.get(1)?)?;
            Some(sys.support(p) == m && lat.leq(m, b) && !sys.is_actual(b, p))
        })()),
        ("order-state-determined", Witness::Props { props }) => check((|| {
            let a = prop(sys, props.first()?)?;
            let b = prop(sys, props.get(1)?)?;
            Some(lat.leq(a, b) != sys.extent(a).is_subset(&sys.extent(b)))
        })()),
        ("A", Witness::States { states }) => check((|| {
            if states.len() < 2 {
                return Some(sys.n_states() < 2);
            }
            let p = state(sys, &states[0])?;
            let q = state(sys, &states[1])?;
            Some(p != q && sys.actual(p).is_subset(sys.actual(q)))
        })()),
        ("B", Witness::StateProp { state: s, prop: m }) => check((|| {
            let p = state(sys, s)?;
            let m = prop(sys, m)?;
            Some(sys.support(p) == m && !sys.testable().contains(&m))
        })()),
        ("C", Witness::Props { props }) => check((|| {
            let b = prop(sys, props.first()?)?;
            let mut comps = Vec::new();
            for p in sys.states() {
                comps.push(testable_complement(sys, sys.support(p)).ok()?);
            }
            let meet = lat.meet_all(comps.into_iter().filter(|&c| lat.leq(b, c)));
            Some(meet != b)
        })()),
        ("Oi", Witness::StateProp { state: s, prop: a }) => check((|| {
            let p = state(sys, s)?;
            let a = prop(sys, a)?;
            Some(sys.mu(p, a)?.is_one() != sys.is_actual(a, p))
        })()),
        ("Oii", Witness::Subsets { states, props, .. }) => check((|| {
            let p = state(sys, states.first()?)?;
            let a = prop(sys, props.first()?)?;
            let b = prop(sys, props.get(1)?)?;
            Some(lat.leq(a, b) && sys.mu(p, a)? > sys.mu(p, b)?)
        })()),
        ("Oiii", Witness::Props { props }) => check((|| {
            let mut family = Vec::new();
            for name in props {
                family.push(prop(sys, name)?);
            }
            for (i, &a) in family.iter().enumerate() {
                for &b in &family[i + 1..] {
                    if !prop_orthogonal(sys, a, b) {
                        return Some(false);
                    }
                }
            }
            // no testable property completes the family
            let completes = |b: PropId| {
                sys.states().all(|p| {
                    let mut sum = sys.mu(p, b).expect("testable");
                    for &a in &family {
                        sum = match sum.checked_add(&sys.mu(p, a).expect("testable")) {
                            Ok(s) => s,
                            Err(_) => return false,
                        };
                    }
                    sum.is_one()
                })
            };
            Some(!sys.testable().iter().any(|&b| completes(b)))
        })()),
        ("SP", Witness::States { states }) => check((|| {
            let p = state(sys, states.first()?)?;
            let q = state(sys, states.get(1)?)?;
            Some(
                p != q
                    && line(sys, p, q)
                        .difference(&StateSet::from_iter([p, q]))
                        .is_empty(),
            )
        })()),
        ("2-MSP-exchange", Witness::States { states }) => check((|| {
            let p = state(sys, states.first()?)?;
            let q = state(sys, states.get(1)?)?;
            let r = state(sys, states.get(2)?)?;
            Some(line(sys, p, q).contains(r) && r != p && r != q && !line(sys, r, q).contains(p))
        })()),
        (name, Witness::Msp { s, p, s1, s2 }) if name.ends_with("MSP") => check((|| {
            let set = state_set(sys, s)?;
            let p = state(sys, p)?;
            let part1 = state_set(sys, s1)?;
            let part2 = state_set(sys, s2)?;
            if part1.union(&part2) != set
                || !part1.intersection(&part2).is_empty()
                || part1.is_empty()
                || part2.is_empty()
            {
                return Some(false);
            }
            if !is_minimal_superposition(sys, p, set) {
                return Some(false);
            }
            Some(
                hull(sys, part1.with(p))
                    .intersection(&hull(sys, part2))
                    .is_empty(),
            )
        })()),
        ("P1", Witness::States { states }) => check((|| {
            let p = state(sys, states.first()?)?;
            Some(line(sys, p, p) != StateSet::singleton(p))
        })()),
        ("P2", Witness::States { states }) => check((|| {
            let p = state(sys, states.first()?)?;
            let q = state(sys, states.get(1)?)?;
            Some(!line(sys, p, q).contains(p))
        })()),
        ("P3", Witness::States { states }) => check((|| {
            let p = state(sys, states.first()?)?;
            let q = state(sys, states.get(1)?)?;
            let r = state(sys, states.get(2)?)?;
            let s = state(sys, states.get(3)?)?;
            let t = state(sys, states.get(4)?)?;
            Some(
                line(sys, q, r).contains(p)
                    && line(sys, s, t).contains(r)
                    && p != s
                    && line(sys, p, s).intersection(&line(sys, q, t)).is_empty(),
            )
        })()),
        ("O1", Witness::States { states }) => check((|| {
            let rel = effective_perp(sys);
            let p = state(sys, states.first()?)?;
            let q = state(sys, states.get(1)?)?;
            Some(rel[p.0].contains(q) != rel[q.0].contains(p))
        })()),
        ("O2", Witness::States { states }) => check((|| {
            let rel = effective_perp(sys);
            let a = state(sys, states.first()?)?;
            let b = state(sys, states.get(1)?)?;
            let p = state(sys, states.get(2)?)?;
            let c = state(sys, states.get(3)?)?;
            Some(
                rel[a.0].contains(p)
                    && rel[b.0].contains(p)
                    && line(sys, a, b).contains(c)
                    && !rel[c.0].contains(p),
            )
        })()),
        ("O3", Witness::States { states }) => check((|| {
            let rel = effective_perp(sys);
            let a = state(sys, states.first()?)?;
            let b = state(sys, states.get(1)?)?;
            let c = state(sys, states.get(2)?)?;
            Some(b != c && !line(sys, b, c).iter().any(|x| rel[x.0].contains(a)))
        })()),
        ("O4", Witness::States { states }) => check((|| {
            let rel = effective_perp(sys);
            let a = state(sys, states.first()?)?;
            Some(sys.states().all(|b| rel[a.0].contains(b)))
        })()),
        ("C1", Witness::Subsets { subsets, .. }) => check((|| {
            let s = state_set(sys, subsets.first()?)?;
            let lines = LineTable::build(sys);
            let sp = lines.span(s);
            Some(!s.is_subset(&sp) || lines.span(sp) != sp)
        })()),
        ("C2", Witness::Subsets { subsets, .. }) => check((|| {
            let p1 = state_set(sys, subsets.first()?)?;
            let p2 = state_set(sys, subsets.get(1)?)?;
            let lines = LineTable::build(sys);
            Some(p1.is_subset(&lines.span(p2)) && !lines.span(p1).is_subset(&lines.span(p2)))
        })()),
        (
            "C4",
            Witness::Subsets {
                subsets, states, ..
            },
        ) => check((|| {
            let a = state_set(sys, subsets.first()?)?;
            let x = state(sys, states.first()?)?;
            let y = state(sys, states.get(1)?)?;
            let lines = LineTable::build(sys);
            Some(
                !lines.span(a).contains(x)
                    && lines.span(a.with(y)).contains(x)
                    && !lines.span(a.with(x)).contains(y),
            )
        })()),
        ("C5", w) => check((|| {
            let lines = LineTable::build(sys);
            match w {
                Witness::States { states } => {
                    let p = state(sys, states.first()?)?;
                    Some(lines.span(StateSet::singleton(p)) != StateSet::singleton(p))
                }
                Witness::Subsets { .. } => Some(!lines.span(StateSet::EMPTY).is_empty()),
                _ => None,
            }
        })()),
        ("C6", Witness::Subsets { subsets, .. }) => check((|| {
            let a = state_set(sys, subsets.first()?)?;
            let b = state_set(sys, subsets.get(1)?)?;
            let lines = LineTable::build(sys);
            let mut rhs = StateSet::EMPTY;
            for x in lines.span(a).iter() {
                for y in lines.span(b).iter() {
                    rhs = rhs.union(&lines.line(x, y));
                }
            }
            Some(lines.span(a.union(&b)) != rhs)
        })()),
        (
            "C7",
            Witness::Subsets {
                subsets, states, ..
            },
        ) => check((|| {
            let a = state_set(sys, subsets.first()?)?;
            let b = state(sys, states.first()?)?;
            let lines = LineTable::build(sys);
            let mut rhs = StateSet::EMPTY;
            for x in lines.span(a).iter() {
                rhs = rhs.union(&lines.line(x, b));
            }
            Some(lines.span(a.with(b)) != rhs)
        })()),
        ("pair-hull-is-line", Witness::States { states }) => check((|| {
            let p = state(sys, states.first()?)?;
            let q = state(sys, states.get(1)?)?;
            Some(hull(sys, StateSet::from_iter([p, q])) != line(sys, p, q))
        })()),
        ("triple-span-is-hull" | "span-is-hull", Witness::Subsets { subsets, .. }) => {
            check((|| {
                let s = state_set(sys, subsets.first()?)?;
                Some(LineTable::build(sys).span(s) != hull(sys, s))
            })())
        }
        (
            "hull-is-testable-hull" | "biorthogonal-is-testable-hull" | "hull-is-biorthogonal",
            Witness::Subsets { subsets, .. },
        ) => check((|| {
            let t = state_set(sys, subsets.first()?)?;
            let rel = mu_perp_relation(sys);
            let double_perp = perp_set_in(&rel, perp_set_in(&rel, t));
            Some(match axiom {
                "hull-is-testable-hull" => hull(sys, t) != testable_hull(sys, t),
                "biorthogonal-is-testable-hull" => double_perp != testable_hull(sys, t),
                _ => hull(sys, t) != double_perp,
            })
        })()),
        ("classical-equals-central", Witness::Props { props }) => check((|| {
            let classical = spslab_core::cartan::classical_elements(sys);
            let central = spslab_core::cartan::central_elements(sys);
            let mut any = false;
            for name in props {
                let a = prop(sys, name)?;
                if classical.contains(&a) != central.contains(&a) {
                    any = true;
                }
            }
            Some(any)
        })()),
        _ => Recheck::Unsupported,
    }
}
