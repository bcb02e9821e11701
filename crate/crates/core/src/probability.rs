//! Probability tables on the testable properties and the orthostructure
//! they induce.
//!
//! A table `μ` assigns to every (state, testable property) pair an exact
//! rational in `[0, 1]`, subject to three axioms: value 1 exactly on actual
//! properties (`Oi`), monotonicity along the order (`Oii`), and a
//! completion axiom (`Oiii`): every pairwise-orthogonal family extends by
//! one more testable property to a family with total probability one in
//! every state. Orthogonality of two properties means their probabilities
//! never sum above one.
//!
//! From a valid table the module derives the complement on the testable
//! set, certifies it as an orthomodular poset with an order-determining set
//! of states, extends the complement to the whole lattice under the support
//! conditions `B` and `C`, and builds state orthogonality, perp sets and
//! biorthogonal closures.

use crate::closure::{enumerate_family, hull, testable_hull, FamilyKind, SubsetFamily};
use crate::lattice::PropId;
use crate::rational::Ratio;
use crate::report::{AxiomEntry, AxiomReport, Witness};
use crate::set::{subsets_in_witness_order, StateId, StateSet};
use crate::system::StatePropertySystem;
use crate::{BudgetExceeded, Limits};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

/// `a ⊥ b`: the probabilities never sum above one.
pub fn prop_orthogonal(sys: &StatePropertySystem, a: PropId, b: PropId) -> bool {
    sys.states().all(|p| {
        let (va, vb) = (sys.mu(p, a), sys.mu(p, b));
        match (va, vb) {
            (Some(va), Some(vb)) => va
                .checked_add(&vb)
                .map(|s| s <= Ratio::ONE)
                .unwrap_or(false),
            _ => false,
        }
    })
}

/// All pairwise-orthogonal families of distinct testable properties, in
/// deterministic order, up to the budget. Returns the families visited and
/// whether enumeration was exhaustive.
fn orthogonal_families(sys: &StatePropertySystem, limits: &Limits) -> (Vec<Vec<PropId>>, bool) {
    let testable = sys.testable();
    let mut orth = Vec::new();
    for (i, &a) in testable.iter().enumerate() {
        let mut row = Vec::new();
        for &b in &testable[i + 1..] {
            if prop_orthogonal(sys, a, b) {
                row.push(b);
            }
        }
        orth.push(row);
    }
    let mut families: Vec<Vec<PropId>> = alloc::vec![Vec::new()];
    let mut stack: Vec<(Vec<PropId>, usize)> = (0..testable.len())
        .rev()
        .map(|i| (alloc::vec![testable[i]], i))
        .collect();
    let mut exhaustive = true;
    while let Some((family, last)) = stack.pop() {
        if families.len() as u64 >= limits.max_subsets {
            exhaustive = false;
            break;
        }
        families.push(family.clone());
        for (j, &b) in testable.iter().enumerate().skip(last + 1) {
            if family.iter().all(|a| {
                let i = testable.iter().position(|&t| t == *a).unwrap();
                orth[i].contains(&b) || *a == b
            }) && family.iter().all(|&a| a != b)
            {
                let mut next = family.clone();
                next.push(b);
                stack.push((next, j));
            }
        }
    }
    (families, exhaustive)
}

fn prop_witness(sys: &StatePropertySystem, props: &[PropId]) -> Witness {
    Witness::props(props.iter().map(|&a| String::from(sys.lattice().name(a))))
}

/// Checks the three table axioms.
pub fn validate_mu(sys: &StatePropertySystem, limits: &Limits) -> AxiomReport {
    let mut report = AxiomReport::new();
    let lat = sys.lattice();

    let mut entry = AxiomEntry::holds("Oi");
    'oi: for p in sys.states() {
        for &a in sys.testable() {
            let v = sys.mu(p, a).expect("table is total");
            if v.is_one() != sys.is_actual(a, p) {
                entry = AxiomEntry::fails(
                    "Oi",
                    Witness::state_prop(sys.state_name(p).into(), lat.name(a).into()),
                );
                break 'oi;
            }
        }
    }
    report.push(entry);

    let mut entry = AxiomEntry::holds("Oii");
    'oii: for &a in sys.testable() {
        for &b in sys.testable() {
            if !lat.leq(a, b) {
                continue;
            }
            for p in sys.states() {
                if sys.mu(p, a) > sys.mu(p, b) {
                    entry = AxiomEntry::fails(
                        "Oii",
                        Witness::Subsets {
                            subsets: Vec::new(),
                            states: alloc::vec![sys.state_name(p).into()],
                            props: alloc::vec![lat.name(a).into(), lat.name(b).into()],
                        },
                    );
                    break 'oii;
                }
            }
        }
    }
    report.push(entry);

    let (families, exhaustive) = orthogonal_families(sys, limits);
    let mut entry = if exhaustive {
        AxiomEntry::holds("Oiii")
    } else {
        AxiomEntry::partial(
            "Oiii",
            &format!(
                "explored {} orthogonal families before hitting the budget",
                families.len()
            ),
        )
    };
    'oiii: for family in &families {
        // target column for the completing property
        let mut target: Vec<Ratio> = Vec::with_capacity(sys.n_states());
        for p in sys.states() {
            let mut sum = Ratio::ZERO;
            for &a in family {
                match sum.checked_add(&sys.mu(p, a).expect("table is total")) {
                    Ok(s) => sum = s,
                    Err(_) => {
                        entry = AxiomEntry::fails("Oiii", prop_witness(sys, family))
                            .with_note("family total overflows");
                        break 'oiii;
                    }
                }
            }
            match sum.complement() {
                Ok(t) if t >= Ratio::ZERO => target.push(t),
                _ => {
                    entry = AxiomEntry::fails("Oiii", prop_witness(sys, family))
                        .with_note("family total exceeds one in some state");
                    break 'oiii;
                }
            }
        }
        let found = sys.testable().iter().any(|&b| {
            sys.states()
                .all(|p| sys.mu(p, b).expect("table is total") == target[p.0])
        });
        if !found {
            entry = AxiomEntry::fails("Oiii", prop_witness(sys, family))
                .with_note("no testable property completes the family to total one");
            break 'oiii;
        }
    }
    report.push(entry);

    report
}

pub fn mu_valid(sys: &StatePropertySystem, limits: &Limits) -> bool {
    validate_mu(sys, limits).all_hold()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplementError {
    /// No testable property has the mirrored column; an `Oiii` violation.
    Missing(PropId),
    /// Two distinct properties share the mirrored column; the states do not
    /// determine the order.
    Ambiguous(PropId, PropId, PropId),
}

impl core::fmt::Display for ComplementError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ComplementError::Missing(a) => {
                write!(f, "no testable complement for property #{}", a.0)
            }
            ComplementError::Ambiguous(a, b, c) => {
                write!(
                    f,
                    "complement of #{} ambiguous between #{} and #{}",
                    a.0, b.0, c.0
                )
            }
        }
    }
}

/// The unique testable property whose probability column mirrors that of
/// `a`.
pub fn testable_complement(
    sys: &StatePropertySystem,
    a: PropId,
) -> Result<PropId, ComplementError> {
    let mut found: Option<PropId> = None;
    for &b in sys.testable() {
        let mirrors = sys.states().all(|p| {
            let va = sys.mu(p, a).expect("a is testable");
            let vb = sys.mu(p, b).expect("b is testable");
            va.complement().map(|t| t == vb).unwrap_or(false)
        });
        if mirrors {
            match found {
                None => found = Some(b),
                Some(prev) => return Err(ComplementError::Ambiguous(a, prev, b)),
            }
        }
    }
    found.ok_or(ComplementError::Missing(a))
}

/// Greatest lower bound of two properties within the testable set, if any.
pub fn testable_inf(sys: &StatePropertySystem, a: PropId, b: PropId) -> Option<PropId> {
    let lat = sys.lattice();
    let lower: Vec<PropId> = sys
        .testable()
        .iter()
        .copied()
        .filter(|&c| lat.leq(c, a) && lat.leq(c, b))
        .collect();
    lower
        .iter()
        .copied()
        .find(|&m| lower.iter().all(|&c| lat.leq(c, m)))
}

/// Least upper bound of a family within the testable set, if any.
pub fn testable_sup(sys: &StatePropertySystem, items: &[PropId]) -> Option<PropId> {
    let lat = sys.lattice();
    let upper: Vec<PropId> = sys
        .testable()
        .iter()
        .copied()
        .filter(|&c| items.iter().all(|&a| lat.leq(a, c)))
        .collect();
    upper
        .iter()
        .copied()
        .find(|&j| upper.iter().all(|&c| lat.leq(j, c)))
}

/// Certifies the testable set as an orthomodular poset: the complement is a
/// unique involutive orthocomplementation, orthogonal families have joins
/// that agree with the lattice joins, the states determine the order, and
/// every nonzero testable property attains probability one somewhere.
pub fn check_omp(sys: &StatePropertySystem, limits: &Limits) -> AxiomReport {
    let mut report = AxiomReport::new();
    if !mu_valid(sys, limits) {
        for axiom in [
            "complement-involution",
            "orthomodular",
            "orthogonal-joins",
            "order-determining",
            "orthogonality-laws",
            "unit-attained",
        ] {
            report.push(AxiomEntry::unmet(axiom, "probability table axioms fail"));
        }
        return report;
    }
    let lat = sys.lattice();

    let mut entry = AxiomEntry::holds("complement-involution");
    'ci: for &a in sys.testable() {
        let a1 = match testable_complement(sys, a) {
            Ok(c) => c,
            Err(e) => {
                entry = AxiomEntry::fails("complement-involution", prop_witness(sys, &[a]))
                    .with_note(&format!("{}", e));
                break 'ci;
            }
        };
        if testable_complement(sys, a1) != Ok(a) {
            entry = AxiomEntry::fails("complement-involution", prop_witness(sys, &[a, a1]))
                .with_note("complement is not an involution");
            break 'ci;
        }
        // order reversal against every other testable property
        for &b in sys.testable() {
            if lat.leq(a, b) {
                if let Ok(b1) = testable_complement(sys, b) {
                    if !lat.leq(b1, a1) {
                        entry =
                            AxiomEntry::fails("complement-involution", prop_witness(sys, &[a, b]))
                                .with_note("complement does not reverse the order");
                        break 'ci;
                    }
                }
            }
        }
        // a ∧0 a' = 0 and a ∨0 a' = I
        if testable_inf(sys, a, a1) != Some(lat.bottom())
            || testable_sup(sys, &[a, a1]) != Some(lat.top())
        {
            entry = AxiomEntry::fails("complement-involution", prop_witness(sys, &[a, a1]))
                .with_note("complement pair does not meet to bottom and join to top");
            break 'ci;
        }
    }
    report.push(entry);

    let mut entry = AxiomEntry::holds("orthomodular");
    'om: for &a in sys.testable() {
        for &b in sys.testable() {
            if !lat.leq(a, b) {
                continue;
            }
            let a1 = match testable_complement(sys, a) {
                Ok(c) => c,
                Err(_) => continue,
            };
            let rhs = testable_inf(sys, a1, b).and_then(|m| testable_sup(sys, &[a, m]));
            if rhs != Some(b) {
                entry = AxiomEntry::fails("orthomodular", prop_witness(sys, &[a, b]));
                break 'om;
            }
        }
    }
    report.push(entry);

    let (families, exhaustive) = orthogonal_families(sys, limits);
    let mut entry = if exhaustive {
        AxiomEntry::holds("orthogonal-joins")
    } else {
        AxiomEntry::partial("orthogonal-joins", "family space exceeds budget")
    };
    for family in &families {
        if family.is_empty() {
            continue;
        }
        let sup0 = testable_sup(sys, family);
        let sup_l = lat.join_all(family.iter().copied());
        if sup0 != Some(sup_l) {
            entry = AxiomEntry::fails("orthogonal-joins", prop_witness(sys, family)).with_note(
                "join within the testable set is missing or differs from the lattice join",
            );
            break;
        }
    }
    report.push(entry);

    let mut entry = AxiomEntry::holds("order-determining");
    'od: for &a in sys.testable() {
        for &b in sys.testable() {
            let pointwise = sys.states().all(|p| sys.mu(p, a) <= sys.mu(p, b));
            if pointwise && !lat.leq(a, b) {
                entry = AxiomEntry::fails("order-determining", prop_witness(sys, &[a, b]));
                break 'od;
            }
        }
    }
    report.push(entry);

    // orthogonality interplay with the complement: a property is
    // orthogonal to its complement, and to the complement of anything
    // above it
    let mut entry = AxiomEntry::holds("orthogonality-laws");
    'ol: for &a in sys.testable() {
        let a1 = match testable_complement(sys, a) {
            Ok(c) => c,
            Err(_) => continue,
        };
        if !prop_orthogonal(sys, a, a1) {
            entry = AxiomEntry::fails("orthogonality-laws", prop_witness(sys, &[a]))
                .with_note("property not orthogonal to its complement");
            break 'ol;
        }
        for &b in sys.testable() {
            if !prop_orthogonal(sys, a, b) && prop_orthogonal(sys, b, a) {
                entry = AxiomEntry::fails("orthogonality-laws", prop_witness(sys, &[a, b]))
                    .with_note("orthogonality not symmetric");
                break 'ol;
            }
            if lat.leq(a, b) {
                if let Ok(b1) = testable_complement(sys, b) {
                    if !prop_orthogonal(sys, a, b1) {
                        entry = AxiomEntry::fails("orthogonality-laws", prop_witness(sys, &[a, b]))
                            .with_note("property not orthogonal to the complement above it");
                        break 'ol;
                    }
                }
            }
        }
    }
    report.push(entry);

    let mut entry = AxiomEntry::holds("unit-attained");
    for &a in sys.testable() {
        if a == lat.bottom() {
            continue;
        }
        if !sys
            .states()
            .any(|p| sys.mu(p, a).expect("testable").is_one())
        {
            entry = AxiomEntry::fails("unit-attained", prop_witness(sys, &[a]));
            break;
        }
    }
    report.push(entry);

    report
}

/// Every support belongs to the testable set.
pub fn check_axiom_b(sys: &StatePropertySystem, limits: &Limits) -> AxiomEntry {
    if !mu_valid(sys, limits) {
        return AxiomEntry::unmet("B", "probability table axioms fail");
    }
    for p in sys.states() {
        let support = sys.support(p);
        if !sys.testable().contains(&support) {
            return AxiomEntry::fails(
                "B",
                Witness::state_prop(sys.state_name(p).into(), sys.lattice().name(support).into()),
            );
        }
    }
    AxiomEntry::holds("B")
}

/// Every property is the meet of the complemented supports above it.
pub fn check_axiom_c(sys: &StatePropertySystem, limits: &Limits) -> AxiomEntry {
    if !mu_valid(sys, limits) {
        return AxiomEntry::unmet("C", "probability table axioms fail");
    }
    if !check_axiom_b(sys, limits).verdict.holds() {
        return AxiomEntry::unmet("C", "axiom B fails, supports have no testable complement");
    }
    let lat = sys.lattice();
    let mut comp_supports = Vec::with_capacity(sys.n_states());
    for p in sys.states() {
        match testable_complement(sys, sys.support(p)) {
            Ok(c) => comp_supports.push(c),
            Err(e) => return AxiomEntry::unmet("C", &format!("{}", e)),
        }
    }
    for b in lat.elements() {
        let meet = lat.meet_all(comp_supports.iter().copied().filter(|&c| lat.leq(b, c)));
        if meet != b {
            return AxiomEntry::fails("C", prop_witness(sys, &[b]));
        }
    }
    AxiomEntry::holds("C")
}

/// Extends the complement from the testable set to the whole lattice: the
/// complement of `b` is the join of the supports whose complements lie
/// above `b`. Certifies order reversal, involution and the two complement
/// laws; requires A, B and C.
pub fn extend_orthocomplement(
    sys: &StatePropertySystem,
    limits: &Limits,
) -> (Option<Vec<PropId>>, AxiomReport) {
    let mut report = AxiomReport::new();
    let gates = [
        ("A", sys.check_axiom_a().verdict.holds()),
        ("B", check_axiom_b(sys, limits).verdict.holds()),
        ("C", check_axiom_c(sys, limits).verdict.holds()),
    ];
    if let Some((name, _)) = gates.iter().find(|(_, ok)| !ok) {
        for axiom in [
            "order-reversing",
            "involutive",
            "complement-meet",
            "complement-join",
        ] {
            report.push(AxiomEntry::unmet(axiom, &format!("axiom {} fails", name)));
        }
        return (None, report);
    }
    let lat = sys.lattice();
    let comp_supports: Vec<(PropId, PropId)> = sys
        .states()
        .map(|p| {
            let s = sys.support(p);
            (
                s,
                testable_complement(sys, s).expect("axiom B grants complements"),
            )
        })
        .collect();
    let complement = |b: PropId| -> PropId {
        lat.join_all(
            comp_supports
                .iter()
                .filter(|&&(_, c)| lat.leq(b, c))
                .map(|&(s, _)| s),
        )
    };
    let map: Vec<PropId> = lat.elements().map(complement).collect();

    let mut entry = AxiomEntry::holds("order-reversing");
    'rev: for b in lat.elements() {
        for c in lat.elements() {
            if lat.leq(b, c) && !lat.leq(map[c.0], map[b.0]) {
                entry = AxiomEntry::fails("order-reversing", prop_witness(sys, &[b, c]));
                break 'rev;
            }
        }
    }
    report.push(entry);

    let mut entry = AxiomEntry::holds("involutive");
    for b in lat.elements() {
        if map[map[b.0].0] != b {
            entry = AxiomEntry::fails("involutive", prop_witness(sys, &[b]));
            break;
        }
    }
    report.push(entry);

    let mut entry = AxiomEntry::holds("complement-meet");
    for b in lat.elements() {
        if lat.meet(b, map[b.0]) != lat.bottom() {
            entry = AxiomEntry::fails("complement-meet", prop_witness(sys, &[b]));
            break;
        }
    }
    report.push(entry);

    let mut entry = AxiomEntry::holds("complement-join");
    for b in lat.elements() {
        if lat.join(b, map[b.0]) != lat.top() {
            entry = AxiomEntry::fails("complement-join", prop_witness(sys, &[b]));
            break;
        }
    }
    report.push(entry);

    // the extension agrees with the testable complement where both live
    let mut entry = AxiomEntry::holds("agrees-with-testable-complement");
    for &b in sys.testable() {
        if testable_complement(sys, b) != Ok(map[b.0]) {
            entry = AxiomEntry::fails("agrees-with-testable-complement", prop_witness(sys, &[b]));
            break;
        }
    }
    report.push(entry);

    // the adjunction driving the construction: the complement sits below a
    // complemented support exactly when the support sits below the element
    let mut entry = AxiomEntry::holds("support-adjunction");
    'adj: for b in lat.elements() {
        for &(support, comp) in &comp_supports {
            if lat.leq(map[b.0], comp) != lat.leq(support, b) {
                entry = AxiomEntry::fails("support-adjunction", prop_witness(sys, &[b, support]));
                break 'adj;
            }
        }
    }
    report.push(entry);

    (Some(map), report)
}

/// State orthogonality from the table: some testable property is certain in
/// `p` and impossible in `q`.
pub fn state_orthogonal(sys: &StatePropertySystem, p: StateId, q: StateId) -> bool {
    sys.testable().iter().any(|&a| {
        sys.mu(p, a).is_some_and(|v| v.is_one()) && sys.mu(q, a).is_some_and(|v| v.is_zero())
    })
}

/// The table-induced orthogonality as adjacency sets.
pub fn mu_perp_relation(sys: &StatePropertySystem) -> Vec<StateSet> {
    sys.states()
        .map(|p| StateSet::from_iter(sys.states().filter(|&q| state_orthogonal(sys, p, q))))
        .collect()
}

/// The orthogonality actually in force: an explicit relation (attached by
/// vector-space models with a form) wins over the table-induced one.
pub fn effective_perp(sys: &StatePropertySystem) -> Vec<StateSet> {
    match sys.perp_override() {
        Some(rel) => rel.to_vec(),
        None => mu_perp_relation(sys),
    }
}

pub fn perp_set_in(rel: &[StateSet], t: StateSet) -> StateSet {
    StateSet::from_iter(
        (0..rel.len())
            .map(StateId)
            .filter(|&p| t.iter().all(|s| rel[p.0].contains(s))),
    )
}

/// `T'` under the table-induced orthogonality.
pub fn perp_set(sys: &StatePropertySystem, t: StateSet) -> StateSet {
    perp_set_in(&mu_perp_relation(sys), t)
}

/// The three biorthogonal-closure identities: under A and B the double perp
/// agrees with the testable hull, and with C the plain hull joins them.
pub fn check_biorthogonal(sys: &StatePropertySystem, limits: &Limits) -> AxiomReport {
    let mut report = AxiomReport::new();
    let a = sys.axiom_a_holds() && mu_valid(sys, limits);
    let b = a && check_axiom_b(sys, limits).verdict.holds();
    let c = b && check_axiom_c(sys, limits).verdict.holds();
    let n = sys.n_states();
    if !limits.allows_power_set(n) {
        report.push(AxiomEntry::partial(
            "biorthogonal",
            "subset space exceeds budget",
        ));
        return report;
    }
    let rel = mu_perp_relation(sys);

    let mut hull_eq_testable = AxiomEntry::holds("hull-is-testable-hull");
    let mut biorth_eq_testable = AxiomEntry::holds("biorthogonal-is-testable-hull");
    let mut hull_eq_biorth = AxiomEntry::holds("hull-is-biorthogonal");
    for t in subsets_in_witness_order(n) {
        let h = hull(sys, t);
        let h0 = testable_hull(sys, t);
        let t2 = perp_set_in(&rel, perp_set_in(&rel, t));
        let w = || Witness::Subsets {
            subsets: alloc::vec![sys.set_names(t)],
            states: Vec::new(),
            props: Vec::new(),
        };
        if c && h != h0 && hull_eq_testable.verdict.holds() {
            hull_eq_testable = AxiomEntry::fails("hull-is-testable-hull", w());
        }
        if b && t2 != h0 && biorth_eq_testable.verdict.holds() {
            biorth_eq_testable = AxiomEntry::fails("biorthogonal-is-testable-hull", w());
        }
        if c && h != t2 && hull_eq_biorth.verdict.holds() {
            hull_eq_biorth = AxiomEntry::fails("hull-is-biorthogonal", w());
        }
    }
    if !c {
        hull_eq_testable = AxiomEntry::unmet("hull-is-testable-hull", "needs axioms A, B and C");
        hull_eq_biorth = AxiomEntry::unmet("hull-is-biorthogonal", "needs axioms A, B and C");
    }
    if !b {
        biorth_eq_testable =
            AxiomEntry::unmet("biorthogonal-is-testable-hull", "needs axioms A and B");
    }
    report.push(hull_eq_testable);
    report.push(biorth_eq_testable);
    report.push(hull_eq_biorth);
    report
}

/// Enumerates the family of testable-hull-closed sets and certifies the
/// perp map as an orthocomplementation on it (and on the hull-closed family
/// when axiom C holds too).
pub fn build_testable_family(
    sys: &StatePropertySystem,
    limits: &Limits,
) -> Result<(SubsetFamily, AxiomReport), BudgetExceeded> {
    let family = enumerate_family(sys, FamilyKind::TestableClosed, limits)?;
    let mut report = AxiomReport::new();
    let a = sys.axiom_a_holds() && mu_valid(sys, limits);
    let b = a && check_axiom_b(sys, limits).verdict.holds();
    if !b {
        for axiom in [
            "anti-monotone",
            "involutive",
            "disjoint",
            "join-complement",
            "complement-closed",
        ] {
            report.push(AxiomEntry::unmet(axiom, "needs axioms A and B"));
        }
        return Ok((family, report));
    }
    let rel = mu_perp_relation(sys);
    report.merge(orthocomplement_certificate(sys, &family, &rel, ""));
    if check_axiom_c(sys, limits).verdict.holds() {
        let closed = enumerate_family(sys, FamilyKind::Closed, limits)?;
        report.merge(orthocomplement_certificate(sys, &closed, &rel, "closed-"));
    }
    Ok((family, report))
}

fn orthocomplement_certificate(
    sys: &StatePropertySystem,
    family: &SubsetFamily,
    rel: &[StateSet],
    prefix: &str,
) -> AxiomReport {
    let mut report = AxiomReport::new();
    let name = |base: &str| format!("{}{}", prefix, base);
    let w = |sets: &[StateSet]| Witness::Subsets {
        subsets: sets.iter().map(|&s| sys.set_names(s)).collect(),
        states: Vec::new(),
        props: Vec::new(),
    };

    let mut closed = AxiomEntry::holds(&name("complement-closed"));
    let mut anti = AxiomEntry::holds(&name("anti-monotone"));
    let mut invol = AxiomEntry::holds(&name("involutive"));
    let mut disj = AxiomEntry::holds(&name("disjoint"));
    let mut join = AxiomEntry::holds(&name("join-complement"));
    for &s in &family.members {
        let s1 = perp_set_in(rel, s);
        if !family.contains(s1) && closed.verdict.holds() {
            closed = AxiomEntry::fails(&name("complement-closed"), w(&[s]));
        }
        if perp_set_in(rel, s1) != s && invol.verdict.holds() {
            invol = AxiomEntry::fails(&name("involutive"), w(&[s]));
        }
        if !s.intersection(&s1).is_empty() && disj.verdict.holds() {
            disj = AxiomEntry::fails(&name("disjoint"), w(&[s]));
        }
        if family.closure_of(s.union(&s1)) != family.top() && join.verdict.holds() {
            join = AxiomEntry::fails(&name("join-complement"), w(&[s]));
        }
        for &t in &family.members {
            if s.is_subset(&t) && !perp_set_in(rel, t).is_subset(&s1) && anti.verdict.holds() {
                anti = AxiomEntry::fails(&name("anti-monotone"), w(&[s, t]));
            }
        }
    }
    for entry in [closed, anti, invol, disj, join] {
        report.push(entry);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::fixture;
    use crate::report::Verdict;
    use crate::system::SystemBuilder;
    use alloc::vec;

    fn cbit_with_mu(
        doctor: impl Fn(&mut Vec<(alloc::string::String, alloc::string::String, Ratio)>),
    ) -> crate::StatePropertySystem {
        let props = ["0", "a", "a'", "I"];
        let mut mu = Vec::new();
        for (state, ones) in [("p", ["a", "I"]), ("q", ["a'", "I"])] {
            for prop in props {
                let v = if ones.contains(&prop) {
                    Ratio::ONE
                } else {
                    Ratio::ZERO
                };
                mu.push((state.into(), prop.into(), v));
            }
        }
        doctor(&mut mu);
        SystemBuilder {
            states: vec!["p".into(), "q".into()],
            properties: props.iter().map(|p| p.to_string()).collect(),
            leq: vec![
                ("0".into(), "a".into()),
                ("0".into(), "a'".into()),
                ("a".into(), "I".into()),
                ("a'".into(), "I".into()),
            ],
            bottom: "0".into(),
            top: "I".into(),
            actual: vec![
                ("p".into(), vec!["a".into(), "I".into()]),
                ("q".into(), vec!["a'".into(), "I".into()]),
            ],
            testable: Some(props.iter().map(|p| p.to_string()).collect()),
            mu,
            perp: None,
        }
        .build()
        .unwrap()
    }

    use alloc::string::ToString;

    #[test]
    fn certainty_off_the_actuality_set_fails_with_the_pair() {
        let sys = cbit_with_mu(|mu| {
            for entry in mu.iter_mut() {
                if entry.0 == "q" && entry.1 == "a" {
                    entry.2 = Ratio::ONE;
                }
            }
        });
        let report = validate_mu(&sys, &Limits::default());
        let entry = report.entry("Oi").unwrap();
        assert_eq!(entry.verdict, Verdict::Fails);
        match entry.witness.as_ref().unwrap() {
            crate::Witness::StateProp { state, prop } => {
                assert_eq!(state, "q");
                assert_eq!(prop, "a");
            }
            other => panic!("unexpected witness {:?}", other),
        }
    }

    #[test]
    fn broken_monotonicity_fails_oii() {
        // value above the top's on a smaller property
        let sys = cbit_with_mu(|mu| {
            for entry in mu.iter_mut() {
                if entry.0 == "p" && entry.1 == "I" {
                    entry.2 = Ratio::new(1, 2).unwrap();
                }
            }
        });
        // dropping the top below one also breaks Oi; check both entries
        let report = validate_mu(&sys, &Limits::default());
        assert!(!report.holds("Oi"));
        assert!(!report.holds("Oii"));
    }

    #[test]
    fn missing_completion_fails_oiii() {
        // a half value with no mirrored column anywhere
        let sys = cbit_with_mu(|mu| {
            for entry in mu.iter_mut() {
                if entry.0 == "p" && entry.1 == "a'" {
                    entry.2 = Ratio::new(1, 2).unwrap();
                }
            }
        });
        let report = validate_mu(&sys, &Limits::default());
        assert!(report.holds("Oi"));
        assert!(report.holds("Oii"));
        let entry = report.entry("Oiii").unwrap();
        assert_eq!(entry.verdict, Verdict::Fails);
        // omp checks are then precondition-unmet, not failed
        let omp = check_omp(&sys, &Limits::default());
        assert!(omp
            .entries
            .iter()
            .all(|e| e.verdict == Verdict::PreconditionUnmet));
    }

    #[test]
    fn mo2_complements_pair_the_atoms() {
        let sys = fixture("MO2").unwrap();
        let lat = sys.lattice();
        let a = lat.index_of("a").unwrap();
        let b = lat.index_of("b").unwrap();
        assert_eq!(
            testable_complement(&sys, a),
            Ok(lat.index_of("a'").unwrap())
        );
        assert_eq!(
            testable_complement(&sys, b),
            Ok(lat.index_of("b'").unwrap())
        );
        // involution on every testable property
        for &x in sys.testable() {
            let x1 = testable_complement(&sys, x).unwrap();
            assert_eq!(testable_complement(&sys, x1), Ok(x));
        }
        // infimum within the testable set of two atoms is the bottom
        assert_eq!(testable_inf(&sys, a, b), Some(lat.bottom()));
        assert_eq!(
            testable_sup(&sys, &[a, lat.index_of("a'").unwrap()]),
            Some(lat.top())
        );
    }

    #[test]
    fn degenerate_testable_sets_have_empty_orthogonality() {
        let sys = fixture("FANO").unwrap();
        assert!(validate_mu(&sys, &Limits::default()).all_hold());
        assert!(mu_perp_relation(&sys).iter().all(|r| r.is_empty()));
        // axiom B fails: ray supports are not among {0, I}
        assert_eq!(
            check_axiom_b(&sys, &Limits::default()).verdict,
            Verdict::Fails
        );
    }
}
