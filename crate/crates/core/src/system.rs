//! State property systems: states, a property lattice, and the actuality map.
//!
//! Construction is two-phase. [`SystemBuilder::build`] rejects structural
//! garbage (unknown names, missing actuality sets, non-lattice orders,
//! incomplete probability tables) with a [`BuildError`]; semantic defects —
//! violations of the defining axioms of a state property system — are
//! recorded in the validation report instead, so that deliberately broken
//! instances can still be constructed and inspected. Downstream modules
//! treat a failing defining-axiom report as a precondition failure.
//!
//! Instances are immutable after construction and all operations are pure,
//! so a validated system can be shared freely across threads.

use crate::lattice::{LatticeError, PropId, PropertyLattice};
use crate::rational::Ratio;
use crate::report::{AxiomEntry, AxiomReport, Witness};
use crate::set::{PropSet, StateId, StateSet};
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

pub const MAX_STATES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuildError {
    Lattice(LatticeError),
    NoStates,
    TooManyStates(usize),
    DuplicateState(String),
    UnknownState(String),
    UnknownProperty(String),
    ActualMissing(String),
    ActualDuplicate(String),
    TestableMissingBottom,
    TestableMissingTop,
    TestableDuplicate(String),
    MuWithoutTestable,
    MuDuplicate { state: String, prop: String },
    MuNotTestable { state: String, prop: String },
    MuIncomplete { state: String, prop: String },
    MuOutOfRange { state: String, prop: String },
    PerpNotSymmetric(String, String),
}

impl From<LatticeError> for BuildError {
    fn from(e: LatticeError) -> Self {
        BuildError::Lattice(e)
    }
}

impl core::fmt::Display for BuildError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            BuildError::Lattice(e) => write!(f, "{}", e),
            BuildError::NoStates => write!(f, "system has no states"),
            BuildError::TooManyStates(n) => {
                write!(f, "too many states: {} (limit {})", n, MAX_STATES)
            }
            BuildError::DuplicateState(s) => write!(f, "duplicate state name: {}", s),
            BuildError::UnknownState(s) => write!(f, "unknown state name: {}", s),
            BuildError::UnknownProperty(p) => write!(f, "unknown property name: {}", p),
            BuildError::ActualMissing(s) => write!(f, "no actuality set for state {}", s),
            BuildError::ActualDuplicate(s) => write!(f, "actuality set given twice for {}", s),
            BuildError::TestableMissingBottom => write!(f, "testable set must contain bottom"),
            BuildError::TestableMissingTop => write!(f, "testable set must contain top"),
            BuildError::TestableDuplicate(p) => write!(f, "testable property listed twice: {}", p),
            BuildError::MuWithoutTestable => {
                write!(f, "probability table given without a testable set")
            }
            BuildError::MuDuplicate { state, prop } => {
                write!(f, "duplicate probability entry for ({}, {})", state, prop)
            }
            BuildError::MuNotTestable { state, prop } => {
                write!(
                    f,
                    "probability entry for non-testable property ({}, {})",
                    state, prop
                )
            }
            BuildError::MuIncomplete { state, prop } => {
                write!(f, "missing probability entry for ({}, {})", state, prop)
            }
            BuildError::MuOutOfRange { state, prop } => {
                write!(f, "probability out of range at ({}, {})", state, prop)
            }
            BuildError::PerpNotSymmetric(p, q) => {
                write!(f, "orthogonality table not symmetric at ({}, {})", p, q)
            }
        }
    }
}

/// Name-level description of an instance, mirroring the interchange format.
#[derive(Clone, Debug, Default)]
pub struct SystemBuilder {
    pub states: Vec<String>,
    pub properties: Vec<String>,
    pub leq: Vec<(String, String)>,
    pub bottom: String,
    pub top: String,
    pub actual: Vec<(String, Vec<String>)>,
    pub testable: Option<Vec<String>>,
    pub mu: Vec<(String, String, Ratio)>,
    /// Explicit state orthogonality (used by vector-space models carrying a
    /// form); pairs are symmetrized and may include `(p, p)` for null states.
    pub perp: Option<Vec<(String, String)>>,
}

/// A finite state property system.
#[derive(Clone, Debug)]
pub struct StatePropertySystem {
    state_names: Vec<String>,
    lattice: PropertyLattice,
    actual: Vec<PropSet>,
    /// Designated testable properties, sorted by index. Always contains
    /// bottom and top; defaults to exactly those two.
    testable: Vec<PropId>,
    /// `mu[state][k]` = probability of `testable[k]` in `state`.
    mu: Vec<Vec<Ratio>>,
    /// True when no testable set was supplied and the `{0, I}` default with
    /// its forced two-valued table is in effect.
    degenerate_testable: bool,
    /// Explicit orthogonality relation, overriding the one induced by the
    /// probability table.
    perp_override: Option<Vec<StateSet>>,
    def1: AxiomReport,
    /// `preorder[p]` = states `q` with `p < q`, i.e. `ξ(q) ⊆ ξ(p)`.
    preorder: Vec<StateSet>,
}

impl SystemBuilder {
    pub fn build(self) -> Result<StatePropertySystem, BuildError> {
        if self.states.is_empty() {
            return Err(BuildError::NoStates);
        }
        if self.states.len() > MAX_STATES {
            return Err(BuildError::TooManyStates(self.states.len()));
        }
        for (i, s) in self.states.iter().enumerate() {
            if self.states[..i].contains(s) {
                return Err(BuildError::DuplicateState(s.clone()));
            }
        }
        let prop_index: BTreeMap<&str, PropId> = self
            .properties
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), PropId(i)))
            .collect();
        let resolve_prop = |name: &str| -> Result<PropId, BuildError> {
            prop_index
                .get(name)
                .copied()
                .ok_or_else(|| BuildError::UnknownProperty(name.into()))
        };
        let state_index: BTreeMap<&str, StateId> = self
            .states
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), StateId(i)))
            .collect();
        let resolve_state = |name: &str| -> Result<StateId, BuildError> {
            state_index
                .get(name)
                .copied()
                .ok_or_else(|| BuildError::UnknownState(name.into()))
        };

        let mut leq_pairs = Vec::with_capacity(self.leq.len());
        for (a, b) in &self.leq {
            leq_pairs.push((resolve_prop(a)?, resolve_prop(b)?));
        }
        let bottom = resolve_prop(&self.bottom)?;
        let top = resolve_prop(&self.top)?;
        let lattice = PropertyLattice::new(self.properties.clone(), &leq_pairs, bottom, top)?;

        let n_states = self.states.len();
        let n_props = lattice.len();
        let mut actual: Vec<Option<PropSet>> = vec![None; n_states];
        for (state, props) in &self.actual {
            let s = resolve_state(state)?;
            if actual[s.0].is_some() {
                return Err(BuildError::ActualDuplicate(state.clone()));
            }
            let mut set = PropSet::empty(n_props);
            for p in props {
                set.insert(resolve_prop(p)?.0);
            }
            actual[s.0] = Some(set);
        }
        let actual: Vec<PropSet> = actual
            .into_iter()
            .enumerate()
            .map(|(i, set)| set.ok_or_else(|| BuildError::ActualMissing(self.states[i].clone())))
            .collect::<Result<_, _>>()?;

        let (testable, degenerate) = match &self.testable {
            Some(names) => {
                let mut ids = Vec::with_capacity(names.len());
                for name in names {
                    let id = resolve_prop(name)?;
                    if ids.contains(&id) {
                        return Err(BuildError::TestableDuplicate(name.clone()));
                    }
                    ids.push(id);
                }
                if !ids.contains(&bottom) {
                    return Err(BuildError::TestableMissingBottom);
                }
                if !ids.contains(&top) {
                    return Err(BuildError::TestableMissingTop);
                }
                ids.sort();
                (ids, false)
            }
            None => {
                if !self.mu.is_empty() {
                    return Err(BuildError::MuWithoutTestable);
                }
                let mut ids = vec![bottom, top];
                ids.sort();
                ids.dedup();
                (ids, true)
            }
        };

        let mu = if degenerate {
            // forced two-valued table on {0, I}
            actual
                .iter()
                .map(|xi| {
                    testable
                        .iter()
                        .map(|&a| {
                            if xi.contains(a.0) {
                                Ratio::ONE
                            } else {
                                Ratio::ZERO
                            }
                        })
                        .collect()
                })
                .collect()
        } else {
            let mut table: Vec<Vec<Option<Ratio>>> = vec![vec![None; testable.len()]; n_states];
            for (state, prop, value) in &self.mu {
                let s = resolve_state(state)?;
                let p = resolve_prop(prop)?;
                let k = testable.iter().position(|&t| t == p).ok_or_else(|| {
                    BuildError::MuNotTestable {
                        state: state.clone(),
                        prop: prop.clone(),
                    }
                })?;
                if table[s.0][k].is_some() {
                    return Err(BuildError::MuDuplicate {
                        state: state.clone(),
                        prop: prop.clone(),
                    });
                }
                if !value.in_unit_interval() {
                    return Err(BuildError::MuOutOfRange {
                        state: state.clone(),
                        prop: prop.clone(),
                    });
                }
                table[s.0][k] = Some(*value);
            }
            let mut resolved = Vec::with_capacity(n_states);
            for (s, row) in table.into_iter().enumerate() {
                let mut out = Vec::with_capacity(row.len());
                for (k, v) in row.into_iter().enumerate() {
                    match v {
                        Some(v) => out.push(v),
                        None => {
                            return Err(BuildError::MuIncomplete {
                                state: self.states[s].clone(),
                                prop: lattice.name(testable[k]).into(),
                            })
                        }
                    }
                }
                resolved.push(out);
            }
            resolved
        };

        let perp_override = match &self.perp {
            None => None,
            Some(pairs) => {
                let mut rel = vec![StateSet::EMPTY; n_states];
                for (a, b) in pairs {
                    let pa = resolve_state(a)?;
                    let pb = resolve_state(b)?;
                    rel[pa.0].insert(pb);
                    rel[pb.0].insert(pa);
                }
                Some(rel)
            }
        };

        let mut system = StatePropertySystem {
            state_names: self.states,
            lattice,
            actual,
            testable,
            mu,
            degenerate_testable: degenerate,
            perp_override,
            def1: AxiomReport::new(),
            preorder: Vec::new(),
        };
        system.preorder = system.compute_preorder();
        system.def1 = system.compute_def1();
        Ok(system)
    }
}

impl StatePropertySystem {
    pub fn n_states(&self) -> usize {
        self.state_names.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.state_names
    }

    pub fn state_name(&self, p: StateId) -> &str {
        &self.state_names[p.0]
    }

    pub fn state_index(&self, name: &str) -> Option<StateId> {
        self.state_names.iter().position(|n| n == name).map(StateId)
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        (0..self.n_states()).map(StateId)
    }

    pub fn all_states(&self) -> StateSet {
        StateSet::full(self.n_states())
    }

    pub fn lattice(&self) -> &PropertyLattice {
        &self.lattice
    }

    /// The actuality set `ξ(p)`.
    pub fn actual(&self, p: StateId) -> &PropSet {
        &self.actual[p.0]
    }

    pub fn is_actual(&self, a: PropId, p: StateId) -> bool {
        self.actual[p.0].contains(a.0)
    }

    /// The extent of a property: the set of states in which it is actual.
    pub fn extent(&self, a: PropId) -> StateSet {
        StateSet::from_iter(self.states().filter(|&p| self.is_actual(a, p)))
    }

    /// The support of a state: the meet of its actuality set.
    pub fn support(&self, p: StateId) -> PropId {
        self.lattice.meet_all(self.actual[p.0].iter().map(PropId))
    }

    pub fn supports(&self) -> Vec<PropId> {
        self.states().map(|p| self.support(p)).collect()
    }

    /// Designated testable properties, sorted by lattice index.
    pub fn testable(&self) -> &[PropId] {
        &self.testable
    }

    /// True when the testable set is the `{0, I}` default rather than data.
    pub fn has_degenerate_testable(&self) -> bool {
        self.degenerate_testable
    }

    pub fn testable_pos(&self, a: PropId) -> Option<usize> {
        self.testable.iter().position(|&t| t == a)
    }

    /// `μ_p(a)` for a testable property.
    pub fn mu(&self, p: StateId, a: PropId) -> Option<Ratio> {
        self.testable_pos(a).map(|k| self.mu[p.0][k])
    }

    pub fn mu_row(&self, p: StateId) -> &[Ratio] {
        &self.mu[p.0]
    }

    pub fn perp_override(&self) -> Option<&[StateSet]> {
        self.perp_override.as_deref()
    }

    /// The derived pre-order on states: `p < q` iff `ξ(q) ⊆ ξ(p)`.
    pub fn state_preorder(&self) -> &[StateSet] {
        &self.preorder
    }

    fn compute_preorder(&self) -> Vec<StateSet> {
        self.states()
            .map(|p| {
                StateSet::from_iter(
                    self.states()
                        .filter(|&q| self.actual[q.0].is_subset(&self.actual[p.0])),
                )
            })
            .collect()
    }

    /// The defining-axiom report computed at construction time.
    pub fn validate(&self) -> &AxiomReport {
        &self.def1
    }

    /// True when every defining axiom holds.
    pub fn is_valid(&self) -> bool {
        self.def1.all_hold()
    }

    fn compute_def1(&self) -> AxiomReport {
        let mut report = AxiomReport::new();
        let lat = &self.lattice;

        let top_missing = self.states().find(|&p| !self.is_actual(lat.top(), p));
        report.push(match top_missing {
            None => AxiomEntry::holds("top-actual"),
            Some(p) => AxiomEntry::fails(
                "top-actual",
                Witness::state_prop(self.state_name(p).into(), lat.name(lat.top()).into()),
            ),
        });

        let bottom_hit = self.states().find(|&p| self.is_actual(lat.bottom(), p));
        report.push(match bottom_hit {
            None => AxiomEntry::holds("bottom-not-actual"),
            Some(p) => AxiomEntry::fails(
                "bottom-not-actual",
                Witness::state_prop(self.state_name(p).into(), lat.name(lat.bottom()).into()),
            ),
        });

        // ξ(p) must be the principal up-set of its own meet: the meet must be
        // actual, and everything above it must be actual.
        let mut upset_entry = AxiomEntry::holds("actual-principal-upset");
        'outer: for p in self.states() {
            let m = self.support(p);
            if !self.is_actual(m, p) {
                upset_entry = AxiomEntry::fails(
                    "actual-principal-upset",
                    Witness::state_prop(self.state_name(p).into(), lat.name(m).into()),
                )
                .with_note("meet of the actuality set is not actual");
                break;
            }
            for b in lat.upset(m).iter() {
                if !self.actual[p.0].contains(b) {
                    upset_entry = AxiomEntry::fails(
                        "actual-principal-upset",
                        Witness::Subsets {
                            subsets: vec![],
                            states: vec![self.state_name(p).into()],
                            props: vec![lat.name(m).into(), lat.name(PropId(b)).into()],
                        },
                    )
                    .with_note("actuality set is not upward closed above its meet");
                    break 'outer;
                }
            }
        }
        report.push(upset_entry);

        // order must be determined by the states: a ≤ b iff every state with
        // a actual has b actual
        let mut order_entry = AxiomEntry::holds("order-state-determined");
        'pairs: for a in lat.elements() {
            let ea = self.extent(a);
            for b in lat.elements() {
                let eb = self.extent(b);
                if lat.leq(a, b) != ea.is_subset(&eb) {
                    order_entry = AxiomEntry::fails(
                        "order-state-determined",
                        Witness::props([lat.name(a).into(), lat.name(b).into()]),
                    );
                    break 'pairs;
                }
            }
        }
        report.push(order_entry);

        report
    }

    /// State distinguishability: at least two states, and no actuality set
    /// contained in another.
    pub fn check_axiom_a(&self) -> AxiomEntry {
        if self.n_states() < 2 {
            return AxiomEntry::fails("A", Witness::states(self.state_names.iter().cloned()))
                .with_note("fewer than two distinct states");
        }
        for p in self.states() {
            for q in self.states() {
                if p != q && self.actual[p.0].is_subset(&self.actual[q.0]) {
                    return AxiomEntry::fails(
                        "A",
                        Witness::states([self.state_name(p).into(), self.state_name(q).into()]),
                    );
                }
            }
        }
        AxiomEntry::holds("A")
    }

    pub fn axiom_a_holds(&self) -> bool {
        self.check_axiom_a().verdict.holds()
    }

    /// Under axiom A: the supports are exactly the atoms, and every property
    /// is the join of the supports of the states where it is actual.
    pub fn check_atoms_and_atomisticity(&self) -> AxiomReport {
        let mut report = AxiomReport::new();
        if !self.axiom_a_holds() {
            report.push(AxiomEntry::unmet("supports-are-atoms", "axiom A fails"));
            report.push(AxiomEntry::unmet("atomistic", "axiom A fails"));
            return report;
        }
        let lat = &self.lattice;
        let mut supports: Vec<PropId> = self.supports();
        supports.sort();
        supports.dedup();
        let atoms = lat.atoms();

        let mut entry = AxiomEntry::holds("supports-are-atoms");
        for &s in &supports {
            if !atoms.contains(&s) {
                entry =
                    AxiomEntry::fails("supports-are-atoms", Witness::props([lat.name(s).into()]))
                        .with_note("support is not an atom");
                break;
            }
        }
        if entry.verdict.holds() {
            for &a in &atoms {
                if !supports.contains(&a) {
                    entry = AxiomEntry::fails(
                        "supports-are-atoms",
                        Witness::props([lat.name(a).into()]),
                    )
                    .with_note("atom is not a support");
                    break;
                }
            }
        }
        report.push(entry);

        let mut entry = AxiomEntry::holds("atomistic");
        for b in lat.elements() {
            let join = lat.join_all(
                self.states()
                    .filter(|&s| self.is_actual(b, s))
                    .map(|s| self.support(s)),
            );
            if join != b {
                entry = AxiomEntry::fails("atomistic", Witness::props([lat.name(b).into()]));
                break;
            }
        }
        report.push(entry);
        report
    }

    /// Names of the members of a state set, in index order.
    pub fn set_names(&self, set: StateSet) -> Vec<String> {
        set.iter()
            .map(|p| String::from(self.state_name(p)))
            .collect()
    }

    /// Names of the members of a property set, in index order.
    pub fn prop_set_names(&self, set: &PropSet) -> Vec<String> {
        set.iter()
            .map(|a| String::from(self.lattice.name(PropId(a))))
            .collect()
    }
}
