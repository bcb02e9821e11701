//! The extent map from properties to state sets, sector decomposition, and
//! classical/central elements.
//!
//! The extent of a property is the set of states in which it is actual; on a
//! valid system the map is an order embedding of the lattice into the
//! powerset of the states, sends meets to intersections, and lands in the
//! hull-closed sets. Two states are entangled when some third state is
//! superposed on them; the blocks of that relation are the sectors —
//! maximal span-closed regions with the superposition principle inside and
//! only trivial lines across the boundary. Classical properties (those with
//! an exactly-complementary partner) single out unions of sectors and
//! coincide with the central lattice elements under the support axioms.

use crate::closure::{hull, LineTable};
use crate::lattice::PropId;
use crate::probability::{
    check_axiom_b, check_axiom_c, mu_perp_relation, mu_valid, perp_set_in, testable_complement,
    testable_inf,
};
use crate::report::{AxiomEntry, AxiomReport, Witness};
use crate::set::{StateId, StateSet};
use crate::superposition::{check_msp, check_sp, MspLevel};
use crate::system::StatePropertySystem;
use crate::Limits;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

fn prop_witness(sys: &StatePropertySystem, props: &[PropId]) -> Witness {
    Witness::props(props.iter().map(|&a| String::from(sys.lattice().name(a))))
}

/// Certifies the extent map: bounds, order embedding, meets to
/// intersections, hull-closed images; under axiom A the atoms map to
/// singletons, and with a valid table and axiom B the extent of a testable
/// complement is the perp of the extent.
pub fn check_extent_map(sys: &StatePropertySystem, limits: &Limits) -> AxiomReport {
    let mut report = AxiomReport::new();
    let lat = sys.lattice();

    report.push(if sys.extent(lat.top()) == sys.all_states() {
        AxiomEntry::holds("extent-top")
    } else {
        AxiomEntry::fails("extent-top", prop_witness(sys, &[lat.top()]))
    });
    report.push(if sys.extent(lat.bottom()).is_empty() {
        AxiomEntry::holds("extent-bottom")
    } else {
        AxiomEntry::fails("extent-bottom", prop_witness(sys, &[lat.bottom()]))
    });

    let mut entry = AxiomEntry::holds("extent-order-embedding");
    'ord: for a in lat.elements() {
        for b in lat.elements() {
            if lat.leq(a, b) != sys.extent(a).is_subset(&sys.extent(b)) {
                entry = AxiomEntry::fails("extent-order-embedding", prop_witness(sys, &[a, b]));
                break 'ord;
            }
        }
    }
    report.push(entry);

    let mut entry = AxiomEntry::holds("extent-meet");
    'meet: for a in lat.elements() {
        for b in lat.elements() {
            if sys.extent(lat.meet(a, b)) != sys.extent(a).intersection(&sys.extent(b)) {
                entry = AxiomEntry::fails("extent-meet", prop_witness(sys, &[a, b]));
                break 'meet;
            }
        }
    }
    report.push(entry);

    let mut entry = AxiomEntry::holds("extent-hull-closed");
    for a in lat.elements() {
        let ext = sys.extent(a);
        if hull(sys, ext) != ext {
            entry = AxiomEntry::fails("extent-hull-closed", prop_witness(sys, &[a]));
            break;
        }
    }
    report.push(entry);

    if sys.axiom_a_holds() {
        let mut entry = AxiomEntry::holds("extent-atoms-are-points");
        for a in lat.atoms() {
            if sys.extent(a).len() != 1 {
                entry = AxiomEntry::fails("extent-atoms-are-points", prop_witness(sys, &[a]));
                break;
            }
        }
        report.push(entry);
    } else {
        report.push(AxiomEntry::unmet(
            "extent-atoms-are-points",
            "axiom A fails",
        ));
    }

    let ab =
        sys.axiom_a_holds() && mu_valid(sys, limits) && check_axiom_b(sys, limits).verdict.holds();
    if ab {
        let rel = mu_perp_relation(sys);
        let mut comp_entry = AxiomEntry::holds("extent-complement");
        let mut inf_entry = AxiomEntry::holds("extent-testable-meet");
        for &a in sys.testable() {
            if let Ok(a1) = testable_complement(sys, a) {
                if sys.extent(a1) != perp_set_in(&rel, sys.extent(a)) && comp_entry.verdict.holds()
                {
                    comp_entry = AxiomEntry::fails("extent-complement", prop_witness(sys, &[a]));
                }
            }
            for &b in sys.testable() {
                if let Some(m) = testable_inf(sys, a, b) {
                    if sys.extent(m) != sys.extent(a).intersection(&sys.extent(b))
                        && inf_entry.verdict.holds()
                    {
                        inf_entry =
                            AxiomEntry::fails("extent-testable-meet", prop_witness(sys, &[a, b]));
                    }
                }
            }
        }
        report.push(comp_entry);
        report.push(inf_entry);
    } else {
        report.push(AxiomEntry::unmet(
            "extent-complement",
            "needs axioms A and B",
        ));
        report.push(AxiomEntry::unmet(
            "extent-testable-meet",
            "needs axioms A and B",
        ));
    }

    report
}

/// Partition of the states into sectors, with the superposition principle
/// verdict of each block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectorDecomposition {
    /// Disjoint blocks covering the state set, sorted by least member.
    pub blocks: Vec<StateSet>,
    pub per_block_sp: Vec<bool>,
}

impl SectorDecomposition {
    pub fn block_of(&self, p: StateId) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(p))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreconditionUnmet {
    pub reason: String,
}

impl core::fmt::Display for PreconditionUnmet {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "precondition unmet: {}", self.reason)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller index wins, keeping block order deterministic
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Entanglement edge: distinct states with a third state on their line.
fn entangled(lines: &LineTable, p: StateId, q: StateId) -> bool {
    p != q
        && !lines
            .line(p, q)
            .difference(&StateSet::from_iter([p, q]))
            .is_empty()
}

/// Computes the sector decomposition under axiom A and 3-MSP, together with
/// a report certifying each block (span-closed, superposition principle
/// inside, trivial lines across) and that the entanglement relation is
/// already transitive.
pub fn sectors(
    sys: &StatePropertySystem,
    limits: &Limits,
) -> Result<(SectorDecomposition, AxiomReport), PreconditionUnmet> {
    if !sys.axiom_a_holds() {
        return Err(PreconditionUnmet {
            reason: String::from("axiom A fails"),
        });
    }
    if !check_msp(sys, MspLevel::N(3), limits).holds() {
        return Err(PreconditionUnmet {
            reason: String::from("3-MSP does not hold"),
        });
    }
    let n = sys.n_states();
    let lines = LineTable::build(sys);
    let mut uf = UnionFind::new(n);
    for p in 0..n {
        for q in p + 1..n {
            if entangled(&lines, StateId(p), StateId(q)) {
                uf.union(p, q);
            }
        }
    }
    let mut blocks: Vec<StateSet> = Vec::new();
    for p in 0..n {
        let root = uf.find(p);
        if root == p {
            blocks.push(StateSet::from_iter(
                (0..n).map(StateId).filter(|&q| uf.find(q.0) == root),
            ));
        }
    }
    let per_block_sp: Vec<bool> = blocks
        .iter()
        .map(|&b| check_sp(sys, b).verdict.holds())
        .collect();

    let mut report = AxiomReport::new();
    // the entanglement relation is an equivalence already: within a block,
    // every distinct pair must be directly entangled
    let mut entry = AxiomEntry::holds("entanglement-transitive");
    'trans: for &b in &blocks {
        for p in b.iter() {
            for q in b.iter() {
                if p != q && !entangled(&lines, p, q) {
                    entry = AxiomEntry::fails(
                        "entanglement-transitive",
                        Witness::states([sys.state_name(p).into(), sys.state_name(q).into()]),
                    );
                    break 'trans;
                }
            }
        }
    }
    report.push(entry);

    let mut covered = StateSet::EMPTY;
    let mut disjoint = true;
    for &b in &blocks {
        if !covered.intersection(&b).is_empty() {
            disjoint = false;
        }
        covered = covered.union(&b);
    }
    report.push(if disjoint && covered == sys.all_states() {
        AxiomEntry::holds("partition")
    } else {
        AxiomEntry::fails(
            "partition",
            Witness::text("blocks do not partition the states"),
        )
    });

    let decomp = SectorDecomposition {
        blocks,
        per_block_sp,
    };
    report.merge(certify_sector_axioms(sys, &lines, &decomp));
    Ok((decomp, report))
}

fn certify_sector_axioms(
    sys: &StatePropertySystem,
    lines: &LineTable,
    decomp: &SectorDecomposition,
) -> AxiomReport {
    let mut report = AxiomReport::new();
    let block_w = |b: StateSet| Witness::Subsets {
        subsets: vec![sys.set_names(b)],
        states: Vec::new(),
        props: Vec::new(),
    };

    let mut closed = AxiomEntry::holds("sector-span-closed");
    let mut inside = AxiomEntry::holds("sector-sp-inside");
    let mut across = AxiomEntry::holds("sector-trivial-across");
    for &b in &decomp.blocks {
        if !lines.is_span_closed(b) && closed.verdict.holds() {
            closed = AxiomEntry::fails("sector-span-closed", block_w(b));
        }
        if !check_sp(sys, b).verdict.holds() && inside.verdict.holds() {
            inside = AxiomEntry::fails("sector-sp-inside", block_w(b));
        }
        for p in b.iter() {
            for q in sys.all_states().difference(&b).iter() {
                if lines.line(p, q) != StateSet::from_iter([p, q]) && across.verdict.holds() {
                    across = AxiomEntry::fails(
                        "sector-trivial-across",
                        Witness::states([sys.state_name(p).into(), sys.state_name(q).into()]),
                    );
                }
            }
        }
    }
    report.push(closed);
    report.push(inside);
    report.push(across);
    report
}

/// Sectors are exactly the span-clopen blocks: each sector's complement is
/// span-closed, and every nonempty span-clopen set with the superposition
/// principle inside is a sector.
pub fn check_sector_clopen(
    sys: &StatePropertySystem,
    limits: &Limits,
) -> Result<AxiomReport, PreconditionUnmet> {
    let (decomp, _) = sectors(sys, limits)?;
    let lines = LineTable::build(sys);
    let n = sys.n_states();
    let mut report = AxiomReport::new();

    let mut entry = AxiomEntry::holds("sectors-clopen");
    for &b in &decomp.blocks {
        if !lines.is_span_closed(b) || !lines.is_span_closed(b.complement(n)) {
            entry = AxiomEntry::fails(
                "sectors-clopen",
                Witness::Subsets {
                    subsets: vec![sys.set_names(b)],
                    states: Vec::new(),
                    props: Vec::new(),
                },
            );
            break;
        }
    }
    report.push(entry);

    let mut entry = AxiomEntry::holds("clopen-sp-blocks-are-sectors");
    if Limits::subset_space(n).is_some_and(|t| t <= limits.max_subsets) {
        for s in crate::set::subsets_in_witness_order(n) {
            if s.is_empty() {
                continue;
            }
            if lines.is_span_closed(s)
                && lines.is_span_closed(s.complement(n))
                && check_sp(sys, s).verdict.holds()
                && !decomp.blocks.contains(&s)
            {
                entry = AxiomEntry::fails(
                    "clopen-sp-blocks-are-sectors",
                    Witness::Subsets {
                        subsets: vec![sys.set_names(s)],
                        states: Vec::new(),
                        props: Vec::new(),
                    },
                );
                break;
            }
        }
    } else {
        entry = AxiomEntry::partial(
            "clopen-sp-blocks-are-sectors",
            "subset space exceeds budget",
        );
    }
    report.push(entry);

    Ok(report)
}

/// Properties with an exactly-complementary partner: in every state exactly
/// one of the pair is actual. Bottom and top always qualify.
pub fn classical_elements(sys: &StatePropertySystem) -> Vec<PropId> {
    let lat = sys.lattice();
    let n = sys.n_states();
    lat.elements()
        .filter(|&a| {
            let ka = sys.extent(a);
            lat.elements().any(|b| sys.extent(b) == ka.complement(n))
        })
        .collect()
}

/// For every classical property, its extent and the complement of its
/// extent are both hull-closed (clopen in the closed-subspace family).
pub fn check_classical_clopen(sys: &StatePropertySystem) -> AxiomReport {
    let mut report = AxiomReport::new();
    let n = sys.n_states();
    let mut entry = AxiomEntry::holds("classical-extent-clopen");
    for a in classical_elements(sys) {
        let ka = sys.extent(a);
        let co = ka.complement(n);
        if hull(sys, ka) != ka || hull(sys, co) != co {
            entry = AxiomEntry::fails("classical-extent-clopen", prop_witness(sys, &[a]));
            break;
        }
    }
    report.push(entry);
    report
}

/// Lattice elements inducing a direct decomposition: `z` is central when
/// some `z'` satisfies both halves of the decomposition identity for every
/// element.
pub fn central_elements(sys: &StatePropertySystem) -> Vec<PropId> {
    let lat = sys.lattice();
    lat.elements()
        .filter(|&z| {
            lat.elements().any(|z1| {
                lat.elements().all(|a| {
                    lat.join(lat.meet(a, z), lat.meet(a, z1)) == a
                        && lat.meet(lat.join(a, z), lat.join(a, z1)) == a
                })
            })
        })
        .collect()
}

/// Under axioms A, B and C, the classical and central elements coincide.
pub fn check_classical_central(sys: &StatePropertySystem, limits: &Limits) -> AxiomReport {
    let mut report = AxiomReport::new();
    let qualifies = sys.axiom_a_holds()
        && mu_valid(sys, limits)
        && check_axiom_b(sys, limits).verdict.holds()
        && check_axiom_c(sys, limits).verdict.holds();
    if !qualifies {
        report.push(AxiomEntry::unmet(
            "classical-equals-central",
            "needs axioms A, B and C",
        ));
        return report;
    }
    let classical = classical_elements(sys);
    let central = central_elements(sys);
    report.push(if classical == central {
        AxiomEntry::holds("classical-equals-central")
    } else {
        let diff: Vec<PropId> = classical
            .iter()
            .chain(&central)
            .copied()
            .filter(|a| classical.contains(a) != central.contains(a))
            .collect();
        AxiomEntry::fails("classical-equals-central", prop_witness(sys, &diff))
    });
    report
}
