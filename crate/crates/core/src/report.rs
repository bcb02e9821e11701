//! Structured verdicts.
//!
//! Every axiom or law checked anywhere in the crate lands in an
//! [`AxiomEntry`]: a name, a verdict, and — whenever the verdict is a
//! failure — a concrete [`Witness`] that re-evaluates to a violation.
//! Reports never carry raw indices; witnesses are stated in terms of state
//! and property names so they survive serialization and can be pasted back
//! for re-checking.

use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// The axiom holds on this instance.
    Holds,
    /// The axiom fails; the entry carries a witness.
    Fails,
    /// The axiom's own hypotheses are not met, so it was not evaluated.
    PreconditionUnmet,
    /// Enumeration stopped at the budget; no counterexample in the explored
    /// region.
    Partial,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

/// Falsifying data for a failed axiom, in names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Witness {
    States {
        states: Vec<String>,
    },
    Props {
        props: Vec<String>,
    },
    StateProp {
        state: String,
        prop: String,
    },
    /// A state subset together with optional extra states/properties, used by
    /// closure-law and subset-quantified failures.
    Subsets {
        subsets: Vec<Vec<String>>,
        states: Vec<String>,
        props: Vec<String>,
    },
    /// Minimal-superposition failure: `p` is a minimal superposition of `s`,
    /// split into `s1 | s2`, and the hull of `s1 ∪ {p}` misses the hull of
    /// `s2`.
    Msp {
        s: Vec<String>,
        p: String,
        s1: Vec<String>,
        s2: Vec<String>,
    },
    Text {
        text: String,
    },
}

impl Witness {
    pub fn states<I: IntoIterator<Item = String>>(states: I) -> Self {
        Witness::States {
            states: states.into_iter().collect(),
        }
    }

    pub fn props<I: IntoIterator<Item = String>>(props: I) -> Self {
        Witness::Props {
            props: props.into_iter().collect(),
        }
    }

    pub fn state_prop(state: String, prop: String) -> Self {
        Witness::StateProp { state, prop }
    }

    pub fn text<S: Into<String>>(text: S) -> Self {
        Witness::Text { text: text.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomEntry {
    pub axiom: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl AxiomEntry {
    pub fn holds(axiom: &str) -> Self {
        AxiomEntry {
            axiom: axiom.into(),
            verdict: Verdict::Holds,
            witness: None,
            note: None,
        }
    }

    pub fn fails(axiom: &str, witness: Witness) -> Self {
        AxiomEntry {
            axiom: axiom.into(),
            verdict: Verdict::Fails,
            witness: Some(witness),
            note: None,
        }
    }

    pub fn unmet(axiom: &str, note: &str) -> Self {
        AxiomEntry {
            axiom: axiom.into(),
            verdict: Verdict::PreconditionUnmet,
            witness: None,
            note: Some(note.into()),
        }
    }

    pub fn partial(axiom: &str, note: &str) -> Self {
        AxiomEntry {
            axiom: axiom.into(),
            verdict: Verdict::Partial,
            witness: None,
            note: Some(note.into()),
        }
    }

    pub fn with_note(mut self, note: &str) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Ordered list of axiom entries produced by one checking pass.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub entries: Vec<AxiomEntry>,
}

impl AxiomReport {
    pub fn new() -> Self {
        AxiomReport {
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, entry: AxiomEntry) {
        self.entries.push(entry);
    }

    pub fn entry(&self, axiom: &str) -> Option<&AxiomEntry> {
        self.entries.iter().find(|e| e.axiom == axiom)
    }

    pub fn verdict(&self, axiom: &str) -> Option<Verdict> {
        self.entry(axiom).map(|e| e.verdict)
    }

    pub fn holds(&self, axiom: &str) -> bool {
        self.verdict(axiom).is_some_and(|v| v.holds())
    }

    /// True when every evaluated entry holds (precondition-unmet entries are
    /// not failures).
    pub fn all_hold(&self) -> bool {
        self.entries
            .iter()
            .all(|e| !matches!(e.verdict, Verdict::Fails))
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomEntry> {
        self.entries
            .iter()
            .filter(|e| matches!(e.verdict, Verdict::Fails))
    }

    pub fn merge(&mut self, other: AxiomReport) {
        self.entries.extend(other.entries);
    }
}

/// Which higher structure a certificate speaks about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StructureKind {
    MackeyLattice,
    MackeyGeometry,
    IntersectionLattice,
    RegularMackey,
    Orthogeometry,
    Ortholattice,
    Orthosystem,
}

impl StructureKind {
    pub fn name(&self) -> &'static str {
        match self {
            StructureKind::MackeyLattice => "mackey-lattice",
            StructureKind::MackeyGeometry => "mackey-geometry",
            StructureKind::IntersectionLattice => "intersection-lattice",
            StructureKind::RegularMackey => "regular",
            StructureKind::Orthogeometry => "orthogeometry",
            StructureKind::Ortholattice => "ortholattice",
            StructureKind::Orthosystem => "orthosystem",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Some(match name {
            "mackey-lattice" => StructureKind::MackeyLattice,
            "mackey-geometry" => StructureKind::MackeyGeometry,
            "intersection-lattice" => StructureKind::IntersectionLattice,
            "regular" | "regular-mackey" => StructureKind::RegularMackey,
            "orthogeometry" => StructureKind::Orthogeometry,
            "ortholattice" => StructureKind::Ortholattice,
            "orthosystem" => StructureKind::Orthosystem,
            _ => return None,
        })
    }
}

/// Pass/fail record for one of the structures of [`StructureKind`], with one
/// entry per structure axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureCertificate {
    pub structure: StructureKind,
    pub verdict: Verdict,
    pub axioms: AxiomReport,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl StructureCertificate {
    pub fn from_axioms(structure: StructureKind, axioms: AxiomReport) -> Self {
        let verdict = if axioms.entries.iter().any(|e| e.verdict == Verdict::Fails) {
            Verdict::Fails
        } else if axioms
            .entries
            .iter()
            .any(|e| e.verdict == Verdict::PreconditionUnmet)
        {
            Verdict::PreconditionUnmet
        } else if axioms.entries.iter().any(|e| e.verdict == Verdict::Partial) {
            Verdict::Partial
        } else {
            Verdict::Holds
        };
        StructureCertificate {
            structure,
            verdict,
            axioms,
            notes: Vec::new(),
        }
    }

    pub fn unmet(structure: StructureKind, note: &str) -> Self {
        let mut axioms = AxiomReport::new();
        axioms.push(AxiomEntry::unmet(structure.name(), note));
        StructureCertificate {
            structure,
            verdict: Verdict::PreconditionUnmet,
            axioms,
            notes: alloc::vec![String::from(note)],
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict.holds()
    }
}
