//! Finite state property systems.
//!
//! A state property system couples a finite set of states `Σ` with a finite
//! bounded lattice of properties `L` through an actuality map `ξ` assigning to
//! every state the set of properties that hold in it. On top of that base
//! structure this crate builds:
//!
//! - the two closure operators induced by superposition (the span of a set of
//!   states and its superposition hull), together with the subset lattices of
//!   span-closed and hull-closed sets ([`closure`]);
//! - the minimal-superposition axiom family and the superposition principle
//!   ([`superposition`]);
//! - the derived projective geometry on states and its certification
//!   ([`geometry`]);
//! - probability tables on a designated set of testable properties, the
//!   orthogonality and orthocomplementation they induce, and the orthomodular
//!   certificates ([`probability`]);
//! - the extent map from properties to state sets, sector decomposition and
//!   classical/central elements ([`cartan`]);
//! - Mackey lattice/geometry, intersection lattice, orthogeometry,
//!   ortholattice and orthosystem certificates ([`mackey`]);
//! - fixtures, finite vector-space models over GF(q), disjoint unions, and an
//!   exhaustive generator for small instances ([`generators`]);
//! - a definitional brute-force evaluator used as an independent oracle for
//!   everything above ([`oracle`]).
//!
//! The crate is `no_std` (with `alloc`); all verdicts are computed with exact
//! set and rational arithmetic, and every enumeration is deterministic.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod cartan;
pub mod closure;
pub mod fields;
pub mod generators;
pub mod geometry;
pub mod lattice;
pub mod mackey;
pub mod oracle;
pub mod probability;
pub mod rational;
pub mod report;
pub mod set;
pub mod superposition;
pub mod system;

pub use lattice::{LatticeError, PropId, PropertyLattice};
pub use rational::Ratio;
pub use report::{AxiomEntry, AxiomReport, StructureCertificate, Verdict, Witness};
pub use set::{PropSet, StateId, StateSet};
pub use system::{BuildError, StatePropertySystem, SystemBuilder};

use serde::{Deserialize, Serialize};

/// Resource limits for the subset-enumeration heavy operations.
///
/// `max_subsets` bounds how many subsets of the state set an operation may
/// enumerate before giving up with a budget error or a partial verdict.
/// `seed` enables the sampled fallbacks of the operations that otherwise
/// insist on exhaustive enumeration; with no seed those paths abort instead
/// of sampling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_subsets: u64,
    pub seed: Option<u64>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_subsets: 1 << 16,
            seed: None,
        }
    }
}

impl Limits {
    pub fn with_budget(max_subsets: u64) -> Self {
        Limits {
            max_subsets,
            seed: None,
        }
    }

    /// Number of subsets of an `n`-element set, if representable.
    pub fn subset_space(n: usize) -> Option<u64> {
        if n >= 64 {
            None
        } else {
            Some(1u64 << n)
        }
    }

    /// True when all `2^n` subsets fit in the budget.
    pub fn allows_power_set(&self, n: usize) -> bool {
        match Self::subset_space(n) {
            Some(total) => total <= self.max_subsets,
            None => false,
        }
    }

    /// A fresh step counter for one enumeration pass.
    pub fn steps(&self) -> StepCounter {
        StepCounter {
            left: self.max_subsets,
            taken: 0,
        }
    }
}

/// Counts the iterations of a single exhaustive pass against the budget.
#[derive(Clone, Copy, Debug)]
pub struct StepCounter {
    left: u64,
    taken: u64,
}

impl StepCounter {
    /// Consumes one step; false once the budget is spent.
    pub fn take(&mut self) -> bool {
        if self.left == 0 {
            return false;
        }
        self.left -= 1;
        self.taken += 1;
        true
    }

    pub fn exhausted(&self) -> bool {
        self.left == 0
    }

    pub fn taken(&self) -> u64 {
        self.taken
    }
}

/// Error raised when an exhaustive enumeration would exceed [`Limits`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetExceeded {
    /// Subsets the operation would have to visit.
    pub required: Option<u64>,
    /// Budget it was given.
    pub budget: u64,
}

impl core::fmt::Display for BudgetExceeded {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self.required {
            Some(required) => write!(
                f,
                "enumeration budget exceeded: needs {} subsets, budget {}",
                required, self.budget
            ),
            None => write!(f, "enumeration budget exceeded: budget {}", self.budget),
        }
    }
}
