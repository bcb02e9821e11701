//! Instance generators: canonical fixtures, finite vector-space models,
//! disjoint unions, and the exhaustive small-instance corpus.
//!
//! The corpus enumeration leans on the extent embedding: a valid system is,
//! up to renaming, exactly an intersection-closed family of state subsets
//! containing the empty and the full set — the lattice is the family under
//! inclusion and the actuality set of a state is the set of members
//! containing it. Enumerating those families and deduplicating them by a
//! permutation-minimal canonical key therefore enumerates every valid
//! instance within the bounds exactly once.

use crate::fields::{FieldError, Gf};
use crate::geometry::{build_geometry, check_projective_lattice};
use crate::lattice::PropId;
use crate::probability::{check_axiom_b, check_axiom_c, mu_valid};
use crate::rational::Ratio;
use crate::set::StateId;
use crate::superposition::{check_exchange, check_msp, sp_holds, MspLevel};
use crate::system::{BuildError, StatePropertySystem, SystemBuilder};
use crate::Limits;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorError {
    UnknownFixture(String),
    Field(FieldError),
    TooManyRays(usize),
    TooManyProperties(usize),
    /// The form has a nonzero vector orthogonal to everything.
    SingularForm(Vec<u32>),
    /// `Φ(x, y) = 0` but `Φ(y, x) ≠ 0`.
    NotReflexive(Vec<u32>, Vec<u32>),
    BadMatrix(String),
    NeedTwoSystems,
    Build(BuildError),
}

impl From<FieldError> for GeneratorError {
    fn from(e: FieldError) -> Self {
        GeneratorError::Field(e)
    }
}

impl From<BuildError> for GeneratorError {
    fn from(e: BuildError) -> Self {
        GeneratorError::Build(e)
    }
}

impl core::fmt::Display for GeneratorError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            GeneratorError::UnknownFixture(n) => write!(f, "unknown fixture: {}", n),
            GeneratorError::Field(e) => write!(f, "{}", e),
            GeneratorError::TooManyRays(n) => write!(f, "too many rays: {}", n),
            GeneratorError::TooManyProperties(n) => write!(f, "too many properties: {}", n),
            GeneratorError::SingularForm(v) => write!(f, "singular form, kernel vector {:?}", v),
            GeneratorError::NotReflexive(x, y) => {
                write!(f, "form is not reflexive at {:?}, {:?}", x, y)
            }
            GeneratorError::BadMatrix(m) => write!(f, "bad form matrix: {}", m),
            GeneratorError::NeedTwoSystems => write!(f, "disjoint union needs at least one system"),
            GeneratorError::Build(e) => write!(f, "{}", e),
        }
    }
}

pub const FIXTURE_NAMES: &[&str] = &["CBIT", "CTRIT", "MO2", "FANO", "LINE3"];

/// Canonical instances:
///
/// - `CBIT`: two distinguishable states over the four-element Boolean
///   lattice, fully testable with a two-valued table;
/// - `CTRIT`: three classical states over the eight-element Boolean lattice;
/// - `MO2`: four states over the height-two lattice with two complementary
///   atom pairs, the minimal quantum-like example;
/// - `FANO`: the seven rays of GF(2)³ with the full subspace lattice;
/// - `LINE3`: the four rays of GF(3)² with the dot-product orthogonality.
pub fn fixture(name: &str) -> Result<StatePropertySystem, GeneratorError> {
    match name {
        "CBIT" => cbit(),
        "CTRIT" => ctrit(),
        "MO2" => mo2(),
        "FANO" => from_vector_space(2, 3, None),
        "LINE3" => from_vector_space(3, 2, Some(&FormSpec::identity(2))),
        other => Err(GeneratorError::UnknownFixture(other.to_string())),
    }
}

fn two_valued_mu(states: &[(&str, &[&str])], props: &[&str]) -> Vec<(String, String, Ratio)> {
    let mut mu = Vec::new();
    for (state, actual) in states {
        for prop in props {
            let v = if actual.contains(prop) {
                Ratio::ONE
            } else {
                Ratio::ZERO
            };
            mu.push((state.to_string(), prop.to_string(), v));
        }
    }
    mu
}

fn cbit() -> Result<StatePropertySystem, GeneratorError> {
    let props = ["0", "a", "a'", "I"];
    let states: [(&str, &[&str]); 2] = [("p", &["a", "I"]), ("q", &["a'", "I"])];
    let builder = SystemBuilder {
        states: states.iter().map(|(s, _)| s.to_string()).collect(),
        properties: props.iter().map(|p| p.to_string()).collect(),
        leq: vec![
            ("0".into(), "a".into()),
            ("0".into(), "a'".into()),
            ("a".into(), "I".into()),
            ("a'".into(), "I".into()),
        ],
        bottom: "0".into(),
        top: "I".into(),
        actual: states
            .iter()
            .map(|(s, a)| (s.to_string(), a.iter().map(|p| p.to_string()).collect()))
            .collect(),
        testable: Some(props.iter().map(|p| p.to_string()).collect()),
        mu: two_valued_mu(&states, &props),
        perp: None,
    };
    Ok(builder.build()?)
}

fn ctrit() -> Result<StatePropertySystem, GeneratorError> {
    // Boolean lattice on three atoms, properties named by their atom sets
    let subset_name = |mask: u32| -> String {
        match mask {
            0 => "0".into(),
            7 => "I".into(),
            m => {
                let mut s = String::from("e");
                for i in 0..3 {
                    if m & (1 << i) != 0 {
                        s.push(char::from(b'1' + i as u8));
                    }
                }
                s
            }
        }
    };
    let props: Vec<String> = (0u32..8).map(subset_name).collect();
    let mut leq = Vec::new();
    for a in 0u32..8 {
        for b in 0u32..8 {
            if a & !b == 0 {
                leq.push((subset_name(a), subset_name(b)));
            }
        }
    }
    let state_names = ["s1", "s2", "s3"];
    let actual: Vec<(String, Vec<String>)> = (0..3)
        .map(|i| {
            let up: Vec<String> = (0u32..8)
                .filter(|m| m & (1 << i) != 0)
                .map(subset_name)
                .collect();
            (state_names[i].to_string(), up)
        })
        .collect();
    let actual_refs: Vec<(&str, Vec<&str>)> = actual
        .iter()
        .map(|(s, ps)| (s.as_str(), ps.iter().map(|p| p.as_str()).collect()))
        .collect();
    let mut mu = Vec::new();
    for (state, actual_props) in &actual_refs {
        for prop in &props {
            let v = if actual_props.contains(&prop.as_str()) {
                Ratio::ONE
            } else {
                Ratio::ZERO
            };
            mu.push((state.to_string(), prop.clone(), v));
        }
    }
    let builder = SystemBuilder {
        states: state_names.iter().map(|s| s.to_string()).collect(),
        properties: props.clone(),
        leq,
        bottom: "0".into(),
        top: "I".into(),
        actual,
        testable: Some(props),
        mu,
        perp: None,
    };
    Ok(builder.build()?)
}

fn mo2() -> Result<StatePropertySystem, GeneratorError> {
    let props = ["0", "a", "a'", "b", "b'", "I"];
    let atoms = ["a", "a'", "b", "b'"];
    let states = ["p", "p'", "q", "q'"];
    let own_atom = |s: &str| -> &str {
        match s {
            "p" => "a",
            "p'" => "a'",
            "q" => "b",
            "q'" => "b'",
            _ => unreachable!(),
        }
    };
    let mut leq = Vec::new();
    for atom in atoms {
        leq.push(("0".to_string(), atom.to_string()));
        leq.push((atom.to_string(), "I".to_string()));
    }
    let actual: Vec<(String, Vec<String>)> = states
        .iter()
        .map(|&s| {
            (
                s.to_string(),
                vec![own_atom(s).to_string(), "I".to_string()],
            )
        })
        .collect();
    // each state: certain on its own atom, impossible on the partner,
    // equivocal on the other pair
    let half = Ratio::new(1, 2).expect("1/2");
    let partner = |a: &str| -> &str {
        match a {
            "a" => "a'",
            "a'" => "a",
            "b" => "b'",
            "b'" => "b",
            _ => unreachable!(),
        }
    };
    let mut mu = Vec::new();
    for &s in &states {
        let own = own_atom(s);
        mu.push((s.to_string(), "0".to_string(), Ratio::ZERO));
        mu.push((s.to_string(), "I".to_string(), Ratio::ONE));
        for atom in atoms {
            let v = if atom == own {
                Ratio::ONE
            } else if atom == partner(own) {
                Ratio::ZERO
            } else {
                half
            };
            mu.push((s.to_string(), atom.to_string(), v));
        }
    }
    let builder = SystemBuilder {
        states: states.iter().map(|s| s.to_string()).collect(),
        properties: props.iter().map(|p| p.to_string()).collect(),
        leq,
        bottom: "0".into(),
        top: "I".into(),
        actual,
        testable: Some(props.iter().map(|p| p.to_string()).collect()),
        mu,
        perp: None,
    };
    Ok(builder.build()?)
}

/// Field involution used by a sesquilinear form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sigma {
    Identity,
    /// `x ↦ x^p`; an involution on the quadratic extensions 4 and 9.
    Frobenius,
}

/// An n×n form matrix over GF(q) with its involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormSpec {
    pub matrix: Vec<Vec<u32>>,
    pub sigma: Sigma,
}

impl FormSpec {
    pub fn identity(n: usize) -> Self {
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1 } else { 0 }).collect())
            .collect();
        FormSpec {
            matrix,
            sigma: Sigma::Identity,
        }
    }
}

const MAX_RAYS: usize = 16;

struct VectorSpace {
    gf: Gf,
    n: usize,
}

impl VectorSpace {
    fn decode(&self, index: u32) -> Vec<u32> {
        let q = self.gf.order();
        let mut coords = vec![0u32; self.n];
        let mut x = index;
        for i in (0..self.n).rev() {
            coords[i] = x % q;
            x /= q;
        }
        coords
    }

    fn encode(&self, coords: &[u32]) -> u32 {
        coords.iter().fold(0, |acc, &c| acc * self.gf.order() + c)
    }

    fn scale(&self, coords: &[u32], k: u32) -> Vec<u32> {
        coords.iter().map(|&c| self.gf.mul(c, k)).collect()
    }

    fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| self.gf.add(x, y)).collect()
    }

    /// Canonical ray representative: first nonzero coordinate scaled to one.
    fn normalize(&self, coords: &[u32]) -> Vec<u32> {
        match coords.iter().copied().find(|&c| c != 0) {
            Some(lead) => self.scale(coords, self.gf.inv(lead)),
            None => coords.to_vec(),
        }
    }

    fn ray_name(&self, coords: &[u32]) -> String {
        if self.gf.order() <= 9 {
            coords.iter().map(|&c| char::from(b'0' + c as u8)).collect()
        } else {
            coords
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join("-")
        }
    }
}

/// Builds the state property system of the projective space over GF(q)ⁿ:
/// states are the rays, properties the linear subspaces ordered by
/// inclusion, and a ray's actuality set is the set of subspaces containing
/// it. A non-singular reflexive form attaches ray orthogonality.
pub fn from_vector_space(
    q: u32,
    n: usize,
    form: Option<&FormSpec>,
) -> Result<StatePropertySystem, GeneratorError> {
    let gf = Gf::new(q)?;
    let space = VectorSpace { gf, n };
    let total = (q as u64).pow(n as u32);
    let ray_count = ((total - 1) / (q as u64 - 1).max(1)) as usize;
    if ray_count > MAX_RAYS {
        return Err(GeneratorError::TooManyRays(ray_count));
    }

    // rays in index order of their canonical representatives
    let mut rays: Vec<Vec<u32>> = Vec::new();
    for idx in 1..total as u32 {
        let coords = space.decode(idx);
        let rep = space.normalize(&coords);
        if !rays.contains(&rep) {
            rays.push(rep);
        }
    }
    rays.sort_by_key(|r| space.encode(r));
    let ray_index = |rep: &[u32]| -> usize {
        rays.iter()
            .position(|r| r == rep)
            .expect("normalized vector is a ray")
    };

    // the ray set of the span of two distinct rays
    let mut line_masks = vec![vec![0u64; rays.len()]; rays.len()];
    #[allow(clippy::needless_range_loop)]
    for (i, x) in rays.iter().enumerate() {
        for (j, y) in rays.iter().enumerate() {
            let mut mask: u64 = (1 << i) | (1 << j);
            for k in space.gf.elements() {
                let combo = space.add(x, &space.scale(y, k));
                if combo.iter().any(|&c| c != 0) {
                    mask |= 1 << ray_index(&space.normalize(&combo));
                }
            }
            line_masks[i][j] = mask;
        }
    }

    // subspaces = ray sets stable under lines through members
    let mut subspaces: Vec<u64> = Vec::new();
    #[allow(clippy::needless_range_loop)]
    'mask: for mask in 0..(1u64 << rays.len()) {
        for i in 0..rays.len() {
            if mask & (1 << i) == 0 {
                continue;
            }
            for j in i..rays.len() {
                if mask & (1 << j) != 0 && line_masks[i][j] & !mask != 0 {
                    continue 'mask;
                }
            }
        }
        subspaces.push(mask);
    }
    subspaces.sort_by_key(|m| (m.count_ones(), *m));

    let full_mask = (1u64 << rays.len()) - 1;
    let subspace_name = |mask: u64| -> String {
        if mask == 0 {
            "0".into()
        } else if mask == full_mask {
            "I".into()
        } else if mask.count_ones() == 1 {
            space.ray_name(&rays[mask.trailing_zeros() as usize])
        } else {
            let names: Vec<String> = (0..rays.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| space.ray_name(&rays[i]))
                .collect();
            names.join("+")
        }
    };

    let properties: Vec<String> = subspaces.iter().map(|&m| subspace_name(m)).collect();
    let mut leq = Vec::new();
    for &a in &subspaces {
        for &b in &subspaces {
            if a & !b == 0 {
                leq.push((subspace_name(a), subspace_name(b)));
            }
        }
    }
    let states: Vec<String> = rays.iter().map(|r| space.ray_name(r)).collect();
    let actual: Vec<(String, Vec<String>)> = rays
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let up: Vec<String> = subspaces
                .iter()
                .filter(|&&m| m & (1 << i) != 0)
                .map(|&m| subspace_name(m))
                .collect();
            (space.ray_name(r), up)
        })
        .collect();

    let perp = match form {
        None => None,
        Some(spec) => {
            if spec.matrix.len() != n || spec.matrix.iter().any(|row| row.len() != n) {
                return Err(GeneratorError::BadMatrix(format!(
                    "expected {}x{} entries",
                    n, n
                )));
            }
            for row in &spec.matrix {
                if row.iter().any(|&e| e >= q) {
                    return Err(GeneratorError::BadMatrix(format!("entry out of GF({})", q)));
                }
            }
            let apply_sigma = |v: u32| match spec.sigma {
                Sigma::Identity => v,
                Sigma::Frobenius => space.gf.frobenius(v),
            };
            let phi = |x: &[u32], y: &[u32]| -> u32 {
                let mut acc = 0;
                for (i, &xi) in x.iter().enumerate() {
                    for (j, &yj) in y.iter().enumerate() {
                        let term = space
                            .gf
                            .mul(xi, space.gf.mul(spec.matrix[i][j], apply_sigma(yj)));
                        acc = space.gf.add(acc, term);
                    }
                }
                acc
            };
            // non-singular: no nonzero vector orthogonal to the whole space
            for idx in 1..total as u32 {
                let x = space.decode(idx);
                if (1..total as u32).all(|jdx| phi(&x, &space.decode(jdx)) == 0) {
                    return Err(GeneratorError::SingularForm(x));
                }
            }
            // reflexive: zero in one order means zero in the other
            for x in &rays {
                for y in &rays {
                    if (phi(x, y) == 0) != (phi(y, x) == 0) {
                        return Err(GeneratorError::NotReflexive(x.clone(), y.clone()));
                    }
                }
            }
            let mut pairs = Vec::new();
            for (i, x) in rays.iter().enumerate() {
                for (j, y) in rays.iter().enumerate() {
                    if i <= j && phi(x, y) == 0 {
                        pairs.push((space.ray_name(&rays[i]), space.ray_name(&rays[j])));
                    }
                }
            }
            Some(pairs)
        }
    };

    let builder = SystemBuilder {
        states,
        properties,
        leq,
        bottom: "0".into(),
        top: "I".into(),
        actual,
        testable: None,
        mu: Vec::new(),
        perp,
    };
    Ok(builder.build()?)
}

const MAX_UNION_PROPS: usize = 512;

/// Disjoint union: states are tagged copies, properties are tuples over the
/// component lattices ordered slot-wise, a tagged state holds a tuple
/// exactly when its slot holds in the component, and the table evaluates a
/// tuple at its own slot. Each block ends up span-clopen, sector counts
/// add, and the block indicator properties are classical.
pub fn disjoint_union(
    systems: &[&StatePropertySystem],
) -> Result<StatePropertySystem, GeneratorError> {
    match systems {
        [] => Err(GeneratorError::NeedTwoSystems),
        [only] => Ok((*only).clone()),
        _ => {
            let prop_total: usize = systems.iter().map(|s| s.lattice().len()).product();
            if prop_total > MAX_UNION_PROPS {
                return Err(GeneratorError::TooManyProperties(prop_total));
            }
            // tuples in lexicographic order over component indices
            let mut tuples: Vec<Vec<PropId>> = vec![Vec::new()];
            for sys in systems {
                let mut next = Vec::new();
                for t in &tuples {
                    for a in sys.lattice().elements() {
                        let mut ext = t.clone();
                        ext.push(a);
                        next.push(ext);
                    }
                }
                tuples = next;
            }
            let tuple_name = |t: &[PropId]| -> String {
                let parts: Vec<String> = t
                    .iter()
                    .enumerate()
                    .map(|(i, &a)| systems[i].lattice().name(a).to_string())
                    .collect();
                format!("({})", parts.join(","))
            };
            let tuple_leq = |a: &[PropId], b: &[PropId]| -> bool {
                a.iter()
                    .zip(b)
                    .enumerate()
                    .all(|(i, (&x, &y))| systems[i].lattice().leq(x, y))
            };
            let properties: Vec<String> = tuples.iter().map(|t| tuple_name(t)).collect();
            let mut leq = Vec::new();
            for a in &tuples {
                for b in &tuples {
                    if tuple_leq(a, b) {
                        leq.push((tuple_name(a), tuple_name(b)));
                    }
                }
            }
            let bottoms: Vec<PropId> = systems.iter().map(|s| s.lattice().bottom()).collect();
            let tops: Vec<PropId> = systems.iter().map(|s| s.lattice().top()).collect();

            let state_name = |i: usize, p: StateId| format!("{}.{}", i, systems[i].state_name(p));
            let mut states = Vec::new();
            let mut actual = Vec::new();
            let mut mu = Vec::new();
            let all_testable = systems.iter().all(|s| !s.testable().is_empty());
            let testable: Option<Vec<String>> = if all_testable {
                Some(
                    tuples
                        .iter()
                        .filter(|t| {
                            t.iter()
                                .enumerate()
                                .all(|(i, a)| systems[i].testable().contains(a))
                        })
                        .map(|t| tuple_name(t))
                        .collect(),
                )
            } else {
                None
            };
            for (i, sys) in systems.iter().enumerate() {
                for p in sys.states() {
                    let name = state_name(i, p);
                    states.push(name.clone());
                    let holds: Vec<String> = tuples
                        .iter()
                        .filter(|t| sys.is_actual(t[i], p))
                        .map(|t| tuple_name(t))
                        .collect();
                    actual.push((name.clone(), holds));
                    if testable.is_some() {
                        for t in &tuples {
                            if t.iter()
                                .enumerate()
                                .all(|(j, a)| systems[j].testable().contains(a))
                            {
                                let v = sys.mu(p, t[i]).expect("slot is testable");
                                mu.push((name.clone(), tuple_name(t), v));
                            }
                        }
                    }
                }
            }
            let builder = SystemBuilder {
                states,
                properties,
                leq,
                bottom: tuple_name(&bottoms),
                top: tuple_name(&tops),
                actual,
                testable,
                mu,
                perp: None,
            };
            Ok(builder.build()?)
        }
    }
}

/// Largest state count the exhaustive corpus enumeration accepts; the
/// family space explodes beyond it.
pub const MAX_CORPUS_STATES: usize = 5;

/// Bounds for the exhaustive corpus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusBounds {
    pub max_states: usize,
    pub max_props: usize,
}

impl Default for CorpusBounds {
    fn default() -> Self {
        CorpusBounds {
            max_states: 4,
            max_props: 8,
        }
    }
}

/// Permutation-minimal key of a valid instance: the sorted list of property
/// extents, minimized over state relabelings. Instances differing only by
/// names share a key. Limited to ten states.
pub fn canonical_key(sys: &StatePropertySystem) -> Option<(usize, Vec<u64>)> {
    let n = sys.n_states();
    if n > 10 {
        return None;
    }
    let extents: Vec<u64> = sys.lattice().elements().map(|a| sys.extent(a).0).collect();
    let mut best: Option<Vec<u64>> = None;
    permute(n, &mut (0..n).collect::<Vec<_>>(), 0, &mut |perm| {
        let mut remapped: Vec<u64> = extents
            .iter()
            .map(|&mask| {
                let mut out = 0u64;
                for (i, &target) in perm.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        out |= 1 << target;
                    }
                }
                out
            })
            .collect();
        remapped.sort_unstable();
        if best.as_ref().is_none_or(|b| remapped < *b) {
            best = Some(remapped);
        }
    });
    best.map(|b| (n, b))
}

fn permute(n: usize, items: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == n {
        f(items);
        return;
    }
    for i in k..n {
        items.swap(k, i);
        permute(n, items, k + 1, f);
        items.swap(k, i);
    }
}

/// Builds the instance of an intersection-closed family of state subsets
/// (which must contain the empty and the full mask): the lattice is the
/// family under inclusion and a state's actuality set is the set of members
/// containing it. When the forced two-valued table on the full lattice
/// satisfies the table axioms it is attached; otherwise the instance
/// carries no testable set.
pub fn from_extent_family(n_states: usize, family: &[u64]) -> StatePropertySystem {
    let full = (1u64 << n_states) - 1;
    let member_name = |mask: u64| -> String {
        if mask == 0 {
            "0".into()
        } else if mask == full {
            "I".into()
        } else {
            let parts: Vec<String> = (0..n_states)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| format!("s{}", i))
                .collect();
            format!("{{{}}}", parts.join(","))
        }
    };
    let states: Vec<String> = (0..n_states).map(|i| format!("s{}", i)).collect();
    let properties: Vec<String> = family.iter().map(|&m| member_name(m)).collect();
    let mut leq = Vec::new();
    for &a in family {
        for &b in family {
            if a & !b == 0 {
                leq.push((member_name(a), member_name(b)));
            }
        }
    }
    let actual: Vec<(String, Vec<String>)> = (0..n_states)
        .map(|i| {
            let holds: Vec<String> = family
                .iter()
                .filter(|&&m| m & (1 << i) != 0)
                .map(|&m| member_name(m))
                .collect();
            (format!("s{}", i), holds)
        })
        .collect();

    let base = SystemBuilder {
        states: states.clone(),
        properties: properties.clone(),
        leq: leq.clone(),
        bottom: member_name(0),
        top: member_name(full),
        actual: actual.clone(),
        testable: None,
        mu: Vec::new(),
        perp: None,
    }
    .build()
    .expect("families build into systems");

    // try the dispersion-free table on the full lattice
    let mut mu = Vec::new();
    for (i, state) in states.iter().enumerate() {
        for (k, &mask) in family.iter().enumerate() {
            let v = if mask & (1 << i) != 0 {
                Ratio::ONE
            } else {
                Ratio::ZERO
            };
            mu.push((state.clone(), properties[k].clone(), v));
        }
    }
    let with_mu = SystemBuilder {
        states,
        properties: properties.clone(),
        leq,
        bottom: member_name(0),
        top: member_name(full),
        actual,
        testable: Some(properties),
        mu,
        perp: None,
    }
    .build()
    .expect("families build into systems");
    if mu_valid(&with_mu, &Limits::default()) {
        with_mu
    } else {
        base
    }
}

/// Enumerates every valid instance within the bounds, exactly once up to
/// state and property renaming, in deterministic order.
pub fn enumerate_instances(bounds: &CorpusBounds) -> Vec<StatePropertySystem> {
    let mut keys: BTreeSet<(usize, Vec<u64>)> = BTreeSet::new();
    for n in 1..=bounds.max_states.min(MAX_CORPUS_STATES) {
        let full = (1u64 << n) - 1;
        let middles: Vec<u64> = (1..full).collect();
        if bounds.max_props < 2 {
            continue;
        }
        let free = bounds.max_props - 2;
        let mut chosen: Vec<u64> = Vec::new();
        enumerate_families(&middles, 0, free, &mut chosen, &mut |family_middles| {
            let mut family: Vec<u64> = Vec::with_capacity(family_middles.len() + 2);
            family.push(0);
            family.extend_from_slice(family_middles);
            family.push(full);
            let canon = canonical_family(n, &family);
            keys.insert((n, canon));
        });
    }
    keys.iter()
        .map(|(n, family)| from_extent_family(*n, family))
        .collect()
}

/// Walks intersection-closed middle-member sets in ascending mask order.
/// A pairwise intersection is a submask, hence numerically below both
/// members; every prefix of an ascending intersection-closed family is
/// therefore itself closed, which makes the pruning exhaustive.
fn enumerate_families(
    middles: &[u64],
    start: usize,
    room: usize,
    chosen: &mut Vec<u64>,
    f: &mut impl FnMut(&[u64]),
) {
    f(chosen);
    if room == 0 {
        return;
    }
    for i in start..middles.len() {
        let m = middles[i];
        let closed = chosen.iter().all(|&c| {
            let x = c & m;
            x == 0 || x == c || chosen.contains(&x)
        });
        if closed {
            chosen.push(m);
            enumerate_families(middles, i + 1, room - 1, chosen, f);
            chosen.pop();
        }
    }
}

fn canonical_family(n: usize, family: &[u64]) -> Vec<u64> {
    let mut best: Option<Vec<u64>> = None;
    permute(n, &mut (0..n).collect::<Vec<_>>(), 0, &mut |perm| {
        let mut remapped: Vec<u64> = family
            .iter()
            .map(|&mask| {
                let mut out = 0u64;
                for (i, &target) in perm.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        out |= 1 << target;
                    }
                }
                out
            })
            .collect();
        remapped.sort_unstable();
        if best.as_ref().is_none_or(|b| remapped < *b) {
            best = Some(remapped);
        }
    });
    best.expect("at least the identity permutation")
}

/// Named hypotheses and conclusions for corpus-wide searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedCondition {
    A,
    B,
    C,
    Sp,
    Exchange,
    Msp2,
    Msp3,
    MspFinite,
    PointAxioms,
    ProjectiveLattice,
    ClassicalEqualsCentral,
    SpanIsHull,
}

impl NamedCondition {
    pub fn eval(&self, sys: &StatePropertySystem, limits: &Limits) -> bool {
        match self {
            NamedCondition::A => sys.axiom_a_holds(),
            NamedCondition::B => check_axiom_b(sys, limits).verdict.holds(),
            NamedCondition::C => check_axiom_c(sys, limits).verdict.holds(),
            NamedCondition::Sp => sp_holds(sys),
            NamedCondition::Exchange => check_exchange(sys).verdict.holds(),
            NamedCondition::Msp2 => check_msp(sys, MspLevel::N(2), limits).holds(),
            NamedCondition::Msp3 => check_msp(sys, MspLevel::N(3), limits).holds(),
            NamedCondition::MspFinite => check_msp(sys, MspLevel::Finite, limits).holds(),
            NamedCondition::PointAxioms => build_geometry(sys).1.all_hold(),
            NamedCondition::ProjectiveLattice => check_projective_lattice(sys, limits).all_hold(),
            NamedCondition::ClassicalEqualsCentral => {
                crate::cartan::classical_elements(sys) == crate::cartan::central_elements(sys)
            }
            NamedCondition::SpanIsHull => {
                let lines = crate::closure::LineTable::build(sys);
                crate::set::subsets_in_witness_order(sys.n_states())
                    .all(|s| lines.span(s) == crate::closure::hull(sys, s))
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            NamedCondition::A => "A",
            NamedCondition::B => "B",
            NamedCondition::C => "C",
            NamedCondition::Sp => "SP",
            NamedCondition::Exchange => "2-MSP-exchange",
            NamedCondition::Msp2 => "2-MSP",
            NamedCondition::Msp3 => "3-MSP",
            NamedCondition::MspFinite => "f-MSP",
            NamedCondition::PointAxioms => "point-axioms",
            NamedCondition::ProjectiveLattice => "projective-lattice",
            NamedCondition::ClassicalEqualsCentral => "classical-equals-central",
            NamedCondition::SpanIsHull => "span-is-hull",
        }
    }
}

/// First corpus instance, in canonical order, satisfying every antecedent
/// and violating the consequent.
pub fn search_counterexample(
    bounds: &CorpusBounds,
    antecedent: &[NamedCondition],
    consequent: NamedCondition,
    limits: &Limits,
) -> Option<StatePropertySystem> {
    enumerate_instances(bounds)
        .into_iter()
        .find(|sys| antecedent.iter().all(|c| c.eval(sys, limits)) && !consequent.eval(sys, limits))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build_and_validate() {
        for name in FIXTURE_NAMES {
            let sys = fixture(name).unwrap();
            assert!(
                sys.is_valid(),
                "{} should satisfy the defining axioms",
                name
            );
        }
    }

    #[test]
    fn fano_shape() {
        let fano = fixture("FANO").unwrap();
        assert_eq!(fano.n_states(), 7);
        assert_eq!(fano.lattice().len(), 16);
        assert_eq!(fano.lattice().atoms().len(), 7);
    }

    #[test]
    fn line3_shape_and_perp() {
        let line3 = fixture("LINE3").unwrap();
        assert_eq!(line3.n_states(), 4);
        assert_eq!(line3.lattice().len(), 6);
        let rel = line3.perp_override().unwrap();
        let e1 = line3.state_index("10").unwrap();
        let e2 = line3.state_index("01").unwrap();
        let d1 = line3.state_index("11").unwrap();
        let d2 = line3.state_index("12").unwrap();
        assert!(rel[e1.0].contains(e2));
        assert!(rel[d1.0].contains(d2));
        assert!(!rel[e1.0].contains(d1));
        assert!(!rel[e1.0].contains(e1));
    }

    #[test]
    fn singular_form_is_rejected() {
        let zero = FormSpec {
            matrix: vec![vec![0, 0], vec![0, 0]],
            sigma: Sigma::Identity,
        };
        assert!(matches!(
            from_vector_space(2, 2, Some(&zero)),
            Err(GeneratorError::SingularForm(_))
        ));
    }

    #[test]
    fn non_reflexive_form_is_rejected() {
        // unipotent upper-triangular: one-sided orthogonality over GF(2)
        let skew = FormSpec {
            matrix: vec![vec![1, 1], vec![0, 1]],
            sigma: Sigma::Identity,
        };
        assert!(matches!(
            from_vector_space(2, 2, Some(&skew)),
            Err(GeneratorError::NotReflexive(_, _))
        ));
    }

    #[test]
    fn oversized_unions_are_rejected() {
        let fano = fixture("FANO").unwrap();
        let cbit = fixture("CBIT").unwrap();
        assert!(matches!(
            disjoint_union(&[&fano, &fano, &cbit]),
            Err(GeneratorError::TooManyProperties(1024))
        ));
    }

    #[test]
    fn union_of_one_is_identity() {
        let cbit = fixture("CBIT").unwrap();
        let same = disjoint_union(&[&cbit]).unwrap();
        assert_eq!(same.n_states(), cbit.n_states());
        assert_eq!(same.lattice().len(), cbit.lattice().len());
    }

    #[test]
    fn union_shape() {
        let cbit = fixture("CBIT").unwrap();
        let double = disjoint_union(&[&cbit, &cbit]).unwrap();
        assert_eq!(double.n_states(), 4);
        assert_eq!(double.lattice().len(), 16);
        assert!(double.is_valid());
        assert!(!double.testable().is_empty());
    }

    #[test]
    fn pg_3_2_shape() {
        // fifteen rays of GF(2)^4, 67 subspaces, a basis of four
        let sys = from_vector_space(2, 4, None).unwrap();
        assert_eq!(sys.n_states(), 15);
        assert_eq!(sys.lattice().len(), 67);
        assert!(sys.is_valid());
        let limits = Limits {
            max_subsets: 1 << 16,
            seed: None,
        };
        let (size, _, partial) = crate::geometry::max_independent(&sys, &limits);
        assert_eq!(size, 4);
        assert!(!partial);
        assert!(crate::superposition::sp_holds(&sys));
        assert!(matches!(
            from_vector_space(2, 5, None),
            Err(GeneratorError::TooManyRays(31))
        ));
    }

    #[test]
    fn corpus_is_deduplicated_and_valid() {
        let corpus = enumerate_instances(&CorpusBounds {
            max_states: 3,
            max_props: 8,
        });
        assert!(!corpus.is_empty());
        let mut seen = BTreeSet::new();
        for sys in &corpus {
            assert!(sys.is_valid());
            assert!(
                seen.insert(canonical_key(sys).unwrap()),
                "duplicate canonical key"
            );
        }
        // two states: the empty family, one singleton, both singletons
        let two_state = enumerate_instances(&CorpusBounds {
            max_states: 2,
            max_props: 8,
        });
        assert_eq!(two_state.iter().filter(|s| s.n_states() == 2).count(), 3);
    }

    #[test]
    fn five_state_corpus_regression_counts() {
        // the largest supported bounds; counts pin the enumeration and the
        // canonical-form dedup against drift
        let corpus = enumerate_instances(&CorpusBounds {
            max_states: 5,
            max_props: 8,
        });
        assert_eq!(corpus.len(), 647);
        assert_eq!(corpus.iter().filter(|s| s.n_states() == 5).count(), 535);
        assert!(corpus.iter().all(|s| s.is_valid()));
        // tighter property bounds cut the family sizes, never the validity
        let small = enumerate_instances(&CorpusBounds {
            max_states: 4,
            max_props: 6,
        });
        assert_eq!(small.len(), 61);
        assert!(small.iter().all(|s| s.lattice().len() <= 6));
    }

    #[test]
    fn canonical_key_ignores_labels() {
        let a = from_extent_family(2, &[0b00, 0b01, 0b11]);
        let b = from_extent_family(2, &[0b00, 0b10, 0b11]);
        assert_eq!(canonical_key(&a), canonical_key(&b));
    }
}
