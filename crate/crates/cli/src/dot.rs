//! DOT exports: order diagrams of subset families and the point-line
//! incidence structure of the derived geometry.

use spslab_core::closure::SubsetFamily;
use spslab_core::geometry::ProjectiveGeometry;
use spslab_core::{PropertyLattice, StatePropertySystem};
use std::fmt::Write as _;

fn quote(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}

/// The covering diagram of a finite lattice, bottom-up.
pub fn lattice_diagram(lat: &PropertyLattice) -> String {
    let mut out = String::from("digraph order {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for a in lat.elements() {
        let _ = writeln!(out, "  {};", quote(lat.name(a)));
    }
    for (a, b) in lat.cover_pairs() {
        let _ = writeln!(out, "  {} -> {};", quote(lat.name(a)), quote(lat.name(b)));
    }
    out.push_str("}\n");
    out
}

/// The covering diagram of a subset family under inclusion.
pub fn family_diagram(sys: &StatePropertySystem, family: &SubsetFamily) -> String {
    lattice_diagram(&family.to_lattice(sys))
}

/// The bipartite point-line incidence graph of the geometry: states as
/// ellipses, proper lines as boxes labeled by their member lists.
pub fn incidence_diagram(sys: &StatePropertySystem, geometry: &ProjectiveGeometry) -> String {
    let mut out = String::from("graph incidence {\n  node [shape=ellipse];\n");
    for p in sys.states() {
        let _ = writeln!(out, "  {};", quote(sys.state_name(p)));
    }
    for (i, line) in geometry.proper_lines().iter().enumerate() {
        let label = sys.set_names(*line).join(",");
        let _ = writeln!(out, "  line{} [shape=box, label={}];", i, quote(&label));
        for p in line.iter() {
            let _ = writeln!(out, "  {} -- line{};", quote(sys.state_name(p)), i);
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use spslab_core::closure::{enumerate_family, FamilyKind};
    use spslab_core::generators::fixture;
    use spslab_core::geometry::build_geometry;
    use spslab_core::Limits;

    #[test]
    fn diagrams_are_deterministic_and_well_formed() {
        let sys = fixture("CBIT").unwrap();
        let fam = enumerate_family(&sys, FamilyKind::Subspaces, &Limits::default()).unwrap();
        let one = family_diagram(&sys, &fam);
        let two = family_diagram(&sys, &fam);
        assert_eq!(one, two);
        assert!(one.starts_with("digraph order {"));
        assert!(one.contains("\"{}\" -> \"{p}\""));

        let (geo, _) = build_geometry(&sys);
        let dot = incidence_diagram(&sys, &geo);
        assert!(dot.contains("\"p\" -- line0;"));
        assert!(dot.contains("graph incidence {"));
    }
}
