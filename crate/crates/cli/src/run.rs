//! Run reports: one deterministic document per invocation.
//!
//! A report is a pure function of (instance, command, flags); repeated runs
//! emit byte-identical JSON and text. Timings are therefore opt-in and
//! excluded from the determinism guarantee.

use crate::format::digest;
use serde::{Deserialize, Serialize};
use spslab_core::cartan::{
    central_elements, check_classical_central, check_classical_clopen, check_extent_map,
    check_sector_clopen, classical_elements, sectors,
};
use spslab_core::closure::{enumerate_family, FamilyKind, SubsetFamily};
use spslab_core::generators::canonical_key;
use spslab_core::geometry::{
    build_geometry, check_c_laws, check_irreducible, check_projective_lattice, max_independent,
    ProjectiveGeometry,
};
use spslab_core::mackey::{certify, check_join_decomposition};
use spslab_core::probability::{
    build_testable_family, check_axiom_b, check_axiom_c, check_biorthogonal, check_omp,
    effective_perp, extend_orthocomplement, testable_complement, validate_mu,
};
use spslab_core::report::{AxiomEntry, AxiomReport, StructureCertificate, StructureKind, Verdict};
use spslab_core::superposition::{
    check_exchange, check_msp, check_sp, check_span_hull_equalities, MspLevel,
};
use spslab_core::{Limits, StatePropertySystem, StateSet, Witness};

pub const SCHEMA: &str = "spslab-report/1";

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(rename_all = "kebab-case")]
pub struct RunReport {
    pub schema: String,
    pub tool_version: String,
    pub command: String,
    pub instance: InstanceSummary,
    pub sections: Vec<Section>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<Vec<(String, f64)>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(rename_all = "kebab-case")]
pub struct InstanceSummary {
    pub digest: String,
    pub states: usize,
    pub properties: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub canonical_key: Option<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct FamilySummary {
    pub kind: String,
    pub members: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(
    tag = "kind",
    rename_all = "kebab-case",
    rename_all_fields = "kebab-case"
)]
pub enum Section {
    Validate {
        defining: AxiomReport,
        axiom_a: AxiomEntry,
        axiom_b: AxiomEntry,
        axiom_c: AxiomEntry,
        table: AxiomReport,
        atoms: AxiomReport,
        /// Nontrivial pairs of the derived pre-order, as (below, above).
        state_preorder: Vec<(String, String)>,
    },
    Closures {
        families: Vec<FamilySummary>,
        laws: AxiomReport,
    },
    Close {
        closure: String,
        input: Vec<String>,
        output: Vec<String>,
    },
    Geometry {
        point_axioms: AxiomReport,
        lines: Vec<Vec<String>>,
        span_laws: AxiomReport,
        lattice_laws: AxiomReport,
        max_independent: usize,
        independent_witness: Vec<String>,
        search_exhausted: bool,
        irreducible: AxiomEntry,
    },
    Axioms {
        msp: Vec<AxiomEntry>,
        exchange: AxiomEntry,
        sp: AxiomEntry,
        span_hull: AxiomReport,
    },
    Sectors {
        #[serde(skip_serializing_if = "Option::is_none")]
        unmet: Option<String>,
        blocks: Vec<Vec<String>>,
        block_sp: Vec<bool>,
        certificate: AxiomReport,
        clopen: AxiomReport,
    },
    Classical {
        classical: Vec<String>,
        central: Vec<String>,
        extents: Vec<(String, Vec<String>)>,
        extent_map: AxiomReport,
        clopen: AxiomReport,
        equality: AxiomReport,
    },
    Ortho {
        testable_complement: Vec<(String, String)>,
        #[serde(skip_serializing_if = "Option::is_none")]
        extended_complement: Option<Vec<(String, String)>>,
        extension: AxiomReport,
        perp: Vec<(String, String)>,
        omp: AxiomReport,
        biorthogonal: AxiomReport,
        testable_closed_family: Vec<Vec<String>>,
        family_complement: AxiomReport,
        join_decomposition: AxiomReport,
    },
    Certify {
        certificates: Vec<StructureCertificate>,
    },
}

pub fn new_report(sys: &StatePropertySystem, command: &str) -> RunReport {
    RunReport {
        schema: SCHEMA.into(),
        tool_version: env!("CARGO_PKG_VERSION").into(),
        command: command.into(),
        instance: InstanceSummary {
            digest: digest(sys),
            states: sys.n_states(),
            properties: sys.lattice().len(),
            canonical_key: canonical_key(sys).map(|(n, masks)| {
                format!(
                    "{}:{}",
                    n,
                    masks
                        .iter()
                        .map(|m| format!("{:x}", m))
                        .collect::<Vec<_>>()
                        .join(".")
                )
            }),
        },
        sections: Vec::new(),
        timings_ms: None,
    }
}

fn names(sys: &StatePropertySystem, set: StateSet) -> Vec<String> {
    sys.set_names(set)
}

pub fn section_validate(sys: &StatePropertySystem, limits: &Limits) -> Section {
    let mut preorder = Vec::new();
    for p in sys.states() {
        for q in sys.state_preorder()[p.0].iter() {
            if p != q {
                preorder.push((sys.state_name(p).to_string(), sys.state_name(q).to_string()));
            }
        }
    }
    Section::Validate {
        defining: sys.validate().clone(),
        axiom_a: sys.check_axiom_a(),
        axiom_b: check_axiom_b(sys, limits),
        axiom_c: check_axiom_c(sys, limits),
        table: validate_mu(sys, limits),
        atoms: sys.check_atoms_and_atomisticity(),
        state_preorder: preorder,
    }
}

fn family_summary(sys: &StatePropertySystem, family: &SubsetFamily) -> FamilySummary {
    FamilySummary {
        kind: family.kind.name().into(),
        members: family.members.iter().map(|&m| names(sys, m)).collect(),
    }
}

pub fn section_closures(
    sys: &StatePropertySystem,
    limits: &Limits,
) -> Result<Section, spslab_core::BudgetExceeded> {
    let mut families = Vec::new();
    for kind in [
        FamilyKind::Subspaces,
        FamilyKind::Closed,
        FamilyKind::TestableClosed,
    ] {
        families.push(family_summary(sys, &enumerate_family(sys, kind, limits)?));
    }
    Ok(Section::Closures {
        families,
        laws: spslab_core::closure::check_closure_laws(sys, limits),
    })
}

pub fn section_geometry(
    sys: &StatePropertySystem,
    limits: &Limits,
) -> (ProjectiveGeometry, Section) {
    let (geo, point_axioms) = build_geometry(sys);
    let lines: Vec<Vec<String>> = geo.proper_lines().iter().map(|&l| names(sys, l)).collect();
    let (size, witness, partial) = max_independent(sys, limits);
    let section = Section::Geometry {
        point_axioms,
        lines,
        span_laws: check_c_laws(sys, limits),
        lattice_laws: check_projective_lattice(sys, limits),
        max_independent: size,
        independent_witness: names(sys, witness),
        search_exhausted: !partial,
        irreducible: check_irreducible(sys, limits),
    };
    (geo, section)
}

pub fn section_axioms(sys: &StatePropertySystem, limits: &Limits, levels: &[MspLevel]) -> Section {
    Section::Axioms {
        msp: levels
            .iter()
            .map(|&l| check_msp(sys, l, limits).to_entry(sys))
            .collect(),
        exchange: check_exchange(sys),
        sp: check_sp(sys, sys.all_states()),
        span_hull: check_span_hull_equalities(sys, limits),
    }
}

pub fn section_sectors(sys: &StatePropertySystem, limits: &Limits) -> Section {
    match sectors(sys, limits) {
        Err(unmet) => Section::Sectors {
            unmet: Some(unmet.reason),
            blocks: Vec::new(),
            block_sp: Vec::new(),
            certificate: AxiomReport::new(),
            clopen: AxiomReport::new(),
        },
        Ok((decomp, certificate)) => Section::Sectors {
            unmet: None,
            blocks: decomp.blocks.iter().map(|&b| names(sys, b)).collect(),
            block_sp: decomp.per_block_sp.clone(),
            certificate,
            clopen: check_sector_clopen(sys, limits).unwrap_or_else(|e| {
                let mut r = AxiomReport::new();
                r.push(AxiomEntry::unmet("sectors-clopen", &e.reason));
                r
            }),
        },
    }
}

pub fn section_classical(sys: &StatePropertySystem, limits: &Limits) -> Section {
    let classical = classical_elements(sys);
    let central = central_elements(sys);
    let lat = sys.lattice();
    Section::Classical {
        classical: classical.iter().map(|&a| lat.name(a).to_string()).collect(),
        central: central.iter().map(|&a| lat.name(a).to_string()).collect(),
        extents: classical
            .iter()
            .map(|&a| (lat.name(a).to_string(), names(sys, sys.extent(a))))
            .collect(),
        extent_map: check_extent_map(sys, limits),
        clopen: check_classical_clopen(sys),
        equality: check_classical_central(sys, limits),
    }
}

pub fn section_ortho(sys: &StatePropertySystem, limits: &Limits) -> Section {
    let lat = sys.lattice();
    let testable_complement_pairs: Vec<(String, String)> = sys
        .testable()
        .iter()
        .map(|&a| {
            let image = match testable_complement(sys, a) {
                Ok(b) => lat.name(b).to_string(),
                Err(e) => format!("<{}>", e),
            };
            (lat.name(a).to_string(), image)
        })
        .collect();
    let (map, extension) = extend_orthocomplement(sys, limits);
    let extended = map.map(|map| {
        lat.elements()
            .map(|b| (lat.name(b).to_string(), lat.name(map[b.0]).to_string()))
            .collect()
    });
    let rel = effective_perp(sys);
    let mut perp = Vec::new();
    for p in sys.states() {
        for q in rel[p.0].iter() {
            if p.0 <= q.0 {
                perp.push((sys.state_name(p).to_string(), sys.state_name(q).to_string()));
            }
        }
    }
    let (family_members, family_complement) = match build_testable_family(sys, limits) {
        Ok((family, cert)) => (
            family.members.iter().map(|&m| names(sys, m)).collect(),
            cert,
        ),
        Err(e) => {
            let mut r = AxiomReport::new();
            r.push(AxiomEntry::partial(
                "testable-closed-family",
                &format!("{}", e),
            ));
            (Vec::new(), r)
        }
    };
    Section::Ortho {
        testable_complement: testable_complement_pairs,
        extended_complement: extended,
        extension,
        perp,
        omp: check_omp(sys, limits),
        biorthogonal: check_biorthogonal(sys, limits),
        testable_closed_family: family_members,
        family_complement,
        join_decomposition: check_join_decomposition(sys, limits),
    }
}

pub fn section_certify(
    sys: &StatePropertySystem,
    limits: &Limits,
    kinds: &[StructureKind],
) -> Section {
    Section::Certify {
        certificates: kinds.iter().map(|&k| certify(sys, k, limits)).collect(),
    }
}

pub fn all_structures() -> Vec<StructureKind> {
    vec![
        StructureKind::MackeyLattice,
        StructureKind::MackeyGeometry,
        StructureKind::IntersectionLattice,
        StructureKind::RegularMackey,
        StructureKind::Orthogeometry,
        StructureKind::Ortholattice,
        StructureKind::Orthosystem,
    ]
}

/// Every axiom entry in a section, for verdict summaries and witness
/// re-checks.
pub fn section_entries(section: &Section) -> Vec<&AxiomEntry> {
    let mut out: Vec<&AxiomEntry> = Vec::new();
    match section {
        Section::Validate {
            defining,
            axiom_a,
            axiom_b,
            axiom_c,
            table,
            atoms,
            ..
        } => {
            out.extend(&defining.entries);
            out.push(axiom_a);
            out.push(axiom_b);
            out.push(axiom_c);
            out.extend(&table.entries);
            out.extend(&atoms.entries);
        }
        Section::Closures { laws, .. } => out.extend(&laws.entries),
        Section::Close { .. } => {}
        Section::Geometry {
            point_axioms,
            span_laws,
            lattice_laws,
            irreducible,
            ..
        } => {
            out.extend(&point_axioms.entries);
            out.extend(&span_laws.entries);
            out.extend(&lattice_laws.entries);
            out.push(irreducible);
        }
        Section::Axioms {
            msp,
            exchange,
            sp,
            span_hull,
        } => {
            out.extend(msp.iter());
            out.push(exchange);
            out.push(sp);
            out.extend(&span_hull.entries);
        }
        Section::Sectors {
            certificate,
            clopen,
            ..
        } => {
            out.extend(&certificate.entries);
            out.extend(&clopen.entries);
        }
        Section::Classical {
            extent_map,
            clopen,
            equality,
            ..
        } => {
            out.extend(&extent_map.entries);
            out.extend(&clopen.entries);
            out.extend(&equality.entries);
        }
        Section::Ortho {
            extension,
            omp,
            biorthogonal,
            family_complement,
            join_decomposition,
            ..
        } => {
            out.extend(&extension.entries);
            out.extend(&omp.entries);
            out.extend(&biorthogonal.entries);
            out.extend(&family_complement.entries);
            out.extend(&join_decomposition.entries);
        }
        Section::Certify { certificates } => {
            for cert in certificates {
                out.extend(&cert.axioms.entries);
            }
        }
    }
    out
}

pub fn to_json(report: &RunReport) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("reports serialize");
    text.push('\n');
    text
}

fn verdict_tag(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "pass",
        Verdict::Fails => "FAIL",
        Verdict::PreconditionUnmet => "unmet",
        Verdict::Partial => "partial",
    }
}

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::States { states } => format!("states [{}]", states.join(", ")),
        Witness::Props { props } => format!("properties [{}]", props.join(", ")),
        Witness::StateProp { state, prop } => format!("state {}, property {}", state, prop),
        Witness::Subsets {
            subsets,
            states,
            props,
        } => {
            let mut parts = Vec::new();
            for s in subsets {
                parts.push(format!("{{{}}}", s.join(",")));
            }
            if !states.is_empty() {
                parts.push(format!("states [{}]", states.join(", ")));
            }
            if !props.is_empty() {
                parts.push(format!("properties [{}]", props.join(", ")));
            }
            parts.join("; ")
        }
        Witness::Msp { s, p, s1, s2 } => format!(
            "set {{{}}}, minimal superposition {}, split {{{}}} | {{{}}}",
            s.join(","),
            p,
            s1.join(","),
            s2.join(",")
        ),
        Witness::Text { text } => text.clone(),
    }
}

fn render_entry(out: &mut String, entry: &AxiomEntry) {
    out.push_str(&format!(
        "  [{:>7}] {}",
        verdict_tag(entry.verdict),
        entry.axiom
    ));
    if let Some(w) = &entry.witness {
        out.push_str(&format!(" — witness: {}", witness_text(w)));
    }
    if let Some(n) = &entry.note {
        out.push_str(&format!(" ({})", n));
    }
    out.push('\n');
}

fn render_report(out: &mut String, title: &str, report: &AxiomReport) {
    if report.entries.is_empty() {
        return;
    }
    out.push_str(&format!(" {}:\n", title));
    for entry in &report.entries {
        render_entry(out, entry);
    }
}

fn set_list(sets: &[Vec<String>]) -> String {
    sets.iter()
        .map(|s| format!("{{{}}}", s.join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn to_text(report: &RunReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{} v{} — {} — instance {} ({} states, {} properties)\n",
        report.schema,
        report.tool_version,
        report.command,
        report.instance.digest,
        report.instance.states,
        report.instance.properties
    ));
    for section in &report.sections {
        match section {
            Section::Validate {
                defining,
                axiom_a,
                axiom_b,
                axiom_c,
                table,
                atoms,
                state_preorder,
            } => {
                out.push_str("== validate ==\n");
                render_report(&mut out, "defining axioms", defining);
                out.push_str(" named axioms:\n");
                for e in [axiom_a, axiom_b, axiom_c] {
                    render_entry(&mut out, e);
                }
                render_report(&mut out, "probability table", table);
                render_report(&mut out, "atoms", atoms);
                if !state_preorder.is_empty() {
                    out.push_str(" state pre-order (below < above):\n");
                    for (below, above) in state_preorder {
                        out.push_str(&format!("  {} < {}\n", below, above));
                    }
                }
            }
            Section::Closures { families, laws } => {
                out.push_str("== closures ==\n");
                for f in families {
                    out.push_str(&format!(
                        " family {} ({} members): {}\n",
                        f.kind,
                        f.members.len(),
                        set_list(&f.members)
                    ));
                }
                render_report(&mut out, "laws", laws);
            }
            Section::Close {
                closure,
                input,
                output,
            } => {
                out.push_str(&format!(
                    "== close ==\n {}({{{}}}) = {{{}}}\n",
                    closure,
                    input.join(","),
                    output.join(",")
                ));
            }
            Section::Geometry {
                point_axioms,
                lines,
                span_laws,
                lattice_laws,
                max_independent,
                independent_witness,
                search_exhausted,
                irreducible,
            } => {
                out.push_str("== geometry ==\n");
                render_report(&mut out, "point axioms", point_axioms);
                out.push_str(&format!(" lines: {}\n", set_list(lines)));
                render_report(&mut out, "span laws", span_laws);
                render_report(&mut out, "subspace lattice", lattice_laws);
                out.push_str(&format!(
                    " max independent: {} {{{}}}{}\n",
                    max_independent,
                    independent_witness.join(","),
                    if *search_exhausted {
                        ""
                    } else {
                        " (search truncated)"
                    }
                ));
                render_entry(&mut out, irreducible);
            }
            Section::Axioms {
                msp,
                exchange,
                sp,
                span_hull,
            } => {
                out.push_str("== axioms ==\n");
                for entry in msp {
                    render_entry(&mut out, entry);
                }
                render_entry(&mut out, exchange);
                render_entry(&mut out, sp);
                render_report(&mut out, "span/hull", span_hull);
            }
            Section::Sectors {
                unmet,
                blocks,
                block_sp,
                certificate,
                clopen,
            } => {
                out.push_str("== sectors ==\n");
                if let Some(reason) = unmet {
                    out.push_str(&format!(" precondition-unmet: {}\n", reason));
                } else {
                    out.push_str(&format!(" {} sector(s)\n", blocks.len()));
                    for (block, sp) in blocks.iter().zip(block_sp) {
                        out.push_str(&format!(
                            "  {{{}}} sp={}\n",
                            block.join(","),
                            if *sp { "holds" } else { "fails" }
                        ));
                    }
                    render_report(&mut out, "certificate", certificate);
                    render_report(&mut out, "clopen characterization", clopen);
                }
            }
            Section::Classical {
                classical,
                central,
                extents,
                extent_map,
                clopen,
                equality,
            } => {
                out.push_str("== classical ==\n");
                out.push_str(&format!(" classical: [{}]\n", classical.join(", ")));
                out.push_str(&format!(" central:   [{}]\n", central.join(", ")));
                for (prop, extent) in extents {
                    out.push_str(&format!("  extent({}) = {{{}}}\n", prop, extent.join(",")));
                }
                render_report(&mut out, "extent map", extent_map);
                render_report(&mut out, "clopen extents", clopen);
                render_report(&mut out, "classical = central", equality);
            }
            Section::Ortho {
                testable_complement,
                extended_complement,
                extension,
                perp,
                omp,
                biorthogonal,
                testable_closed_family,
                family_complement,
                join_decomposition,
            } => {
                out.push_str("== ortho ==\n");
                out.push_str(" testable complement:\n");
                for (a, b) in testable_complement {
                    out.push_str(&format!("  comp({}) = {}\n", a, b));
                }
                if let Some(map) = extended_complement {
                    out.push_str(" extended complement:\n");
                    for (a, b) in map {
                        out.push_str(&format!("  comp({}) = {}\n", a, b));
                    }
                }
                render_report(&mut out, "extension", extension);
                out.push_str(&format!(
                    " ⊥ pairs: {}\n",
                    perp.iter()
                        .map(|(a, b)| format!("({},{})", a, b))
                        .collect::<Vec<_>>()
                        .join(" ")
                ));
                render_report(&mut out, "orthomodular poset", omp);
                render_report(&mut out, "biorthogonal closures", biorthogonal);
                if !testable_closed_family.is_empty() {
                    out.push_str(&format!(
                        " testable-closed family ({} members): {}\n",
                        testable_closed_family.len(),
                        set_list(testable_closed_family)
                    ));
                }
                render_report(&mut out, "family complement", family_complement);
                render_report(&mut out, "join decomposition", join_decomposition);
            }
            Section::Certify { certificates } => {
                out.push_str("== certify ==\n");
                for cert in certificates {
                    let tag = match cert.verdict {
                        Verdict::Holds => "holds".to_string(),
                        Verdict::Fails => "FAILS".to_string(),
                        Verdict::PreconditionUnmet => format!(
                            "precondition-unmet: {}",
                            cert.notes.first().cloned().unwrap_or_default()
                        ),
                        Verdict::Partial => "partial".to_string(),
                    };
                    out.push_str(&format!(" {}: {}\n", cert.structure.name(), tag));
                    for entry in &cert.axioms.entries {
                        render_entry(&mut out, entry);
                    }
                    for note in &cert.notes {
                        out.push_str(&format!("  note: {}\n", note));
                    }
                }
            }
        }
    }
    out
}
