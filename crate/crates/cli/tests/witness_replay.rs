//! Every failing entry the tool emits must carry a witness, and replaying
//! that witness against the same instance must reproduce the violation.

use spslab::run::{
    section_axioms, section_certify, section_classical, section_geometry, section_ortho,
    section_sectors, section_validate, Section,
};
use spslab::witness::{reevaluate, Recheck};
use spslab_core::generators::fixture;
use spslab_core::rational::Ratio;
use spslab_core::report::StructureKind;
use spslab_core::superposition::MspLevel;
use spslab_core::{Limits, StatePropertySystem, SystemBuilder, Verdict};

fn broken_instances() -> Vec<(&'static str, StatePropertySystem)> {
    let mut out: Vec<(&'static str, StatePropertySystem)> = Vec::new();

    // bottom actual in one state
    out.push((
        "bottom-actual",
        SystemBuilder {
            states: vec!["p".into(), "q".into()],
            properties: vec!["0".into(), "I".into()],
            leq: vec![("0".into(), "I".into())],
            bottom: "0".into(),
            top: "I".into(),
            actual: vec![
                ("p".into(), vec!["I".into(), "0".into()]),
                ("q".into(), vec!["I".into()]),
            ],
            testable: None,
            mu: vec![],
            perp: None,
        }
        .build()
        .unwrap(),
    ));

    // actuality set skips an element above its meet
    out.push((
        "upset-gap",
        SystemBuilder {
            states: vec!["p".into(), "q".into()],
            properties: vec!["0".into(), "a".into(), "b".into(), "I".into()],
            leq: vec![
                ("0".into(), "a".into()),
                ("a".into(), "b".into()),
                ("b".into(), "I".into()),
            ],
            bottom: "0".into(),
            top: "I".into(),
            actual: vec![
                ("p".into(), vec!["a".into(), "I".into()]),
                ("q".into(), vec!["b".into(), "I".into()]),
            ],
            testable: None,
            mu: vec![],
            perp: None,
        }
        .build()
        .unwrap(),
    ));

    // nested actuality sets on a chain: distinguishability fails
    out.push((
        "nested",
        SystemBuilder {
            states: vec!["p".into(), "q".into()],
            properties: vec!["0".into(), "a".into(), "I".into()],
            leq: vec![("0".into(), "a".into()), ("a".into(), "I".into())],
            bottom: "0".into(),
            top: "I".into(),
            actual: vec![
                ("p".into(), vec!["I".into()]),
                ("q".into(), vec!["a".into(), "I".into()]),
            ],
            testable: None,
            mu: vec![],
            perp: None,
        }
        .build()
        .unwrap(),
    ));

    // a one-way superposition: the exchange property and 2-MSP fail
    out.push((
        "one-way",
        SystemBuilder {
            states: vec!["p".into(), "q".into(), "r".into()],
            properties: vec![
                "0".into(),
                "P".into(),
                "Q".into(),
                "R".into(),
                "QR".into(),
                "I".into(),
            ],
            leq: vec![
                ("0".into(), "P".into()),
                ("0".into(), "Q".into()),
                ("0".into(), "R".into()),
                ("Q".into(), "QR".into()),
                ("R".into(), "QR".into()),
                ("P".into(), "I".into()),
                ("QR".into(), "I".into()),
            ],
            bottom: "0".into(),
            top: "I".into(),
            actual: vec![
                ("p".into(), vec!["P".into(), "I".into()]),
                ("q".into(), vec!["Q".into(), "QR".into(), "I".into()]),
                ("r".into(), vec!["R".into(), "QR".into(), "I".into()]),
            ],
            testable: None,
            mu: vec![],
            perp: None,
        }
        .build()
        .unwrap(),
    ));

    // the distinguishable two-state system: the superposition principle fails
    out.push(("cbit", fixture("CBIT").unwrap()));

    // a table certain off the actuality set: Oi fails
    let mut mu = Vec::new();
    for (state, ones) in [("p", ["a", "I"]), ("q", ["a'", "I"])] {
        for prop in ["0", "a", "a'", "I"] {
            let v = if ones.contains(&prop) {
                Ratio::ONE
            } else {
                Ratio::ZERO
            };
            mu.push((state.to_string(), prop.to_string(), v));
        }
    }
    for entry in mu.iter_mut() {
        if entry.0 == "q" && entry.1 == "a" {
            entry.2 = Ratio::ONE;
        }
    }
    out.push((
        "certain-off-actual",
        SystemBuilder {
            states: vec!["p".into(), "q".into()],
            properties: vec!["0".into(), "a".into(), "a'".into(), "I".into()],
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
            testable: Some(vec!["0".into(), "a".into(), "a'".into(), "I".into()]),
            mu,
            perp: None,
        }
        .build()
        .unwrap(),
    ));

    // an explicit orthogonality that starves the geometry axioms
    let mo2 = fixture("MO2").unwrap();
    let mut builder = spslab::format::parse_instance(&spslab::format::emit_instance(&mo2)).unwrap();
    builder.perp = Some(vec![("p".into(), "q".into())]);
    out.push(("starved-perp", builder.build().unwrap()));

    out
}

#[test]
fn every_failing_entry_has_a_witness_that_replays() {
    let limits = Limits::default();
    let mut replayed = 0usize;
    let mut unsupported = 0usize;
    let mut seen_axioms: Vec<String> = Vec::new();
    for (name, sys) in broken_instances() {
        let mut sections: Vec<Section> = vec![
            section_validate(&sys, &limits),
            section_axioms(
                &sys,
                &limits,
                &[MspLevel::N(2), MspLevel::N(3), MspLevel::Finite],
            ),
            section_ortho(&sys, &limits),
            section_classical(&sys, &limits),
            section_sectors(&sys, &limits),
            section_certify(&sys, &limits, &[StructureKind::Orthogeometry]),
        ];
        let (_, geometry) = spslab::run::section_geometry(&sys, &limits);
        sections.push(geometry);
        for section in &sections {
            for entry in spslab::run::section_entries(section) {
                if entry.verdict != Verdict::Fails {
                    continue;
                }
                let witness = entry
                    .witness
                    .as_ref()
                    .unwrap_or_else(|| panic!("{}: {} fails without a witness", name, entry.axiom));
                match reevaluate(&sys, &entry.axiom, witness) {
                    Recheck::Violates => {
                        replayed += 1;
                        if !seen_axioms.contains(&entry.axiom) {
                            seen_axioms.push(entry.axiom.clone());
                        }
                    }
                    Recheck::Unsupported => unsupported += 1,
                    Recheck::NoViolation => panic!(
                        "{}: witness for {} does not replay: {:?}",
                        name, entry.axiom, witness
                    ),
                }
            }
        }
    }
    // the battery must exercise a spread of axioms, not just one
    for expected in [
        "bottom-not-actual",
        "A",
        "SP",
        "2-MSP-exchange",
        "2-MSP",
        "Oi",
        "O3",
    ] {
        assert!(
            seen_axioms.iter().any(|a| a == expected),
            "battery never replayed {}; saw {:?}",
            expected,
            seen_axioms
        );
    }
    assert!(replayed >= 10, "only {} replayed violations", replayed);
    println!(
        "replayed {} violations across {:?} ({} unsupported)",
        replayed, seen_axioms, unsupported
    );
}
