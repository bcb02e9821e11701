//! End-to-end tests of the binary: exit codes, determinism, round trips.

use std::path::PathBuf;
use std::process::{Command, Output};

fn spslab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spslab"))
        .args(args)
        .env_remove("SPSLAB_BUDGET")
        .output()
        .expect("binary runs")
}

fn write_temp(name: &str, content: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("spslab-test-{}-{}", std::process::id(), name));
    std::fs::write(&path, content).unwrap();
    path
}

fn generate(args: &[&str]) -> String {
    let out = spslab(args);
    assert!(out.status.success(), "{:?}", out);
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn parse_errors_exit_2() {
    let path = write_temp(
        "nobottom.json",
        r#"{"states":["p"],"properties":["0","I"],"leq":[["0","I"]],"top":"I","actual":{"p":["I"]}}"#,
    );
    let out = spslab(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("bottom"), "{}", stderr);

    let path = write_temp(
        "badmu.json",
        r#"{"states":["p","q"],"properties":["0","a","b","I"],
            "leq":[["0","a"],["0","b"],["a","I"],["b","I"]],
            "bottom":"0","top":"I",
            "actual":{"p":["a","I"],"q":["b","I"]},
            "testable":["0","a","b","I"],
            "mu":[{"state":"p","property":"a","value":1.1}]}"#,
    );
    let out = spslab(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("probability out of range"));

    let out = spslab(&["validate", "/nonexistent/instance.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn structural_errors_exit_1() {
    let path = write_temp(
        "ghost.json",
        r#"{"states":["p"],"properties":["0","I"],"leq":[["0","I"]],
            "bottom":"0","top":"I","actual":{"p":["I","ghost"]}}"#,
    );
    let out = spslab(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("unknown property"));
}

#[test]
fn axiom_failures_still_exit_0_on_validate_but_block_analysis() {
    // bottom actual in one state: a defining-axiom failure, not structural
    let path = write_temp(
        "zeroactual.json",
        r#"{"states":["p","q"],"properties":["0","I"],"leq":[["0","I"]],
            "bottom":"0","top":"I","actual":{"p":["I","0"],"q":["I"]}}"#,
    );
    let out = spslab(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[   FAIL] bottom-not-actual"));

    let out = spslab(&["sectors", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn budget_aborts_exit_3() {
    let fano = write_temp("fano.json", &generate(&["generate", "--fixture", "FANO"]));
    let out = spslab(&[
        "close",
        fano.to_str().unwrap(),
        "--family",
        "subspaces",
        "--budget",
        "8",
    ]);
    assert_eq!(out.status.code(), Some(3));

    // the environment default is used when the flag is absent
    let out = Command::new(env!("CARGO_BIN_EXE_spslab"))
        .args(["close", fano.to_str().unwrap(), "--family", "subspaces"])
        .env("SPSLAB_BUDGET", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let mo2 = write_temp("mo2.json", &generate(&["generate", "--fixture", "MO2"]));
    for format in ["json", "text"] {
        let one = spslab(&["report", mo2.to_str().unwrap(), "--all", "--format", format]);
        let two = spslab(&["report", mo2.to_str().unwrap(), "--all", "--format", format]);
        assert!(one.status.success());
        assert_eq!(one.stdout, two.stdout, "{} output drifted", format);
    }
}

#[test]
fn generate_validate_round_trip_with_expected_profiles() {
    // (fixture, axiom B verdict, axiom C verdict): the vector-space models
    // carry no table, so their ray supports are not testable
    let expected = [
        ("CBIT", "pass", "pass"),
        ("CTRIT", "pass", "pass"),
        ("MO2", "pass", "pass"),
        ("FANO", "FAIL", "unmet"),
        ("LINE3", "FAIL", "unmet"),
    ];
    for (fixture, b, c) in expected {
        let doc = generate(&["generate", "--fixture", fixture]);
        let path = write_temp(&format!("{}.json", fixture), &doc);
        let out = spslab(&["validate", path.to_str().unwrap(), "--format", "json"]);
        assert_eq!(out.status.code(), Some(0), "{} failed", fixture);
        let report: serde_json::Value =
            serde_json::from_slice(&out.stdout).expect("reports are JSON");
        let section = &report["sections"][0];
        for entry in section["defining"]["entries"].as_array().unwrap() {
            assert_eq!(entry["verdict"], "holds", "{}: {:?}", fixture, entry);
        }
        assert_eq!(section["axiom-a"]["verdict"], "holds", "{}", fixture);
        let verdict = |v: &str| match v {
            "pass" => "holds",
            "FAIL" => "fails",
            _ => "precondition-unmet",
        };
        assert_eq!(
            section["axiom-b"]["verdict"],
            verdict(b),
            "{} axiom B",
            fixture
        );
        assert_eq!(
            section["axiom-c"]["verdict"],
            verdict(c),
            "{} axiom C",
            fixture
        );
    }
}

#[test]
fn enumerate_emits_parseable_instances() {
    let stream = generate(&["generate", "--enumerate", "3", "8"]);
    let lines: Vec<&str> = stream.lines().collect();
    assert_eq!(lines.len(), 18);
    for line in lines {
        let path = write_temp("corpus-item.json", line);
        let out = spslab(&["validate", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
}

#[test]
fn check_witness_replays_and_rejects_mismatches() {
    let cbit = write_temp("cbit.json", &generate(&["generate", "--fixture", "CBIT"]));
    let report = generate(&["axioms", cbit.to_str().unwrap(), "--format", "json"]);
    let report_path = write_temp("cbit-axioms.json", &report);

    let out = spslab(&[
        "check-witness",
        cbit.to_str().unwrap(),
        report_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("SP: violates"), "{}", text);

    // the report names a different instance: digest mismatch
    let mo2 = write_temp("mo2b.json", &generate(&["generate", "--fixture", "MO2"]));
    let out = spslab(&[
        "check-witness",
        mo2.to_str().unwrap(),
        report_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));

    // a doctored witness no longer violates: stale, exit 1
    let mut doc: serde_json::Value = serde_json::from_str(&report).unwrap();
    let entry = doc["sections"][0]["sp"]["witness"]["states"]
        .as_array_mut()
        .unwrap();
    assert_eq!(entry.len(), 2);
    entry[1] = entry[0].clone();
    let doctored_path = write_temp("doctored.json", &serde_json::to_string(&doc).unwrap());
    let out = spslab(&[
        "check-witness",
        cbit.to_str().unwrap(),
        doctored_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1), "doctored witness must be stale");
}

#[test]
fn dot_outputs_are_written() {
    let fano = write_temp(
        "fano-dot.json",
        &generate(&["generate", "--fixture", "FANO"]),
    );
    let target = std::env::temp_dir().join(format!("spslab-test-{}-fano.dot", std::process::id()));
    let out = spslab(&[
        "geometry",
        fano.to_str().unwrap(),
        "--dot",
        target.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let dot = std::fs::read_to_string(&target).unwrap();
    assert!(dot.starts_with("graph incidence {"));
    // seven points and seven lines in the plane over GF(2)
    assert_eq!(dot.matches("[shape=box").count(), 7);
}

#[test]
fn pg_generation_matches_the_fixture() {
    let fano = generate(&["generate", "--fixture", "FANO"]);
    let pg = generate(&["generate", "--pg", "2", "3"]);
    assert_eq!(fano, pg);
}

#[test]
fn certify_reports_the_missing_orthogonality_caveat() {
    let fano = write_temp(
        "fano-cert.json",
        &generate(&["generate", "--fixture", "FANO"]),
    );
    let out = spslab(&["report", fano.to_str().unwrap(), "--certify", "orthosystem"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("precondition-unmet: no ⊥ relation"),
        "{}",
        text
    );
}

#[test]
fn dot_format_renders_diagrams() {
    let cbit = write_temp(
        "cbit-dot.json",
        &generate(&["generate", "--fixture", "CBIT"]),
    );
    let out = spslab(&["report", cbit.to_str().unwrap(), "--format", "dot"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .starts_with("digraph order {"));

    let out = spslab(&["geometry", cbit.to_str().unwrap(), "--format", "dot"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .starts_with("graph incidence {"));

    let out = spslab(&["sectors", cbit.to_str().unwrap(), "--format", "dot"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn close_applies_both_closures() {
    let mo2 = write_temp(
        "mo2-close.json",
        &generate(&["generate", "--fixture", "MO2"]),
    );
    let text = generate(&[
        "close",
        mo2.to_str().unwrap(),
        "--op",
        "hull",
        "--set",
        "p,q",
    ]);
    assert!(text.contains("hull({p,q}) = {p,p',q,q'}"), "{}", text);
    let text = generate(&[
        "close",
        mo2.to_str().unwrap(),
        "--op",
        "testable-hull",
        "--set",
        "p",
    ]);
    assert!(text.contains("testable-hull({p}) = {p}"), "{}", text);
    // unknown state names are structural
    let out = spslab(&[
        "close",
        mo2.to_str().unwrap(),
        "--op",
        "span",
        "--set",
        "zz",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn timings_are_opt_in() {
    let cbit = write_temp(
        "cbit-timing.json",
        &generate(&["generate", "--fixture", "CBIT"]),
    );
    let plain = generate(&[
        "report",
        cbit.to_str().unwrap(),
        "--all",
        "--format",
        "json",
    ]);
    assert!(!plain.contains("timings-ms"));
    let timed = generate(&[
        "report",
        cbit.to_str().unwrap(),
        "--all",
        "--format",
        "json",
        "--timings",
    ]);
    assert!(timed.contains("timings-ms"));
}

#[test]
fn union_report_lists_four_sectors() {
    let doc = generate(&["generate", "--union", "CBIT,CBIT"]);
    let path = write_temp("cbit2.json", &doc);
    let out = generate(&["report", path.to_str().unwrap(), "--sectors"]);
    assert!(out.contains("4 sector(s)"), "{}", out);
    for block in ["{0.p}", "{0.q}", "{1.p}", "{1.q}"] {
        assert!(out.contains(block), "missing {}", block);
    }
}

#[test]
fn full_report_carries_every_section() {
    let mo2 = write_temp(
        "mo2-sections.json",
        &generate(&["generate", "--fixture", "MO2"]),
    );
    let text = generate(&["report", mo2.to_str().unwrap(), "--all", "--format", "json"]);
    let report: serde_json::Value = serde_json::from_str(&text).unwrap();
    let kinds: Vec<&str> = report["sections"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["kind"].as_str().unwrap())
        .collect();
    assert_eq!(
        kinds,
        vec![
            "validate",
            "closures",
            "axioms",
            "geometry",
            "sectors",
            "classical",
            "ortho",
            "certify"
        ]
    );
    assert_eq!(report["schema"], "spslab-report/1");
    assert!(report["instance"]["digest"].is_string());
}
