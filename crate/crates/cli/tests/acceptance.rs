//! Acceptance suite: every release-gating property, one test per
//! criterion, each printing a single pass/fail line (run with
//! `cargo test -p spslab --test acceptance -- --nocapture` to see them).
//!
//! The corpus is every canonical instance with at most 4 states and 8
//! properties, plus the named fixtures and their disjoint unions. All
//! verdicts are exact: set equality and rational arithmetic, no
//! tolerances.

use spslab::format::digest;
use spslab_core::cartan::{central_elements, check_sector_clopen, classical_elements, sectors};
use spslab_core::closure::{enumerate_family, hull, line, FamilyKind, LineTable};
use spslab_core::generators::{
    disjoint_union, enumerate_instances, fixture, from_vector_space, CorpusBounds, FormSpec,
};
use spslab_core::geometry::build_geometry;
use spslab_core::mackey::{
    check_mackey_lattice, check_ortholattice, check_orthosystem, check_regular, null_points,
};
use spslab_core::oracle;
use spslab_core::probability::{
    check_axiom_b, check_axiom_c, check_biorthogonal, check_omp, effective_perp,
    extend_orthocomplement, mu_valid,
};
use spslab_core::set::subsets_in_witness_order;
use spslab_core::superposition::{check_msp, MspLevel};
use spslab_core::{Limits, StatePropertySystem, Verdict};
use std::process::Command;
use std::sync::OnceLock;
use std::time::Instant;

fn limits() -> Limits {
    Limits::default()
}

struct Pool {
    corpus: Vec<StatePropertySystem>,
    fixtures: Vec<(String, StatePropertySystem)>,
}

impl Pool {
    fn all(&self) -> impl Iterator<Item = &StatePropertySystem> {
        self.corpus
            .iter()
            .chain(self.fixtures.iter().map(|(_, s)| s))
    }

    fn named(&self, name: &str) -> &StatePropertySystem {
        &self.fixtures.iter().find(|(n, _)| n == name).unwrap().1
    }
}

fn pool() -> &'static Pool {
    static POOL: OnceLock<Pool> = OnceLock::new();
    POOL.get_or_init(|| {
        let cbit = fixture("CBIT").unwrap();
        let mo2 = fixture("MO2").unwrap();
        let mut fixtures: Vec<(String, StatePropertySystem)> =
            ["CBIT", "CTRIT", "MO2", "FANO", "LINE3"]
                .iter()
                .map(|n| (n.to_string(), fixture(n).unwrap()))
                .collect();
        fixtures.push(("CBIT+CBIT".into(), disjoint_union(&[&cbit, &cbit]).unwrap()));
        fixtures.push(("MO2+CBIT".into(), disjoint_union(&[&mo2, &cbit]).unwrap()));
        Pool {
            corpus: enumerate_instances(&CorpusBounds::default()),
            fixtures,
        }
    })
}

fn criterion(n: usize, label: &str, run: impl FnOnce() -> Result<String, String>) {
    match run() {
        Ok(detail) => println!("criterion {:2} ({}): PASS — {}", n, label, detail),
        Err(msg) => {
            println!("criterion {:2} ({}): FAIL — {}", n, label, msg);
            panic!("criterion {} ({}) failed: {}", n, label, msg);
        }
    }
}

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

fn supports_abc(sys: &StatePropertySystem) -> bool {
    sys.axiom_a_holds()
        && mu_valid(sys, &limits())
        && check_axiom_b(sys, &limits()).verdict.holds()
        && check_axiom_c(sys, &limits()).verdict.holds()
}

#[test]
fn criterion_01_projective_geometry_from_superposition_axioms() {
    criterion(1, "point axioms from distinguishability and 3-MSP", || {
        let start = Instant::now();
        let mut qualifying = 0;
        for sys in pool().all() {
            if sys.axiom_a_holds() && check_msp(sys, MspLevel::N(3), &limits()).holds() {
                qualifying += 1;
                let (_, report) = build_geometry(sys);
                ensure!(
                    report.all_hold(),
                    "point axioms fail on a qualifying instance: {:?}",
                    report.failures().next()
                );
            }
        }
        let elapsed = start.elapsed();
        // four corpus instances qualify at these bounds, plus the fixtures
        ensure!(qualifying >= 11, "only {} qualifying instances", qualifying);
        ensure!(elapsed.as_secs() < 300, "sweep took {:?}", elapsed);
        Ok(format!(
            "{} qualifying instances of {} checked in {:?}, zero counterexamples",
            qualifying,
            pool().corpus.len() + pool().fixtures.len(),
            elapsed
        ))
    });
}

#[test]
fn criterion_02_spans_equal_hulls_under_msp() {
    criterion(2, "span/hull equalities at the MSP levels", || {
        let mut finite_checked = 0;
        let mut triple_checked = 0;
        for sys in pool().all() {
            if !sys.axiom_a_holds() {
                continue;
            }
            let lines = LineTable::build(sys);
            let n = sys.n_states();
            if check_msp(sys, MspLevel::Finite, &limits()).holds() {
                finite_checked += 1;
                for s in subsets_in_witness_order(n) {
                    ensure!(
                        lines.span(s) == hull(sys, s),
                        "span != hull on a finite-MSP instance at {:?}",
                        sys.set_names(s)
                    );
                }
            }
            if check_msp(sys, MspLevel::N(3), &limits()).holds() {
                triple_checked += 1;
                for s in subsets_in_witness_order(n).filter(|s| s.len() <= 3) {
                    ensure!(
                        lines.span(s) == hull(sys, s),
                        "triple span != hull on a 3-MSP instance at {:?}",
                        sys.set_names(s)
                    );
                }
            }
        }
        ensure!(
            finite_checked >= 11,
            "only {} instances with f-MSP",
            finite_checked
        );
        Ok(format!(
            "exact set equality on {} f-MSP and {} 3-MSP instances",
            finite_checked, triple_checked
        ))
    });
}

#[test]
fn criterion_03_tables_give_orthomodular_posets() {
    criterion(
        3,
        "unique involutive complement and the orthomodular law",
        || {
            let mut checked = 0;
            for sys in pool().all() {
                if mu_valid(sys, &limits()) {
                    checked += 1;
                    let report = check_omp(sys, &limits());
                    ensure!(
                        report.all_hold(),
                        "poset certificate fails: {:?}",
                        report.failures().next()
                    );
                }
            }
            for name in ["CBIT", "MO2"] {
                let sys = pool().named(name);
                ensure!(mu_valid(sys, &limits()), "{} table must be valid", name);
                ensure!(
                    check_omp(sys, &limits()).all_hold(),
                    "{} certificate must hold",
                    name
                );
            }
            Ok(format!(
                "exact rational verdicts on {} instances with valid tables",
                checked
            ))
        },
    );
}

#[test]
fn criterion_04_complement_extends_to_the_whole_lattice() {
    criterion(
        4,
        "extended complement and its extent compatibility",
        || {
            let mut checked = 0;
            for sys in pool().all() {
                if !supports_abc(sys) {
                    continue;
                }
                checked += 1;
                let (map, report) = extend_orthocomplement(sys, &limits());
                ensure!(map.is_some() && report.all_hold(), "extension fails");
                ensure!(
                    sys.check_atoms_and_atomisticity().all_hold(),
                    "lattice not atomistic under the support axioms"
                );
                // extents intertwine the complement with the state perp
                let extent_report = spslab_core::cartan::check_extent_map(sys, &limits());
                ensure!(
                    extent_report.holds("extent-complement"),
                    "extent of the complement differs from the perp of the extent"
                );
            }
            ensure!(
                checked >= 5,
                "only {} instances with the support axioms",
                checked
            );
            Ok(format!(
                "extension certified on {} qualifying instances",
                checked
            ))
        },
    );
}

#[test]
fn criterion_05_biorthogonal_closures_coincide() {
    criterion(5, "hull, testable hull and double perp agree", || {
        let mut checked = 0;
        for sys in pool().all() {
            if !supports_abc(sys) {
                continue;
            }
            checked += 1;
            ensure!(
                sys.n_states() <= 10,
                "fixture too large for the exhaustive sweep"
            );
            let report = check_biorthogonal(sys, &limits());
            ensure!(
                report.all_hold(),
                "biorthogonal identities fail: {:?}",
                report.failures().next()
            );
        }
        Ok(format!(
            "all subsets of {} qualifying instances, exact equality",
            checked
        ))
    });
}

#[test]
fn criterion_06_sector_decomposition() {
    criterion(6, "sectors partition into span-clopen blocks", || {
        for sys in pool().all() {
            if sys.axiom_a_holds() && check_msp(sys, MspLevel::N(3), &limits()).holds() {
                let (decomp, cert) = sectors(sys, &limits()).map_err(|e| e.to_string())?;
                ensure!(
                    cert.all_hold(),
                    "sector certificate fails: {:?}",
                    cert.failures().next()
                );
                let clopen = check_sector_clopen(sys, &limits()).map_err(|e| e.to_string())?;
                ensure!(clopen.all_hold(), "clopen characterization fails");
                ensure!(!decomp.blocks.is_empty(), "no blocks");
            }
        }
        let expected = [("CBIT", 2usize), ("MO2", 1), ("FANO", 1), ("CBIT+CBIT", 4)];
        let mut counts = Vec::new();
        for (name, want) in expected {
            let sys = pool().named(name);
            let (decomp, _) = sectors(sys, &limits()).map_err(|e| e.to_string())?;
            ensure!(
                decomp.blocks.len() == want,
                "{} has {} sectors, expected {}",
                name,
                decomp.blocks.len(),
                want
            );
            counts.push(format!("{}→{}", name, want));
        }
        Ok(counts.join(", "))
    });
}

#[test]
fn criterion_07_classical_equals_central() {
    criterion(7, "classical properties are the central elements", || {
        let mut checked = 0;
        for sys in pool().all() {
            if supports_abc(sys) {
                checked += 1;
                ensure!(
                    classical_elements(sys) == central_elements(sys),
                    "classical and central sets differ"
                );
            }
        }
        let cbit = pool().named("CBIT");
        ensure!(
            classical_elements(cbit).len() == 4,
            "CBIT must have 4 classical elements"
        );
        let mo2 = pool().named("MO2");
        let lat = mo2.lattice();
        ensure!(
            classical_elements(mo2) == vec![lat.bottom(), lat.top()],
            "MO2 classical set must be the bounds"
        );
        Ok(format!(
            "equality on {} qualifying instances; CBIT→4, MO2→{{0,I}}",
            checked
        ))
    });
}

#[test]
fn criterion_08_mackey_orthosystem_regular() {
    criterion(
        8,
        "Mackey lattice, orthosystem and regularity certificates",
        || {
            // named instances
            for name in ["MO2", "LINE3"] {
                let sys = pool().named(name);
                ensure!(
                    check_mackey_lattice(sys, &limits()).holds(),
                    "{} mackey fails",
                    name
                );
                ensure!(
                    check_regular(sys, &limits()).holds(),
                    "{} regularity fails",
                    name
                );
                ensure!(
                    check_orthosystem(sys, &limits()).holds(),
                    "{} orthosystem fails",
                    name
                );
            }
            let fano = pool().named("FANO");
            ensure!(
                check_mackey_lattice(fano, &limits()).holds(),
                "FANO mackey fails"
            );
            ensure!(
                check_regular(fano, &limits()).holds(),
                "FANO regularity fails"
            );
            let caveat = check_orthosystem(fano, &limits());
            ensure!(
                caveat.verdict == Verdict::PreconditionUnmet
                    && caveat.notes.iter().any(|n| n.contains("no ⊥ relation")),
                "FANO orthosystem must report the degenerate-table caveat"
            );
            // qualifying corpus instances
            let mut qualifying = 0;
            for sys in pool().all() {
                if supports_abc(sys) && check_msp(sys, MspLevel::N(3), &limits()).holds() {
                    qualifying += 1;
                    ensure!(check_mackey_lattice(sys, &limits()).holds(), "mackey fails");
                    ensure!(check_regular(sys, &limits()).holds(), "regularity fails");
                    ensure!(
                        check_orthosystem(sys, &limits()).holds(),
                        "orthosystem fails"
                    );
                }
            }
            // wherever an orthogonality relation is in force, the double perp is
            // the hull on every span-closed set
            let mut perp_checked = 0;
            for sys in pool().all() {
                if effective_perp(sys).iter().any(|r| !r.is_empty()) {
                    let cert = check_ortholattice(sys, &limits());
                    if cert.verdict != Verdict::PreconditionUnmet {
                        ensure!(
                            cert.axioms.holds("biorthogonal-is-hull"),
                            "double perp differs from the hull"
                        );
                        perp_checked += 1;
                    }
                }
            }
            ensure!(
                perp_checked >= 4,
                "only {} instances with a ⊥ relation",
                perp_checked
            );
            Ok(format!(
            "MO2, FANO (caveat reported), LINE3, {} qualifying corpus instances; double perp = hull on {} instances",
            qualifying, perp_checked
        ))
        },
    );
}

#[test]
fn criterion_09_vector_space_models() {
    criterion(9, "forward checks of the GF(q) models", || {
        let fano = pool().named("FANO");
        let pg23 = from_vector_space(2, 3, None).map_err(|e| e.to_string())?;
        ensure!(
            digest(&pg23) == digest(fano),
            "PG(2,3) does not reproduce the FANO fixture"
        );

        let line3 =
            from_vector_space(3, 2, Some(&FormSpec::identity(2))).map_err(|e| e.to_string())?;
        let og = spslab_core::mackey::check_orthogeometry(&line3, &limits());
        ensure!(
            og.holds(),
            "GF(3)² with the dot form must be an orthogeometry"
        );
        ensure!(
            null_points(&line3).is_empty(),
            "GF(3)² dot form must be anisotropic"
        );

        let pg23f =
            from_vector_space(2, 3, Some(&FormSpec::identity(3))).map_err(|e| e.to_string())?;
        let og = spslab_core::mackey::check_orthogeometry(&pg23f, &limits());
        ensure!(
            og.holds(),
            "GF(2)³ with the dot form must still satisfy the axioms"
        );
        let nulls = pg23f.set_names(null_points(&pg23f));
        ensure!(
            nulls.contains(&"110".to_string()),
            "the null ray 110 must be listed, got {:?}",
            nulls
        );
        ensure!(
            og.notes
                .iter()
                .any(|n| n.contains("non-pure") && n.contains("110")),
            "the certificate must flag non-purity with the null ray"
        );
        Ok(format!(
            "digest {}… matches; GF(3)² pure; GF(2)³ non-pure with nulls {:?}",
            &digest(fano)[..8],
            nulls
        ))
    });
}

#[test]
fn criterion_10_oracle_equivalence_and_determinism() {
    criterion(
        10,
        "definitional oracle agreement and byte-identical runs",
        || {
            for sys in pool().all() {
                let lines = LineTable::build(sys);
                for p in sys.states() {
                    for q in sys.states() {
                        ensure!(
                            line(sys, p, q) == oracle::line(sys, p, q),
                            "line oracle mismatch"
                        );
                    }
                }
                for s in subsets_in_witness_order(sys.n_states()) {
                    ensure!(
                        lines.span(s) == oracle::span(sys, s),
                        "span oracle mismatch"
                    );
                    ensure!(hull(sys, s) == oracle::hull(sys, s), "hull oracle mismatch");
                }
                let fam = enumerate_family(sys, FamilyKind::Subspaces, &limits())
                    .map_err(|e| e.to_string())?;
                ensure!(
                    fam.members == oracle::span_closed_family(sys),
                    "family oracle mismatch"
                );
                ensure!(
                    classical_elements(sys) == oracle::classical_elements(sys),
                    "classical oracle mismatch"
                );
                if sys.axiom_a_holds() && check_msp(sys, MspLevel::N(3), &limits()).holds() {
                    let (decomp, _) = sectors(sys, &limits()).map_err(|e| e.to_string())?;
                    ensure!(
                        decomp.blocks == oracle::sector_blocks(sys),
                        "sector oracle mismatch"
                    );
                }
            }

            // two runs of any command on the same input are byte-identical
            let dir =
                std::env::temp_dir().join(format!("spslab-acceptance-{}", std::process::id()));
            std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
            let mo2 = dir.join("mo2.json");
            std::fs::write(&mo2, spslab::format::emit_instance(pool().named("MO2")))
                .map_err(|e| e.to_string())?;
            for args in [
                vec!["report", mo2.to_str().unwrap(), "--all", "--format", "json"],
                vec!["report", mo2.to_str().unwrap(), "--all", "--format", "text"],
                vec!["validate", mo2.to_str().unwrap(), "--format", "json"],
                vec!["generate", "--enumerate", "3", "8"],
            ] {
                let run = |_: usize| {
                    Command::new(env!("CARGO_BIN_EXE_spslab"))
                        .args(&args)
                        .env_remove("SPSLAB_BUDGET")
                        .output()
                        .expect("binary runs")
                };
                let (one, two) = (run(1), run(2));
                ensure!(one.status.success(), "command failed: {:?}", args);
                ensure!(one.stdout == two.stdout, "output drifted for {:?}", args);
            }
            Ok(format!(
                "oracle parity on {} instances; repeated CLI runs byte-identical",
                pool().corpus.len() + pool().fixtures.len()
            ))
        },
    );
}
