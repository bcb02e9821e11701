//! Command-line front end: load instances, validate, analyze, certify,
//! generate, and re-check failure witnesses.

use clap::{Parser, Subcommand, ValueEnum};
use spslab::format::{digest, emit_instance, load_system};
use spslab::run::{
    all_structures, new_report, section_axioms, section_certify, section_classical,
    section_closures, section_geometry, section_ortho, section_sectors, section_validate, to_json,
    to_text, RunReport, Section,
};
use spslab::witness::{reevaluate, Recheck};
use spslab::CliError;
use spslab_core::closure::{enumerate_family, hull, testable_hull, FamilyKind, LineTable};
use spslab_core::generators::{
    disjoint_union, enumerate_instances, fixture, from_vector_space, CorpusBounds, FormSpec, Sigma,
    FIXTURE_NAMES,
};
use spslab_core::report::StructureKind;
use spslab_core::superposition::MspLevel;
use spslab_core::{Limits, StatePropertySystem, StateSet};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "spslab",
    version,
    about = "Construct, validate and certify finite state property systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Maximum number of subsets an exhaustive pass may enumerate
    /// (default 65536; env SPSLAB_BUDGET)
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Seed for sampled fallbacks; without a seed, oversized passes abort
    /// or report partial instead of sampling
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output format of reports
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Attach per-section timings (breaks byte-for-byte determinism)
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    /// Order or incidence diagram, where the command has one
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Check the defining axioms and the named axiom profile of an instance
    Validate { path: PathBuf },
    /// Run analysis sections and emit a single report
    Report {
        path: PathBuf,
        /// All sections
        #[arg(long)]
        all: bool,
        #[arg(long)]
        closures: bool,
        #[arg(long)]
        geometry: bool,
        #[arg(long)]
        sectors: bool,
        #[arg(long)]
        classical: bool,
        #[arg(long)]
        ortho: bool,
        /// Certify a structure (repeatable); `all` certifies every structure
        #[arg(long)]
        certify: Vec<String>,
    },
    /// Apply a closure to a state set, or enumerate a closed-subset family
    Close {
        path: PathBuf,
        /// Which closure to apply
        #[arg(long, value_enum, default_value_t = ClosureOp::Span)]
        op: ClosureOp,
        /// Comma-separated state names
        #[arg(long, value_delimiter = ',')]
        set: Option<Vec<String>>,
        /// Enumerate a whole family instead
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
        /// Write the family order diagram as DOT
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check the superposition axioms (MSP levels, exchange, SP)
    Axioms {
        path: PathBuf,
        /// MSP level to check: a number or `finite` (repeatable;
        /// default 2, 3 and finite)
        #[arg(long)]
        msp: Vec<String>,
    },
    /// Build the derived geometry and certify the point axioms
    Geometry {
        path: PathBuf,
        /// Write the point-line incidence structure as DOT
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Sector decomposition with per-block verdicts
    Sectors { path: PathBuf },
    /// Classical and central elements with their extents
    Classical { path: PathBuf },
    /// Complement tables and the orthogonality relation
    Ortho { path: PathBuf },
    /// Certify one of the higher structures
    Certify {
        path: PathBuf,
        /// mackey-lattice | mackey-geometry | intersection-lattice |
        /// regular | orthogeometry | ortholattice | orthosystem | all
        #[arg(long)]
        structure: String,
    },
    /// Emit instances in the interchange format
    Generate {
        /// A named fixture
        #[arg(long, value_parser = FIXTURE_NAMES.to_vec())]
        fixture: Option<String>,
        /// Projective space over GF(q)^n: two values, q then n
        #[arg(long, num_args = 2, value_names = ["Q", "N"])]
        pg: Option<Vec<u32>>,
        /// Attach a form to --pg: `identity` or a path to a JSON matrix
        #[arg(long)]
        form: Option<String>,
        /// Disjoint union of fixtures (repeatable, at least two)
        #[arg(long = "union", value_delimiter = ',')]
        union: Option<Vec<String>>,
        /// Enumerate the whole corpus up to the bounds: two values,
        /// max states then max properties
        #[arg(long, num_args = 2, value_names = ["SMAX", "PMAX"])]
        enumerate: Option<Vec<usize>>,
    },
    /// Replay the failure witnesses of a report against an instance
    CheckWitness { instance: PathBuf, report: PathBuf },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClosureOp {
    /// Least span-closed superset
    Span,
    /// All superpositions
    Hull,
    /// Superpositions with respect to the testable properties
    TestableHull,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Subspaces,
    Closed,
    TestableClosed,
}

fn limits_of(cli: &Cli) -> Limits {
    let env_budget = std::env::var("SPSLAB_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok());
    Limits {
        max_subsets: cli
            .budget
            .or(env_budget)
            .unwrap_or(Limits::default().max_subsets),
        seed: cli.seed,
    }
}

fn load_valid(path: &Path) -> Result<StatePropertySystem, CliError> {
    let sys = load_system(path)?;
    if !sys.is_valid() {
        let failing: Vec<String> = sys.validate().failures().map(|e| e.axiom.clone()).collect();
        return Err(CliError::Structural(format!(
            "instance fails the defining axioms [{}]; run `spslab validate` for details",
            failing.join(", ")
        )));
    }
    Ok(sys)
}

fn parse_msp_levels(raw: &[String]) -> Result<Vec<MspLevel>, CliError> {
    if raw.is_empty() {
        return Ok(vec![MspLevel::N(2), MspLevel::N(3), MspLevel::Finite]);
    }
    raw.iter()
        .map(|level| {
            if level == "finite" {
                Ok(MspLevel::Finite)
            } else {
                level
                    .parse::<usize>()
                    .map(MspLevel::N)
                    .map_err(|_| CliError::Parse(format!("bad MSP level: {}", level)))
            }
        })
        .collect()
}

fn parse_state_set(sys: &StatePropertySystem, names: &[String]) -> Result<StateSet, CliError> {
    let mut set = StateSet::EMPTY;
    for name in names {
        match sys.state_index(name) {
            Some(p) => set.insert(p),
            None => return Err(CliError::Structural(format!("unknown state: {}", name))),
        }
    }
    Ok(set)
}

fn structure_kinds(raw: &str) -> Result<Vec<StructureKind>, CliError> {
    if raw == "all" {
        return Ok(all_structures());
    }
    StructureKind::parse(raw)
        .map(|k| vec![k])
        .ok_or_else(|| CliError::Parse(format!("unknown structure: {}", raw)))
}

struct Timer {
    enabled: bool,
    entries: Vec<(String, f64)>,
}

impl Timer {
    fn new(enabled: bool) -> Self {
        Timer {
            enabled,
            entries: Vec::new(),
        }
    }

    fn time<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if self.enabled {
            self.entries
                .push((name.to_string(), start.elapsed().as_secs_f64() * 1e3));
        }
        out
    }

    fn finish(self, report: &mut RunReport) {
        if self.enabled {
            report.timings_ms = Some(self.entries);
        }
    }
}

fn compact_instance_json(sys: &StatePropertySystem) -> String {
    let value: serde_json::Value =
        serde_json::from_str(&emit_instance(sys)).expect("emitted instances parse");
    serde_json::to_string(&value).expect("values serialize")
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let limits = limits_of(cli);
    let emit = |report: &RunReport| match cli.format {
        Format::Json => to_json(report),
        Format::Text | Format::Dot => to_text(report),
    };
    if cli.format == Format::Dot {
        // commands with a natural diagram render it to stdout instead of a
        // report
        match &cli.command {
            Command::Report { path, .. } | Command::Close { path, .. } => {
                let sys = load_valid(path)?;
                let fam = enumerate_family(&sys, FamilyKind::Subspaces, &limits)?;
                return Ok(spslab::dot::family_diagram(&sys, &fam));
            }
            Command::Geometry { path, .. } => {
                let sys = load_valid(path)?;
                let (geo, _) = spslab_core::geometry::build_geometry(&sys);
                return Ok(spslab::dot::incidence_diagram(&sys, &geo));
            }
            _ => {
                return Err(CliError::Parse(
                    "dot output is only available for report, close and geometry".into(),
                ))
            }
        }
    }
    match &cli.command {
        Command::Validate { path } => {
            let sys = load_system(path)?;
            let mut report = new_report(&sys, "validate");
            report.sections.push(section_validate(&sys, &limits));
            Ok(emit(&report))
        }
        Command::Report {
            path,
            all,
            closures,
            geometry,
            sectors,
            classical,
            ortho,
            certify,
        } => {
            let sys = load_valid(path)?;
            let mut report = new_report(&sys, "report");
            let mut timer = Timer::new(cli.timings);
            report
                .sections
                .push(timer.time("validate", || section_validate(&sys, &limits)));
            if *all || *closures {
                let section = timer.time("closures", || section_closures(&sys, &limits))?;
                report.sections.push(section);
            }
            if *all || *geometry {
                report.sections.push(timer.time("axioms", || {
                    section_axioms(
                        &sys,
                        &limits,
                        &parse_msp_levels(&[]).expect("defaults parse"),
                    )
                }));
                let (_, section) = timer.time("geometry", || section_geometry(&sys, &limits));
                report.sections.push(section);
            }
            if *all || *sectors {
                report
                    .sections
                    .push(timer.time("sectors", || section_sectors(&sys, &limits)));
            }
            if *all || *classical {
                report
                    .sections
                    .push(timer.time("classical", || section_classical(&sys, &limits)));
            }
            if *all || *ortho {
                report
                    .sections
                    .push(timer.time("ortho", || section_ortho(&sys, &limits)));
            }
            let kinds: Vec<StructureKind> = if *all && certify.is_empty() {
                all_structures()
            } else {
                let mut kinds = Vec::new();
                for raw in certify {
                    kinds.extend(structure_kinds(raw)?);
                }
                kinds
            };
            if !kinds.is_empty() {
                report
                    .sections
                    .push(timer.time("certify", || section_certify(&sys, &limits, &kinds)));
            }
            timer.finish(&mut report);
            Ok(emit(&report))
        }
        Command::Close {
            path,
            op,
            set,
            family,
            dot,
        } => {
            let sys = load_valid(path)?;
            let mut report = new_report(&sys, "close");
            match (set, family) {
                (Some(names), None) => {
                    let input = parse_state_set(&sys, names)?;
                    let output = match op {
                        ClosureOp::Span => LineTable::build(&sys).span(input),
                        ClosureOp::Hull => hull(&sys, input),
                        ClosureOp::TestableHull => testable_hull(&sys, input),
                    };
                    report.sections.push(Section::Close {
                        closure: match op {
                            ClosureOp::Span => "span".into(),
                            ClosureOp::Hull => "hull".into(),
                            ClosureOp::TestableHull => "testable-hull".into(),
                        },
                        input: sys.set_names(input),
                        output: sys.set_names(output),
                    });
                }
                (None, Some(which)) => {
                    let kind = match which {
                        FamilyArg::Subspaces => FamilyKind::Subspaces,
                        FamilyArg::Closed => FamilyKind::Closed,
                        FamilyArg::TestableClosed => FamilyKind::TestableClosed,
                    };
                    let fam = enumerate_family(&sys, kind, &limits)?;
                    if let Some(target) = dot {
                        std::fs::write(target, spslab::dot::family_diagram(&sys, &fam)).map_err(
                            |e| {
                                CliError::Parse(format!("cannot write {}: {}", target.display(), e))
                            },
                        )?;
                    }
                    report.sections.push(Section::Closures {
                        families: vec![spslab::run::FamilySummary {
                            kind: kind.name().into(),
                            members: fam.members.iter().map(|&m| sys.set_names(m)).collect(),
                        }],
                        laws: spslab_core::closure::check_closure_laws(&sys, &limits),
                    });
                }
                _ => {
                    return Err(CliError::Parse(
                        "close needs exactly one of --set or --family".into(),
                    ))
                }
            }
            Ok(emit(&report))
        }
        Command::Axioms { path, msp } => {
            let sys = load_valid(path)?;
            let levels = parse_msp_levels(msp)?;
            let mut report = new_report(&sys, "axioms");
            report.sections.push(section_axioms(&sys, &limits, &levels));
            Ok(emit(&report))
        }
        Command::Geometry { path, dot } => {
            let sys = load_valid(path)?;
            let mut report = new_report(&sys, "geometry");
            let (geo, section) = section_geometry(&sys, &limits);
            if let Some(target) = dot {
                std::fs::write(target, spslab::dot::incidence_diagram(&sys, &geo)).map_err(
                    |e| CliError::Parse(format!("cannot write {}: {}", target.display(), e)),
                )?;
            }
            report.sections.push(section);
            Ok(emit(&report))
        }
        Command::Sectors { path } => {
            let sys = load_valid(path)?;
            let mut report = new_report(&sys, "sectors");
            report.sections.push(section_sectors(&sys, &limits));
            Ok(emit(&report))
        }
        Command::Classical { path } => {
            let sys = load_valid(path)?;
            let mut report = new_report(&sys, "classical");
            report.sections.push(section_classical(&sys, &limits));
            Ok(emit(&report))
        }
        Command::Ortho { path } => {
            let sys = load_valid(path)?;
            let mut report = new_report(&sys, "ortho");
            report.sections.push(section_ortho(&sys, &limits));
            Ok(emit(&report))
        }
        Command::Certify { path, structure } => {
            let sys = load_valid(path)?;
            let kinds = structure_kinds(structure)?;
            let mut report = new_report(&sys, "certify");
            report.sections.push(section_certify(&sys, &limits, &kinds));
            Ok(emit(&report))
        }
        Command::Generate {
            fixture: fix,
            pg,
            form,
            union,
            enumerate,
        } => {
            let chosen = [
                fix.is_some(),
                pg.is_some(),
                union.is_some(),
                enumerate.is_some(),
            ]
            .iter()
            .filter(|&&b| b)
            .count();
            if chosen != 1 {
                return Err(CliError::Parse(
                    "generate needs exactly one of --fixture, --pg, --union or --enumerate".into(),
                ));
            }
            if let Some(name) = fix {
                let sys = fixture(name).map_err(|e| CliError::Structural(e.to_string()))?;
                return Ok(emit_instance(&sys));
            }
            if let Some(args) = pg {
                let (q, n) = (args[0], args[1] as usize);
                let spec = match form.as_deref() {
                    None => None,
                    Some("identity") => Some(FormSpec::identity(n)),
                    Some(path) => {
                        let text = std::fs::read_to_string(path)
                            .map_err(|e| CliError::Parse(format!("cannot read {}: {}", path, e)))?;
                        let matrix: Vec<Vec<u32>> = serde_json::from_str(&text)
                            .map_err(|e| CliError::Parse(format!("bad form matrix: {}", e)))?;
                        Some(FormSpec {
                            matrix,
                            sigma: Sigma::Identity,
                        })
                    }
                };
                let sys = from_vector_space(q, n, spec.as_ref())
                    .map_err(|e| CliError::Structural(e.to_string()))?;
                return Ok(emit_instance(&sys));
            }
            if let Some(names) = union {
                if names.len() < 2 {
                    return Err(CliError::Parse(
                        "--union needs at least two fixtures".into(),
                    ));
                }
                let parts: Result<Vec<_>, _> = names.iter().map(|n| fixture(n)).collect();
                let parts = parts.map_err(|e| CliError::Structural(e.to_string()))?;
                let refs: Vec<&StatePropertySystem> = parts.iter().collect();
                let sys = disjoint_union(&refs).map_err(|e| CliError::Structural(e.to_string()))?;
                return Ok(emit_instance(&sys));
            }
            let args = enumerate.as_ref().expect("one flag is set");
            if args[0] > spslab_core::generators::MAX_CORPUS_STATES {
                return Err(CliError::Budget(format!(
                    "corpus enumeration supports at most {} states",
                    spslab_core::generators::MAX_CORPUS_STATES
                )));
            }
            let bounds = CorpusBounds {
                max_states: args[0],
                max_props: args[1],
            };
            let mut out = String::new();
            for sys in enumerate_instances(&bounds) {
                out.push_str(&compact_instance_json(&sys));
                out.push('\n');
            }
            Ok(out)
        }
        Command::CheckWitness { instance, report } => {
            let sys = load_system(instance)?;
            let text = std::fs::read_to_string(report)
                .map_err(|e| CliError::Parse(format!("cannot read {}: {}", report.display(), e)))?;
            let parsed: RunReport = serde_json::from_str(&text)
                .map_err(|e| CliError::Parse(format!("bad report: {}", e)))?;
            if parsed.instance.digest != digest(&sys) {
                return Err(CliError::Structural(format!(
                    "report digest {} does not match instance digest {}",
                    parsed.instance.digest,
                    digest(&sys)
                )));
            }
            let mut out = String::new();
            let mut stale = 0usize;
            let mut replayed = 0usize;
            for section in &parsed.sections {
                for entry in spslab::run::section_entries(section) {
                    if entry.verdict != spslab_core::Verdict::Fails {
                        continue;
                    }
                    let Some(w) = &entry.witness else { continue };
                    let outcome = reevaluate(&sys, &entry.axiom, w);
                    let tag = match outcome {
                        Recheck::Violates => {
                            replayed += 1;
                            "violates"
                        }
                        Recheck::NoViolation => {
                            stale += 1;
                            "NO-VIOLATION"
                        }
                        Recheck::Unsupported => "unsupported",
                    };
                    out.push_str(&format!("{}: {}\n", entry.axiom, tag));
                }
            }
            out.push_str(&format!(
                "replayed {} witness(es), {} stale\n",
                replayed, stale
            ));
            if stale > 0 {
                return Err(CliError::Structural(format!(
                    "{} stale witness(es): {}",
                    stale, out
                )));
            }
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            print!("{}", output);
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("{}", err);
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
