//! The JSON interchange format for instances.
//!
//! A single document holds `states`, `properties`, `leq` pairs (the
//! reflexive-transitive closure is implied), `bottom`, `top`, the `actual`
//! map, and optionally `testable`, `mu` and `perp`. Probability values are
//! exact: fraction strings like `"1/2"` are canonical, finite decimals are
//! converted exactly, and anything else is rejected at parse time.

use crate::CliError;
use serde::Deserialize;
use spslab_core::rational::Ratio;
use spslab_core::{PropId, StatePropertySystem, SystemBuilder};
use std::collections::BTreeMap;
use std::fmt::Write as _;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    states: Vec<String>,
    properties: Vec<String>,
    leq: Vec<(String, String)>,
    bottom: String,
    top: String,
    actual: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    testable: Option<Vec<String>>,
    #[serde(default)]
    mu: Option<Vec<MuEntry>>,
    #[serde(default)]
    perp: Option<Vec<(String, String)>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MuEntry {
    state: String,
    property: String,
    value: serde_json::Value,
}

fn parse_mu_value(raw: &serde_json::Value, state: &str, prop: &str) -> Result<Ratio, CliError> {
    let text = match raw {
        // with arbitrary precision the number displays its source text
        serde_json::Value::Number(n) => n.to_string(),
        serde_json::Value::String(s) => s.clone(),
        other => {
            return Err(CliError::Parse(format!(
                "mu value for ({}, {}) must be a number or a string, got {}",
                state, prop, other
            )))
        }
    };
    let value = Ratio::parse(&text)
        .map_err(|e| CliError::Parse(format!("mu value for ({}, {}): {}", state, prop, e)))?;
    if !value.in_unit_interval() {
        return Err(CliError::Parse(format!(
            "probability out of range at ({}, {}): {}",
            state, prop, text
        )));
    }
    Ok(value)
}

/// Parses the interchange document into a builder. Value-domain problems
/// are parse errors; name resolution happens later in the builder.
pub fn parse_instance(text: &str) -> Result<SystemBuilder, CliError> {
    let doc: InstanceDoc = serde_json::from_str(text).map_err(|e| {
        CliError::Parse(format!("{} (line {}, column {})", e, e.line(), e.column()))
    })?;
    let mut mu = Vec::new();
    if let Some(entries) = &doc.mu {
        for entry in entries {
            let value = parse_mu_value(&entry.value, &entry.state, &entry.property)?;
            mu.push((entry.state.clone(), entry.property.clone(), value));
        }
    }
    Ok(SystemBuilder {
        states: doc.states,
        properties: doc.properties,
        leq: doc.leq,
        bottom: doc.bottom,
        top: doc.top,
        actual: doc.actual.into_iter().collect(),
        testable: doc.testable,
        mu,
        perp: doc.perp,
    })
}

/// Loads and builds a system from a file path.
pub fn load_system(path: &std::path::Path) -> Result<StatePropertySystem, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {}", path.display(), e)))?;
    let builder = parse_instance(&text)?;
    builder
        .build()
        .map_err(|e| CliError::Structural(e.to_string()))
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

/// Emits a system in the interchange format, deterministically: the `leq`
/// field carries the covering pairs (closure implied), `testable` and `mu`
/// are omitted when the default testable set is in effect, and `mu` values
/// are canonical fraction strings.
pub fn emit_instance(sys: &StatePropertySystem) -> String {
    let lat = sys.lattice();
    let mut out = String::from("{\n");
    let _ = writeln!(
        out,
        "  \"states\": [{}],",
        sys.state_names()
            .iter()
            .map(|s| json_string(s))
            .collect::<Vec<_>>()
            .join(", ")
    );
    let _ = writeln!(
        out,
        "  \"properties\": [{}],",
        lat.names()
            .iter()
            .map(|s| json_string(s))
            .collect::<Vec<_>>()
            .join(", ")
    );
    let covers: Vec<String> = lat
        .cover_pairs()
        .iter()
        .map(|&(a, b)| {
            format!(
                "[{}, {}]",
                json_string(lat.name(a)),
                json_string(lat.name(b))
            )
        })
        .collect();
    let _ = writeln!(out, "  \"leq\": [{}],", covers.join(", "));
    let _ = writeln!(
        out,
        "  \"bottom\": {},",
        json_string(lat.name(lat.bottom()))
    );
    let _ = writeln!(out, "  \"top\": {},", json_string(lat.name(lat.top())));
    out.push_str("  \"actual\": {\n");
    let rows: Vec<String> = sys
        .states()
        .map(|p| {
            let props: Vec<String> = sys
                .actual(p)
                .iter()
                .map(|a| json_string(lat.name(PropId(a))))
                .collect();
            format!(
                "    {}: [{}]",
                json_string(sys.state_name(p)),
                props.join(", ")
            )
        })
        .collect();
    out.push_str(&rows.join(",\n"));
    out.push_str("\n  }");

    if !sys.has_degenerate_testable() {
        let testable: Vec<String> = sys
            .testable()
            .iter()
            .map(|&a| json_string(lat.name(a)))
            .collect();
        let _ = write!(out, ",\n  \"testable\": [{}]", testable.join(", "));
        let mut entries = Vec::new();
        for p in sys.states() {
            for &a in sys.testable() {
                let value = sys.mu(p, a).expect("table is total");
                entries.push(format!(
                    "    {{\"state\": {}, \"property\": {}, \"value\": {}}}",
                    json_string(sys.state_name(p)),
                    json_string(lat.name(a)),
                    json_string(&value.display())
                ));
            }
        }
        let _ = write!(out, ",\n  \"mu\": [\n{}\n  ]", entries.join(",\n"));
    }

    if let Some(rel) = sys.perp_override() {
        let mut pairs = Vec::new();
        for p in sys.states() {
            for q in rel[p.0].iter() {
                if p.0 <= q.0 {
                    pairs.push(format!(
                        "[{}, {}]",
                        json_string(sys.state_name(p)),
                        json_string(sys.state_name(q))
                    ));
                }
            }
        }
        let _ = write!(out, ",\n  \"perp\": [{}]", pairs.join(", "));
    }

    out.push_str("\n}\n");
    out
}

/// Content digest of the canonical form: states and properties sorted by
/// name, the full order relation, actuality rows, table and orthogonality
/// all in sorted order, hashed with a 128-bit FNV-1a.
pub fn digest(sys: &StatePropertySystem) -> String {
    let lat = sys.lattice();
    let mut canon = String::new();
    let mut states: Vec<&str> = sys.state_names().iter().map(|s| s.as_str()).collect();
    states.sort_unstable();
    let _ = write!(canon, "states:{:?};", states);
    let mut props: Vec<&str> = lat.names().iter().map(|s| s.as_str()).collect();
    props.sort_unstable();
    let _ = write!(canon, "properties:{:?};", props);
    let mut leq: Vec<(&str, &str)> = Vec::new();
    for a in lat.elements() {
        for b in lat.elements() {
            if lat.leq(a, b) {
                leq.push((lat.name(a), lat.name(b)));
            }
        }
    }
    leq.sort_unstable();
    let _ = write!(canon, "leq:{:?};", leq);
    let _ = write!(
        canon,
        "bottom:{:?};top:{:?};",
        lat.name(lat.bottom()),
        lat.name(lat.top())
    );
    let mut actual: Vec<(String, Vec<String>)> = sys
        .states()
        .map(|p| {
            let mut row = sys.prop_set_names(sys.actual(p));
            row.sort_unstable();
            (sys.state_name(p).to_string(), row)
        })
        .collect();
    actual.sort_unstable();
    let _ = write!(canon, "actual:{:?};", actual);
    if !sys.has_degenerate_testable() {
        let mut rows: Vec<(String, String, String)> = Vec::new();
        for p in sys.states() {
            for &a in sys.testable() {
                rows.push((
                    sys.state_name(p).to_string(),
                    lat.name(a).to_string(),
                    sys.mu(p, a).expect("total").display(),
                ));
            }
        }
        rows.sort_unstable();
        let _ = write!(canon, "mu:{:?};", rows);
    }
    if let Some(rel) = sys.perp_override() {
        let mut pairs: Vec<(String, String)> = Vec::new();
        for p in sys.states() {
            for q in rel[p.0].iter() {
                if p.0 <= q.0 {
                    pairs.push((sys.state_name(p).to_string(), sys.state_name(q).to_string()));
                }
            }
        }
        pairs.sort_unstable();
        let _ = write!(canon, "perp:{:?};", pairs);
    }
    fnv128_hex(canon.as_bytes())
}

/// 128-bit FNV-1a, hex encoded.
fn fnv128_hex(data: &[u8]) -> String {
    const OFFSET: u128 = 0x6c62272e07bb014262b821756295c58d;
    const PRIME: u128 = 0x0000000001000000000000000000013b;
    let mut hash = OFFSET;
    for &byte in data {
        hash ^= byte as u128;
        hash = hash.wrapping_mul(PRIME);
    }
    format!("{:032x}", hash)
}
