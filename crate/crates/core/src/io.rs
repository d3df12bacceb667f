//! JSON file format for set functions and JSON reports.
//!
//! Dense form: `{"ground_set": [...], "values": ["v_0", ...]}` indexed by
//! bitmask. Sparse form: `{"ground_set": [...], "default": "v",
//! "entries": {"a,c": "v", ...}}`. A `"provenance"` string is optional in
//! both. Writing is canonical, so write → load → write is byte-identical.

use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Map, Value};

use crate::canonical::adversary::{DemoRecord, Outcome};
use crate::canonical::{Conflict, ParityConstraint, ParitySystem, SystemStatus};
use crate::classify::{ClassCertificate, FunctionClass};
use crate::error::{Error, Result};
use crate::setfn::{GroundSet, SetFunction, Subset, TwoFace, DEFAULT_SIZE_LIMIT};
use crate::structure::{Decomposition, InequalityGraph};
use crate::value::{format_rational, parse_rational};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FileForm {
    Dense,
    Sparse,
}

fn parse_value(v: &Value, what: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        other => Err(Error::Format(format!(
            "{what}: expected a rational string, found {other}"
        ))),
    }
}

fn parse_ground(obj: &Map<String, Value>, limit: usize) -> Result<GroundSet> {
    let names = obj
        .get("ground_set")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Format("missing \"ground_set\" array".into()))?;
    let names = names
        .iter()
        .map(|v| {
            v.as_str()
                .map(str::to_owned)
                .ok_or_else(|| Error::Format("element names must be strings".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    GroundSet::with_limit(names, limit)
}

/// Parses a function file with the default size guard.
pub fn parse_function(text: &str) -> Result<(SetFunction, FileForm)> {
    parse_function_with_limit(text, DEFAULT_SIZE_LIMIT)
}

pub fn parse_function_with_limit(text: &str, limit: usize) -> Result<(SetFunction, FileForm)> {
    let root: Value = serde_json::from_str(text)?;
    let obj = root
        .as_object()
        .ok_or_else(|| Error::Format("top level must be an object".into()))?;
    for key in obj.keys() {
        if !matches!(
            key.as_str(),
            "ground_set" | "values" | "default" | "entries" | "provenance"
        ) {
            return Err(Error::Format(format!("unknown key \"{key}\"")));
        }
    }
    let ground = parse_ground(obj, limit)?;
    let provenance = match obj.get("provenance") {
        None => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(_) => return Err(Error::Format("\"provenance\" must be a string".into())),
    };

    let (f, form) = match (obj.get("values"), obj.get("default"), obj.get("entries")) {
        (Some(values), None, None) => {
            let values = values
                .as_array()
                .ok_or_else(|| Error::Format("\"values\" must be an array".into()))?;
            let parsed = values
                .iter()
                .enumerate()
                .map(|(i, v)| parse_value(v, &format!("values[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            (SetFunction::from_values(ground, parsed)?, FileForm::Dense)
        }
        (None, Some(default), entries) => {
            let default = parse_value(default, "default")?;
            let mut values = vec![default; ground.subset_count()];
            let mut seen = HashMap::new();
            if let Some(entries) = entries {
                let entries = entries
                    .as_object()
                    .ok_or_else(|| Error::Format("\"entries\" must be an object".into()))?;
                for (key, v) in entries {
                    let set = ground.parse_subset(key)?;
                    if let Some(prev) = seen.insert(set, key.clone()) {
                        return Err(Error::Format(format!(
                            "entries \"{prev}\" and \"{key}\" name the same subset"
                        )));
                    }
                    values[set.index()] = parse_value(v, &format!("entries[\"{key}\"]"))?;
                }
            }
            (SetFunction::from_values(ground, values)?, FileForm::Sparse)
        }
        _ => {
            return Err(Error::Format(
                "expected either \"values\" or \"default\" with optional \"entries\"".into(),
            ))
        }
    };
    Ok((f.with_provenance(provenance), form))
}

fn most_frequent(values: &[Rational]) -> Rational {
    let mut counts: HashMap<&Rational, (usize, usize)> = HashMap::new();
    for (i, v) in values.iter().enumerate() {
        counts.entry(v).or_insert((0, i)).0 += 1;
    }
    // highest count, then earliest first occurrence
    let (best, _) = counts
        .into_iter()
        .max_by(|a, b| a.1 .0.cmp(&b.1 .0).then(b.1 .1.cmp(&a.1 .1)))
        .expect("at least one value");
    best.clone()
}

pub fn function_to_value(f: &SetFunction, form: FileForm) -> Value {
    let ground = f.ground();
    let mut obj = Map::new();
    obj.insert("ground_set".into(), json!(ground.names()));
    match form {
        FileForm::Dense => {
            obj.insert(
                "values".into(),
                Value::Array(
                    f.values()
                        .iter()
                        .map(|v| json!(format_rational(v)))
                        .collect(),
                ),
            );
        }
        FileForm::Sparse => {
            let default = most_frequent(f.values());
            let mut entries = Map::new();
            for x in Subset::all(ground.len()) {
                let v = f.get(x);
                if *v != default {
                    entries.insert(ground.format_subset(x), json!(format_rational(v)));
                }
            }
            obj.insert("default".into(), json!(format_rational(&default)));
            obj.insert("entries".into(), Value::Object(entries));
        }
    }
    if !f.provenance().is_empty() {
        obj.insert("provenance".into(), json!(f.provenance()));
    }
    Value::Object(obj)
}

/// Canonical file text: pretty JSON with a trailing newline.
pub fn write_function(f: &SetFunction, form: FileForm) -> String {
    to_text(&function_to_value(f, form))
}

pub fn to_text(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn load_function(path: &std::path::Path, limit: usize) -> Result<(SetFunction, FileForm)> {
    let text = std::fs::read_to_string(path)?;
    parse_function_with_limit(&text, limit)
}

pub fn save_function(path: &std::path::Path, f: &SetFunction, form: FileForm) -> Result<()> {
    std::fs::write(path, write_function(f, form))?;
    Ok(())
}

pub fn subset_json(ground: &GroundSet, set: Subset) -> Value {
    json!(ground.names_of(set))
}

pub fn face_json(ground: &GroundSet, face: TwoFace) -> Value {
    let (u, v) = face.pair();
    json!({
        "base": subset_json(ground, face.base()),
        "pair": [ground.name(u), ground.name(v)],
    })
}

fn class_name(class: FunctionClass) -> &'static str {
    match class {
        FunctionClass::Submodular => "submodular",
        FunctionClass::StrictlySubmodular => "strict",
        FunctionClass::Modular => "modular",
    }
}

pub fn check_report(ground: &GroundSet, cert: &ClassCertificate) -> Value {
    let mut obj = Map::new();
    obj.insert("kind".into(), json!(class_name(cert.class)));
    obj.insert(
        "verdict".into(),
        serde_json::to_value(cert.verdict).expect("verdict serializes"),
    );
    if let Some(w) = &cert.witness {
        obj.insert(
            "witness".into(),
            json!({ "face": face_json(ground, w.face), "slack": format_rational(&w.slack) }),
        );
    }
    Value::Object(obj)
}

pub fn graph_json(graph: &InequalityGraph) -> Value {
    let ground = graph.ground();
    let edges: Vec<Value> = graph
        .edges()
        .iter()
        .map(|&(u, v)| json!([ground.name(u), ground.name(v)]))
        .collect();
    let components: Vec<Value> = graph
        .components()
        .iter()
        .map(|&c| subset_json(ground, c))
        .collect();
    json!({ "edges": edges, "components": components })
}

pub fn decomposition_report(ground: &GroundSet, dec: &Decomposition) -> Value {
    json!({
        "parts": dec.parts.iter().map(|&p| subset_json(ground, p)).collect::<Vec<_>>(),
        "verified": dec.verified,
        "checked": dec.checked,
        "exhaustive": dec.exhaustive,
    })
}

fn constraint_json(ground: &GroundSet, c: &ParityConstraint) -> Value {
    json!({
        "pair": [ground.name(c.pair.0), ground.name(c.pair.1)],
        "parity": if c.parity { "split" } else { "same" },
        "face": face_json(ground, c.witness),
    })
}

fn conflict_json(ground: &GroundSet, conflict: &Conflict) -> Value {
    match conflict {
        Conflict::SamePair { first, second } => json!({
            "kind": "same_pair",
            "constraints": [constraint_json(ground, first), constraint_json(ground, second)],
        }),
        Conflict::Cycle { closing, path } => json!({
            "kind": "cycle",
            "closing": constraint_json(ground, closing),
            "path": path.iter().map(|c| constraint_json(ground, c)).collect::<Vec<_>>(),
        }),
    }
}

pub fn solver_report(system: &ParitySystem) -> Value {
    let ground = system.ground();
    let mut obj = Map::new();
    match (system.status(), system.solve()) {
        (SystemStatus::Feasible, Some(family)) => {
            obj.insert("status".into(), json!("feasible"));
            obj.insert(
                "blocks".into(),
                Value::Array(
                    family
                        .blocks()
                        .iter()
                        .map(|&b| subset_json(ground, b))
                        .collect(),
                ),
            );
            obj.insert(
                "representative".into(),
                subset_json(ground, family.representative()),
            );
            obj.insert("solution_count_log2".into(), json!(family.free_bits()));
        }
        (status, _) => {
            obj.insert("status".into(), json!("infeasible"));
            obj.insert("blocks".into(), json!([]));
            obj.insert("representative".into(), Value::Null);
            obj.insert("solution_count_log2".into(), Value::Null);
            if let SystemStatus::Infeasible(conflict) = status {
                obj.insert("conflict".into(), conflict_json(ground, conflict));
            }
        }
    }
    Value::Object(obj)
}

pub fn lovasz_report(point: &[Rational], value: &Rational) -> Value {
    json!({
        "point": point.iter().map(format_rational).collect::<Vec<_>>(),
        "value": format_rational(value),
    })
}

/// Report for the strict-function algorithm. `trace` carries the distinct
/// and total oracle-call counts, `verified` the brute-force check.
pub fn strict_report(
    ground: &GroundSet,
    t: Subset,
    anchor: usize,
    trace: Option<(usize, u64, &[Subset])>,
    verified: Option<bool>,
) -> Value {
    let mut obj = Map::new();
    obj.insert("canonical".into(), subset_json(ground, t));
    obj.insert(
        "complement".into(),
        subset_json(ground, ground.complement(t)),
    );
    obj.insert("anchor".into(), json!(ground.name(anchor)));
    if let Some((distinct, total, queried)) = trace {
        obj.insert("distinct_queries".into(), json!(distinct));
        obj.insert("total_calls".into(), json!(total));
        obj.insert(
            "queried".into(),
            Value::Array(queried.iter().map(|&q| subset_json(ground, q)).collect()),
        );
    }
    if let Some(ok) = verified {
        obj.insert("verified".into(), json!(ok));
    }
    Value::Object(obj)
}

pub fn adversary_report(record: &DemoRecord) -> Result<Value> {
    let ground = GroundSet::numbered(record.n)?;
    let outcome = match &record.outcome {
        Outcome::Refuted {
            dip,
            canonical,
            verified,
        } => json!({
            "result": "refuted",
            "dip": subset_json(&ground, *dip),
            "canonical_sets": [subset_json(&ground, canonical[0]), subset_json(&ground, canonical[1])],
            "verified": verified,
        }),
        Outcome::NotRefutable { consistent_dips } => json!({
            "result": "not_refutable",
            "consistent_dips": consistent_dips.iter().map(|&d| subset_json(&ground, d)).collect::<Vec<_>>(),
        }),
        Outcome::BudgetExhausted => json!({ "result": "budget_exhausted" }),
    };
    Ok(json!({
        "strategy": record.strategy,
        "n": record.n,
        "budget": record.budget,
        "queries": record.queries.iter().map(|&q| subset_json(&ground, q)).collect::<Vec<_>>(),
        "total_calls": record.total_calls,
        "answer": record.answer.map(|a| subset_json(&ground, a)),
        "outcome": outcome,
    }))
}

/// Groups reports for several adversary runs under their strategy names.
pub fn adversary_summary(records: &[DemoRecord]) -> Result<Value> {
    let runs = records
        .iter()
        .map(adversary_report)
        .collect::<Result<Vec<_>>>()?;
    let mut tally: BTreeMap<&str, usize> = BTreeMap::new();
    for r in records {
        let key = match r.outcome {
            Outcome::Refuted { .. } => "refuted",
            Outcome::NotRefutable { .. } => "not_refutable",
            Outcome::BudgetExhausted => "budget_exhausted",
        };
        *tally.entry(key).or_default() += 1;
    }
    Ok(json!({ "runs": runs, "tally": tally }))
}
