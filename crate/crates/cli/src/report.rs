//! JSON rendering. Objects use sorted keys so output is byte-stable.

use knotdex::invariants::GroupElement;
use knotdex::moves::{Deltas, TableReport, VerificationReport};
use num_rational::Rational64;
use serde_json::{json, Map, Value};

/// Exact rationals as `"p/q"`, integers as `"p"`.
pub fn rational(r: Rational64) -> Value {
    Value::String(if r.is_integer() { r.to_integer().to_string() } else { format!("{}/{}", r.numer(), r.denom()) })
}

pub fn group(g: &GroupElement) -> Value {
    Value::String(g.to_string())
}

pub fn deltas(d: &Deltas) -> Value {
    json!({
        "n": d.n,
        "writhe": d.writhe,
        "winding": d.winding,
        "sci": d.sci,
        "hn": group(&d.hn),
        "cowrithe": d.cowrithe,
        "st": d.st,
        "jplus": d.jplus,
        "jminus": d.jminus,
    })
}

pub fn verification(rep: &VerificationReport, framed: bool, line_of_step: impl Fn(usize) -> usize) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("valid".into(), json!(rep.valid()));
    m.insert("framed".into(), json!(framed));
    m.insert("steps".into(), json!(rep.steps.len()));
    m.insert("r3_count".into(), json!(rep.r3_count()));
    m.insert("counts".into(), json!(rep.counts));
    m.insert("total".into(), deltas(&rep.total));
    m.insert("consistent".into(), json!(rep.consistent));
    m.insert("final_crossings".into(), json!(rep.final_diagram.crossing_count()));
    m.insert("final".into(), json!(knotdex::codec::serialize(&rep.final_diagram)));
    m.insert(
        "failure".into(),
        match &rep.failure {
            Some(f) => json!({ "step": f.step, "line": line_of_step(f.step), "reason": f.reason }),
            None => Value::Null,
        },
    );
    m
}

pub fn table(r: &TableReport, samples: usize, seed: u64) -> Value {
    let mut cells = Map::new();
    for ((row, col), t) in &r.cells {
        cells.insert(format!("{} / {}", row.name(), col.name()), json!({ "checked": t.checked, "failed": t.failed }));
    }
    let per_kind: Map<String, Value> = r.samples.iter().map(|(k, n)| (format!("{k:?}"), json!(n))).collect();
    json!({
        "passed": r.passed(),
        "requested_samples": samples,
        "seed": seed,
        "samples": per_kind,
        "cells": cells,
        "r3_checked": r.r3_checked,
        "r3_incoherent": r.r3_incoherent,
        "errors": r.errors,
        "failures": r.failures,
        "matrix": r.to_string().lines().collect::<Vec<_>>(),
    })
}
