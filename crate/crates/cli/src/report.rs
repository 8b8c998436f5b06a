//! Verdict rendering for `check`.

use std::fmt::Write;

use psp_core::{ConcreteTrace, ConsistencyReport, SpecDocument, Status};
use serde_json::{json, Value};

fn headline(status: Status) -> &'static str {
    match status {
        Status::Sat => "consistent (sat)",
        Status::Unsat => "inconsistent (unsat)",
        Status::Unknown => "unknown (budget exhausted)",
    }
}

/// Per-step table; the loop part is fenced and repeats forever.
fn table(spec: &SpecDocument, t: &ConcreteTrace) -> String {
    let booleans: Vec<String> = spec.boolean_signals().map(|s| s.to_string()).collect();
    let numerics: Vec<String> = t.steps().next().map(|s| s.numerics.keys().map(|k| k.to_string()).collect()).unwrap_or_default();
    let mut rows: Vec<Vec<String>> = vec![std::iter::once("step".to_string()).chain(booleans.clone()).chain(numerics.clone()).collect()];
    for (i, s) in t.steps().enumerate() {
        let mut row = vec![i.to_string()];
        row.extend(booleans.iter().map(|b| if s.booleans.iter().any(|x| x.as_str() == b) { "1" } else { "0" }.to_string()));
        row.extend(s.numerics.values().map(|v| v.to_string()));
        rows.push(row);
    }
    let widths: Vec<usize> = (0..rows[0].len()).map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for (i, row) in rows.iter().enumerate() {
        if i == t.prefix.len() + 1 {
            out.push_str("  -- loop --\n");
        }
        let cells: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        let _ = writeln!(out, "  {}", cells.join("  "));
    }
    let _ = writeln!(out, "  -- repeat from step {} --", t.prefix.len());
    out
}

pub fn text(spec: &SpecDocument, r: &ConsistencyReport) -> String {
    let mut out = String::new();
    let s = &r.verdict.stats;
    let _ = writeln!(out, "{}", headline(r.verdict.status));
    let _ = writeln!(out, "mode {}, {} states, {:.3} s", r.problem.mode, s.states, s.seconds);
    if !r.problem.thresholds.is_empty() {
        out.push_str("thresholds\n");
        for line in r.problem.thresholds.to_string().lines() {
            let _ = writeln!(out, "  {line}");
        }
    }
    match &r.concrete {
        Some(Ok(t)) => {
            out.push_str("witness\n");
            out.push_str(&table(spec, t));
        }
        Some(Err(e)) => {
            let _ = writeln!(out, "abstract witness cannot be concretized: {e}");
        }
        None => {}
    }
    out
}

pub fn json(r: &ConsistencyReport) -> Value {
    let thresholds: serde_json::Map<String, Value> = r
        .problem
        .thresholds
        .iter()
        .map(|(x, ts)| (x.to_string(), ts.iter().map(|t| Value::String(t.to_string())).collect()))
        .collect();
    let mut out = json!({
        "verdict": r.verdict.status.key(),
        "mode": r.problem.mode.key(),
        "stats": {
            "states": r.verdict.stats.states,
            "seconds": r.verdict.stats.seconds,
            "budget_exhausted": r.verdict.stats.budget_exhausted,
        },
        "thresholds": thresholds,
    });
    match &r.concrete {
        Some(Ok(t)) => {
            let steps: Vec<Value> = t
                .steps()
                .enumerate()
                .map(|(i, s)| {
                    let numerics: serde_json::Map<String, Value> =
                        s.numerics.iter().map(|(k, v)| (k.to_string(), Value::String(v.to_string()))).collect();
                    json!({
                        "step": i,
                        "booleans": s.booleans.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
                        "numerics": numerics,
                    })
                })
                .collect();
            out["witness"] = Value::Array(steps);
            out["loop_start"] = json!(t.prefix.len());
        }
        Some(Err(e)) => out["witness_error"] = Value::String(e.to_string()),
        None => {}
    }
    out
}
