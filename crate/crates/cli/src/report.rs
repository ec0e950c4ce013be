//! Report rendering. JSON objects come from `serde_json::Map`, which keeps keys
//! sorted, so equal inputs give byte-identical output.

use serde_json::{json, Value};
use weil_core::poly::Polynomial;
use weil_core::rational::fmt_rat;
use weil_core::tensor::{Alternating, MixedTensorField, Variance};

use crate::suite::{CheckRecord, SuiteOutcome};

pub const TOOL: &str = "weil";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
/// Bumped whenever the JSON layout changes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Json,
}

/// Wraps a command result with the tool header.
pub fn envelope(command: &str, passed: bool, result: Value) -> Value {
    json!({
        "tool": TOOL,
        "version": VERSION,
        "schema": SCHEMA_VERSION,
        "command": command,
        "status": status(passed),
        "result": result,
    })
}

pub fn status(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "fail"
    }
}

pub fn poly_json(p: &Polynomial) -> Value {
    Value::Array(
        p.terms()
            .map(|(m, c)| json!({ "c": fmt_rat(c), "e": m.exps() }))
            .collect(),
    )
}

fn one_based(key: &[usize]) -> Vec<usize> {
    key.iter().map(|i| i + 1).collect()
}

/// Canonical-key components of an alternating field, in the spec-file layout.
pub fn alternating_json<V: Variance>(t: &Alternating<V>, contravariant: bool) -> Value {
    let comps: Vec<Value> = t
        .components()
        .map(|(k, p)| {
            let slot = if contravariant { "upper" } else { "lower" };
            json!({ slot: one_based(k), "poly": poly_json(p) })
        })
        .collect();
    let ty = if contravariant {
        [0, t.degree()]
    } else {
        [t.degree(), 0]
    };
    json!({ "dim": t.dim(), "type": ty, "antisymmetric": true, "components": comps })
}

pub fn mixed_json(t: &MixedTensorField) -> Value {
    let comps: Vec<Value> = t
        .components()
        .map(|(k, p)| {
            let (lo, up) = k.split_at(t.lower());
            json!({ "lower": one_based(lo), "upper": one_based(up), "poly": poly_json(p) })
        })
        .collect();
    json!({ "dim": t.dim(), "type": [t.lower(), t.upper()], "components": comps })
}

/// `x^{i,a}` names for the flat coordinates of `T^A R^m`, `i` 1-based.
pub fn lifted_coordinate_names(m: usize, alg_dim: usize) -> Vec<String> {
    (0..m * alg_dim)
        .map(|k| format!("x^{{{},{}}}", k / alg_dim + 1, k % alg_dim))
        .collect()
}

pub fn base_coordinate_names(m: usize) -> Vec<String> {
    (1..=m).map(|i| format!("x^{i}")).collect()
}

fn check_json(c: &CheckRecord) -> Value {
    let mut v = json!({
        "name": c.name,
        "anchor": c.anchor,
        "criterion": c.criterion,
        "cases": c.cases,
        "status": status(c.passed()),
    });
    if let Some(cx) = &c.counterexample {
        v["counterexample"] = json!({
            "case": cx.case,
            "case_seed": cx.case_seed,
            "inputs": cx.inputs,
            "detail": cx.detail,
        });
    }
    v
}

pub fn suite_json(out: &SuiteOutcome) -> Value {
    let calibrations: Vec<Value> = out
        .calibrations
        .list
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "relation": c.relation,
                "value": c.value.as_ref().map(fmt_rat),
                "samples": c.samples,
            })
        })
        .collect();
    let checks: Vec<Value> = out.checks.iter().map(check_json).collect();
    let failed = out.checks.iter().filter(|c| !c.passed()).count();
    let mut criteria = serde_json::Map::new();
    for k in criteria_present(out) {
        criteria.insert(k.to_string(), json!(status(out.criterion_passed(k))));
    }
    json!({
        "seed": out.seed,
        "cases": out.cases,
        "calibrations": calibrations,
        "checks": checks,
        "summary": {
            "total": out.checks.len(),
            "passed": out.checks.len() - failed,
            "failed": failed,
            "criteria": criteria,
        },
    })
}

fn criteria_present(out: &SuiteOutcome) -> Vec<u8> {
    let mut ks: Vec<u8> = out.checks.iter().map(|c| c.criterion).collect();
    ks.sort_unstable();
    ks.dedup();
    ks
}

pub fn suite_human(out: &SuiteOutcome) -> String {
    let mut s = format!(
        "{TOOL} {VERSION}  seed {}  cases {}\n\ncalibrations\n",
        out.seed, out.cases
    );
    let w = out.calibrations.list.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in &out.calibrations.list {
        s += &format!(
            "  {:<w$}  {:>12}  {} ({} samples)\n",
            c.name,
            out.calibrations.render_value(c.name),
            c.relation,
            c.samples
        );
    }
    s += "\nchecks\n";
    let w = out.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in &out.checks {
        s += &format!(
            "  {}  {:<w$}  c{:<2} {:>4} cases  {}\n",
            if c.passed() { "PASS" } else { "FAIL" },
            c.name,
            c.criterion,
            c.cases,
            c.anchor
        );
        if let Some(cx) = &c.counterexample {
            s += &format!("        case {} (seed {:#018x})\n", cx.case, cx.case_seed);
            s += &format!("        inputs: {}\n", cx.inputs);
            s += &format!("        {}\n", cx.detail);
        }
    }
    let failed = out.checks.iter().filter(|c| !c.passed()).count();
    s += &format!(
        "\n{} checks, {} passed, {} failed\n",
        out.checks.len(),
        out.checks.len() - failed,
        failed
    );
    s
}

/// Pretty-printed JSON with a trailing newline.
pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}
