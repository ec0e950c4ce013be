//! The subcommands: each produces a JSON payload, a human rendering and a
//! pass/fail status.

use serde_json::{json, Value};
use thiserror::Error;
use weil_core::algebra::AlgebraElement;
use weil_core::frobenius::FrobeniusStructure;
use weil_core::lifts::{lift_alternating, lift_mixed, Lift, LiftError};
use weil_core::poisson::{jacobi_check, modular_field, verify_modular_theorem, LogDensity, PoissonError};
use weil_core::prolong::{prolong_scalar, prolong_scalar_taylor};
use weil_core::rational::fmt_rat;
use weil_core::tensor::{schouten, TensorError};

use crate::report::{
    alternating_json, base_coordinate_names, envelope, lifted_coordinate_names, mixed_json, poly_json, status,
    suite_human, suite_json,
};
use crate::spec::{NamedTensor, SpecDocument};
use crate::suite::{run_suite, ExtraFixture, SuiteConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    AlgebraValidate,
    Prolong,
    Lift,
    Bracket,
    Modular,
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::AlgebraValidate => "algebra-validate",
            Command::Prolong => "prolong",
            Command::Lift => "lift",
            Command::Bracket => "bracket",
            Command::Modular => "modular",
            Command::Verify => "verify",
        }
    }
}

#[derive(Debug, Error)]
pub enum CommandError {
    #[error("the {0} command needs a spec file")]
    MissingSpec(&'static str),
    #[error("spec has no {0}")]
    MissingField(&'static str),
    #[error("`{name}`: {source}")]
    Lift { name: String, source: LiftError },
    #[error("`{name}`: {source}")]
    Tensor { name: String, source: TensorError },
    #[error("{0}")]
    Poisson(#[from] PoissonError),
    #[error("`{0}` does not satisfy the Jacobi identity")]
    NotPoisson(String),
    #[error("`{0}` is not a multivector field")]
    NotMultivector(String),
}

pub struct CommandOutput {
    pub json: Value,
    pub human: String,
    pub passed: bool,
}

pub struct RunOptions {
    pub seed: u64,
    pub cases: usize,
}

pub fn run_command(cmd: Command, doc: Option<&SpecDocument>, opts: &RunOptions) -> Result<CommandOutput, CommandError> {
    if cmd == Command::Verify {
        return Ok(verify(doc, opts));
    }
    let doc = doc.ok_or(CommandError::MissingSpec(cmd.name()))?;
    let (result, human, passed) = match cmd {
        Command::AlgebraValidate => algebra_validate(doc),
        Command::Prolong => prolong(doc),
        Command::Lift => lift(doc)?,
        Command::Bracket => bracket(doc)?,
        Command::Modular => modular(doc)?,
        Command::Verify => unreachable!("handled above"),
    };
    Ok(CommandOutput {
        json: envelope(cmd.name(), passed, result),
        human,
        passed,
    })
}

fn frobenius(doc: &SpecDocument) -> Result<&FrobeniusStructure, CommandError> {
    doc.frobenius
        .as_ref()
        .ok_or(CommandError::MissingField("frobenius covector"))
}

fn element_string(e: &AlgebraElement) -> Vec<String> {
    e.coords.iter().map(fmt_rat).collect()
}

fn algebra_validate(doc: &SpecDocument) -> (Value, String, bool) {
    let alg = &doc.algebra;
    let mut human = format!(
        "algebra: dim {}, nilpotent ideal dim {}, height {}, power dims {:?}\n",
        alg.dim(),
        alg.nil_dim(),
        alg.height(),
        alg.power_dims()
    );
    let mut result = json!({
        "algebra": {
            "dim": alg.dim(),
            "nil_dim": alg.nil_dim(),
            "height": alg.height(),
            "power_dims": alg.power_dims(),
        }
    });
    let mut passed = true;
    if let Some(f) = &doc.frobenius {
        let inv = f.verify_invariants();
        passed = inv.is_ok();
        let q: Vec<Vec<String>> = f.q_lower().iter().map(|r| r.iter().map(fmt_rat).collect()).collect();
        let dual: Vec<Vec<String>> = f.dual_basis().iter().map(element_string).collect();
        human += &format!(
            "frobenius: p = ({})\n",
            f.p().iter().map(fmt_rat).collect::<Vec<_>>().join(", ")
        );
        for (a, row) in q.iter().enumerate() {
            human += &format!("  q[{a}] = ({})\n", row.join(", "));
        }
        match &inv {
            Ok(()) => human += "  invariants hold\n",
            Err(e) => human += &format!("  invariant violated: {e}\n"),
        }
        result["frobenius"] = json!({
            "p": f.p().iter().map(fmt_rat).collect::<Vec<_>>(),
            "q": q,
            "dual_basis": dual,
            "invariants": status(inv.is_ok()),
            "violation": inv.err(),
        });
    }
    (result, human, passed)
}

fn prolong(doc: &SpecDocument) -> (Value, String, bool) {
    let names = lifted_coordinate_names(doc.manifold_dim, doc.algebra.dim());
    let name = |i: usize| names[i].clone();
    let mut passed = true;
    let mut human = String::new();
    let mut out = serde_json::Map::new();
    for (fname, f) in &doc.functions {
        let direct = prolong_scalar(f, &doc.algebra);
        let taylor = prolong_scalar_taylor(f, &doc.algebra);
        let agree = direct == taylor;
        passed &= agree;
        human += &format!(
            "{fname}^A  (Taylor oracle {})\n",
            if agree { "agrees" } else { "DISAGREES" }
        );
        for (b, c) in direct.components().iter().enumerate() {
            human += &format!("  [e_{b}] {}\n", c.render(&name));
        }
        out.insert(
            fname.clone(),
            json!({
                "components": direct.components().iter().map(poly_json).collect::<Vec<_>>(),
                "taylor_agrees": agree,
            }),
        );
    }
    (json!({ "coordinates": names, "functions": out }), human, passed)
}

fn lift_label(l: &Lift) -> String {
    match l {
        Lift::Complete => "complete".into(),
        Lift::Vertical => "vertical".into(),
        Lift::Basis(a) => format!("a = {a}"),
        Lift::Epsilon(e) => format!("epsilon = ({})", element_string(e).join(", ")),
    }
}

fn lift(doc: &SpecDocument) -> Result<(Value, String, bool), CommandError> {
    let f = frobenius(doc)?;
    let names = lifted_coordinate_names(doc.manifold_dim, f.dim());
    let name = |i: usize| names[i].clone();
    let mut human = String::new();
    let mut lifts = Vec::new();
    for req in &doc.lifts {
        let err = |source| CommandError::Lift {
            name: req.tensor.clone(),
            source,
        };
        let (value, text) = match &doc.tensors[&req.tensor] {
            NamedTensor::Form(t) => {
                let l = lift_alternating(f, t, &req.lift).map_err(err)?;
                (alternating_json(&l, false), l.render(&name))
            }
            NamedTensor::Multivector(t) => {
                let l = lift_alternating(f, t, &req.lift).map_err(err)?;
                (alternating_json(&l, true), l.render(&name))
            }
            NamedTensor::Mixed(t) => {
                let l = lift_mixed(f, t, &req.lift).map_err(err)?;
                (mixed_json(l.field()), l.field().render(&name))
            }
        };
        human += &format!("{} ({}):\n  {text}\n", req.tensor, lift_label(&req.lift));
        lifts.push(json!({ "tensor": req.tensor, "lift": lift_label(&req.lift), "field": value }));
    }
    Ok((json!({ "coordinates": names, "lifts": lifts }), human, true))
}

fn bracket(doc: &SpecDocument) -> Result<(Value, String, bool), CommandError> {
    let names = base_coordinate_names(doc.manifold_dim);
    let name = |i: usize| names[i].clone();
    let get = |n: &str| match &doc.tensors[n] {
        NamedTensor::Multivector(t) => Ok(t),
        _ => Err(CommandError::NotMultivector(n.to_string())),
    };
    let mut human = String::new();
    let mut out = Vec::new();
    for req in &doc.brackets {
        let b = schouten(get(&req.left)?, get(&req.right)?).map_err(|source| CommandError::Tensor {
            name: req.left.clone(),
            source,
        })?;
        human += &format!("[{}, {}] = {}\n", req.left, req.right, b.render(&name));
        out.push(json!({ "left": req.left, "right": req.right, "bracket": alternating_json(&b, true) }));
    }
    let mut result = json!({ "brackets": out });
    if let (Some(pname), Some(w)) = (&doc.poisson, doc.poisson_bivector()) {
        let ok = jacobi_check(w).is_ok();
        human += &format!("{pname} satisfies [w,w] = 0: {ok}\n");
        result["poisson"] = json!({ "name": pname, "jacobi": ok });
    }
    Ok((result, human, true))
}

fn modular(doc: &SpecDocument) -> Result<(Value, String, bool), CommandError> {
    let f = frobenius(doc)?;
    let pname = doc
        .poisson
        .clone()
        .ok_or(CommandError::MissingField("poisson bivector"))?;
    let w = doc.poisson_bivector().expect("validated while parsing");
    let s = jacobi_check(w).map_err(|_| CommandError::NotPoisson(pname.clone()))?;
    let density = doc
        .density
        .clone()
        .unwrap_or_else(|| LogDensity::zero(doc.manifold_dim));
    let base_names = base_coordinate_names(doc.manifold_dim);
    let lifted_names = lifted_coordinate_names(doc.manifold_dim, f.dim());
    let delta = modular_field(&s, &density)?;
    let mut human = format!("Δ = {}\n", delta.render(&|i| base_names[i].clone()));
    let alg = f.algebra();
    let epsilons = if doc.epsilons.is_empty() {
        vec![alg.unit(), alg.basis(alg.dim() - 1)]
    } else {
        doc.epsilons.clone()
    };
    let mut passed = true;
    let mut lifts = Vec::new();
    for eps in &epsilons {
        let r = verify_modular_theorem(f, &s, &density, eps)?;
        passed &= r.equal;
        let lname = |i: usize| lifted_names[i].clone();
        human += &format!(
            "ε = ({}): lhs = {}, ε⁰(n+1)Δ^V = {}  {}\n",
            element_string(eps).join(", "),
            r.lhs.render(&lname),
            r.rhs.render(&lname),
            if r.equal { "equal" } else { "DIFFERENT" }
        );
        lifts.push(json!({
            "epsilon": element_string(eps),
            "lhs": alternating_json(&r.lhs, true),
            "rhs": alternating_json(&r.rhs, true),
            "equal": r.equal,
            "first_difference": r.counterexample.map(|k| lifted_names[k].clone()),
        }));
    }
    let result = json!({
        "poisson": pname,
        "modular_field": alternating_json(&delta, true),
        "lifted_coordinates": lifted_names,
        "lifts": lifts,
    });
    Ok((result, human, passed))
}

fn verify(doc: Option<&SpecDocument>, opts: &RunOptions) -> CommandOutput {
    let mut config = SuiteConfig::new(opts.seed, opts.cases);
    if let Some(doc) = doc {
        if let (Some(f), Some(w)) = (&doc.frobenius, doc.poisson_bivector()) {
            config.extra.push(ExtraFixture {
                name: doc.name.clone(),
                frobenius: f.clone(),
                bivector: w.clone(),
                density: doc
                    .density
                    .clone()
                    .unwrap_or_else(|| LogDensity::zero(doc.manifold_dim)),
            });
        }
    }
    let out = run_suite(&config);
    let passed = out.passed();
    CommandOutput {
        json: envelope("verify", passed, suite_json(&out)),
        human: suite_human(&out),
        passed,
    }
}
