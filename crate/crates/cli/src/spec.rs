//! Spec documents: JSON descriptions of an algebra, a Frobenius covector, named
//! tensors on a coordinate patch, a density and requested lifts. Indices are
//! 1-based in files and 0-based in memory.

use std::collections::BTreeMap;
use std::path::Path;

use serde_json::Value;
use thiserror::Error;
use weil_core::algebra::{AlgebraElement, WeilAlgebra};
use weil_core::frobenius::FrobeniusStructure;
use weil_core::lifts::Lift;
use weil_core::poisson::LogDensity;
use weil_core::poly::Polynomial;
use weil_core::rational::{parse_rat, Rat};
use weil_core::tensor::{Alternating, DifferentialForm, MixedTensorField, MultiVectorField, Variance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("{path}: unknown reference `{name}`")]
    UnknownReference { path: String, name: String },
    #[error("{path}: bad rational `{value}`")]
    BadRational { path: String, value: String },
}

fn parse_err(path: &str, message: impl Into<String>) -> SpecError {
    SpecError::Parse {
        path: path.to_string(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NamedTensor {
    Form(DifferentialForm),
    Multivector(MultiVectorField),
    Mixed(MixedTensorField),
}

impl NamedTensor {
    pub fn dim(&self) -> usize {
        match self {
            NamedTensor::Form(t) => t.dim(),
            NamedTensor::Multivector(t) => t.dim(),
            NamedTensor::Mixed(t) => t.dim(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftRequest {
    pub tensor: String,
    pub lift: Lift,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketRequest {
    pub left: String,
    pub right: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SuiteSettings {
    pub seed: Option<u64>,
    pub cases: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct SpecDocument {
    pub name: String,
    pub algebra: WeilAlgebra,
    pub frobenius: Option<FrobeniusStructure>,
    pub manifold_dim: usize,
    pub functions: BTreeMap<String, Polynomial>,
    pub tensors: BTreeMap<String, NamedTensor>,
    /// Name of the bivector treated as the Poisson structure.
    pub poisson: Option<String>,
    pub density: Option<LogDensity>,
    pub epsilons: Vec<AlgebraElement>,
    pub lifts: Vec<LiftRequest>,
    pub brackets: Vec<BracketRequest>,
    pub suite: SuiteSettings,
}

impl SpecDocument {
    pub fn poisson_bivector(&self) -> Option<&MultiVectorField> {
        match self.tensors.get(self.poisson.as_ref()?)? {
            NamedTensor::Multivector(w) => Some(w),
            _ => None,
        }
    }
}

pub fn parse_spec(path: &Path) -> Result<SpecDocument, SpecError> {
    let text = std::fs::read_to_string(path).map_err(|e| parse_err(&path.display().to_string(), e.to_string()))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "spec".into());
    parse_spec_str(&text, &name)
}

pub fn parse_spec_str(text: &str, name: &str) -> Result<SpecDocument, SpecError> {
    let root: Value = serde_json::from_str(text).map_err(|e| parse_err("$", e.to_string()))?;
    let obj = object(&root, "$")?;
    let algebra = parse_algebra(field(obj, "algebra", "$")?, "$.algebra")?;
    let frobenius = match obj.get("frobenius") {
        None => None,
        Some(v) => Some(parse_frobenius(v, &algebra, "$.frobenius")?),
    };
    let manifold_dim = uint(field(obj, "manifold_dim", "$")?, "$.manifold_dim")?;
    if manifold_dim == 0 {
        return Err(parse_err("$.manifold_dim", "must be at least 1"));
    }
    let mut functions = BTreeMap::new();
    if let Some(v) = obj.get("functions") {
        for (k, f) in object(v, "$.functions")? {
            let p = format!("$.functions.{k}");
            functions.insert(k.clone(), parse_poly(f, manifold_dim, &p)?);
        }
    }
    let mut tensors = BTreeMap::new();
    if let Some(v) = obj.get("tensors") {
        for (k, t) in object(v, "$.tensors")? {
            tensors.insert(k.clone(), parse_tensor(t, &format!("$.tensors.{k}"))?);
        }
    }
    let poisson = match obj.get("poisson") {
        None => None,
        Some(v) => {
            let n = string(v, "$.poisson")?;
            match tensors.get(n) {
                None => {
                    return Err(SpecError::UnknownReference {
                        path: "$.poisson".into(),
                        name: n.to_string(),
                    })
                }
                Some(NamedTensor::Multivector(w)) if w.degree() == 2 => {}
                Some(_) => return Err(parse_err("$.poisson", format!("`{n}` is not a bivector"))),
            }
            Some(n.to_string())
        }
    };
    let density = match obj.get("density") {
        None => None,
        Some(v) => {
            let d = object(v, "$.density")?;
            let terms = field(d, "log_density", "$.density")?;
            Some(LogDensity::new(parse_poly(
                terms,
                manifold_dim,
                "$.density.log_density",
            )?))
        }
    };
    let mut epsilons = Vec::new();
    if let Some(v) = obj.get("epsilon") {
        for (i, e) in array(v, "$.epsilon")?.iter().enumerate() {
            epsilons.push(parse_element(e, &algebra, &format!("$.epsilon[{i}]"))?);
        }
    }
    let mut lifts = Vec::new();
    if let Some(v) = obj.get("lifts") {
        for (i, r) in array(v, "$.lifts")?.iter().enumerate() {
            let p = format!("$.lifts[{i}]");
            let r = object(r, &p)?;
            let tensor = reference(field(r, "tensor", &p)?, &tensors, &format!("{p}.tensor"))?;
            let lift = parse_lift(field(r, "lift", &p)?, &algebra, &format!("{p}.lift"))?;
            lifts.push(LiftRequest { tensor, lift });
        }
    }
    let mut brackets = Vec::new();
    if let Some(v) = obj.get("brackets") {
        for (i, r) in array(v, "$.brackets")?.iter().enumerate() {
            let p = format!("$.brackets[{i}]");
            let r = object(r, &p)?;
            let left = reference(field(r, "left", &p)?, &tensors, &format!("{p}.left"))?;
            let right = reference(field(r, "right", &p)?, &tensors, &format!("{p}.right"))?;
            brackets.push(BracketRequest { left, right });
        }
    }
    let mut suite = SuiteSettings::default();
    if let Some(v) = obj.get("suite") {
        let s = object(v, "$.suite")?;
        if let Some(seed) = s.get("seed") {
            suite.seed = Some(
                seed.as_u64()
                    .ok_or_else(|| parse_err("$.suite.seed", "expected an unsigned integer"))?,
            );
        }
        if let Some(c) = s.get("cases") {
            suite.cases = Some(uint(c, "$.suite.cases")?);
        }
    }
    for (k, t) in &tensors {
        if t.dim() != manifold_dim {
            return Err(parse_err(
                &format!("$.tensors.{k}.dim"),
                format!("tensor lives on R^{} but manifold_dim is {manifold_dim}", t.dim()),
            ));
        }
    }
    Ok(SpecDocument {
        name: name.to_string(),
        algebra,
        frobenius,
        manifold_dim,
        functions,
        tensors,
        poisson,
        density,
        epsilons,
        lifts,
        brackets,
        suite,
    })
}

type Object = serde_json::Map<String, Value>;

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Object, SpecError> {
    v.as_object().ok_or_else(|| parse_err(path, "expected an object"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, SpecError> {
    v.as_array().ok_or_else(|| parse_err(path, "expected an array"))
}

fn string<'a>(v: &'a Value, path: &str) -> Result<&'a str, SpecError> {
    v.as_str().ok_or_else(|| parse_err(path, "expected a string"))
}

fn field<'a>(obj: &'a Object, key: &str, path: &str) -> Result<&'a Value, SpecError> {
    obj.get(key)
        .ok_or_else(|| parse_err(path, format!("missing field `{key}`")))
}

fn uint(v: &Value, path: &str) -> Result<usize, SpecError> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| parse_err(path, "expected an unsigned integer"))
}

fn reference(v: &Value, tensors: &BTreeMap<String, NamedTensor>, path: &str) -> Result<String, SpecError> {
    let n = string(v, path)?;
    if tensors.contains_key(n) {
        Ok(n.to_string())
    } else {
        Err(SpecError::UnknownReference {
            path: path.to_string(),
            name: n.to_string(),
        })
    }
}

/// A rational written as `"num/den"`, `"num"` or a JSON integer.
fn rational(v: &Value, path: &str) -> Result<Rat, SpecError> {
    let bad = |s: String| SpecError::BadRational {
        path: path.to_string(),
        value: s,
    };
    match v {
        Value::String(s) => parse_rat(s).ok_or_else(|| bad(s.clone())),
        Value::Number(n) if n.is_i64() => Ok(weil_core::rational::int(n.as_i64().expect("checked"))),
        other => Err(bad(other.to_string())),
    }
}

fn rationals(v: &Value, path: &str) -> Result<Vec<Rat>, SpecError> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, r)| rational(r, &format!("{path}[{i}]")))
        .collect()
}

fn parse_algebra(v: &Value, path: &str) -> Result<WeilAlgebra, SpecError> {
    let obj = object(v, path)?;
    if let Some(n) = obj.get("plural") {
        let n = uint(n, &format!("{path}.plural"))?;
        if n == 0 {
            return Err(parse_err(
                &format!("{path}.plural"),
                "the plural-number order must be at least 1",
            ));
        }
        return Ok(WeilAlgebra::plural(n));
    }
    let d = uint(field(obj, "dim", path)?, &format!("{path}.dim"))?;
    let gp = format!("{path}.gamma");
    let rows = array(field(obj, "gamma", path)?, &gp)?;
    let mut gamma = Vec::with_capacity(rows.len());
    for (a, row) in rows.iter().enumerate() {
        let cols = array(row, &format!("{gp}[{a}]"))?;
        let mut out = Vec::with_capacity(cols.len());
        for (b, entry) in cols.iter().enumerate() {
            out.push(rationals(entry, &format!("{gp}[{a}][{b}]"))?);
        }
        gamma.push(out);
    }
    WeilAlgebra::from_constants(d, &gamma).map_err(|e| parse_err(path, e.to_string()))
}

fn parse_frobenius(v: &Value, alg: &WeilAlgebra, path: &str) -> Result<FrobeniusStructure, SpecError> {
    let obj = object(v, path)?;
    let pp = format!("{path}.p");
    let p = rationals(field(obj, "p", path)?, &pp)?;
    if p.len() != alg.dim() {
        return Err(parse_err(
            &pp,
            format!("expected {} entries, found {}", alg.dim(), p.len()),
        ));
    }
    FrobeniusStructure::attach(alg, &p).map_err(|e| parse_err(path, e.to_string()))
}

fn parse_element(v: &Value, alg: &WeilAlgebra, path: &str) -> Result<AlgebraElement, SpecError> {
    let coords = rationals(v, path)?;
    alg.element(coords).map_err(|e| parse_err(path, e.to_string()))
}

fn parse_lift(v: &Value, alg: &WeilAlgebra, path: &str) -> Result<Lift, SpecError> {
    match v {
        Value::String(s) if s == "complete" => Ok(Lift::Complete),
        Value::String(s) if s == "vertical" => Ok(Lift::Vertical),
        Value::Object(o) if o.contains_key("a") => {
            let a = uint(&o["a"], &format!("{path}.a"))?;
            if a >= alg.dim() {
                return Err(parse_err(&format!("{path}.a"), format!("basis index {a} out of range")));
            }
            Ok(Lift::Basis(a))
        }
        Value::Object(o) if o.contains_key("epsilon") => Ok(Lift::Epsilon(parse_element(
            &o["epsilon"],
            alg,
            &format!("{path}.epsilon"),
        )?)),
        _ => Err(parse_err(
            path,
            "expected \"complete\", \"vertical\", {\"a\": k} or {\"epsilon\": [...]}",
        )),
    }
}

/// Polynomial as a list of `{"c": rational, "e": [exponents]}` terms.
fn parse_poly(v: &Value, nvars: usize, path: &str) -> Result<Polynomial, SpecError> {
    let mut terms = Vec::new();
    for (i, t) in array(v, path)?.iter().enumerate() {
        let tp = format!("{path}[{i}]");
        let obj = object(t, &tp)?;
        let c = rational(field(obj, "c", &tp)?, &format!("{tp}.c"))?;
        let ep = format!("{tp}.e");
        let exps: Vec<u32> = array(field(obj, "e", &tp)?, &ep)?
            .iter()
            .map(|e| e.as_u64().and_then(|n| u32::try_from(n).ok()))
            .collect::<Option<_>>()
            .ok_or_else(|| parse_err(&ep, "expected non-negative integer exponents"))?;
        if exps.len() != nvars {
            return Err(parse_err(
                &ep,
                format!("expected {nvars} exponents, found {}", exps.len()),
            ));
        }
        terms.push((c, exps));
    }
    Polynomial::from_terms(nvars, terms).map_err(|e| parse_err(path, e.to_string()))
}

fn indices(v: Option<&Value>, dim: usize, path: &str) -> Result<Vec<usize>, SpecError> {
    let Some(v) = v else { return Ok(Vec::new()) };
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| match x.as_u64() {
            Some(k) if k >= 1 && (k as usize) <= dim => Ok(k as usize - 1),
            _ => Err(parse_err(
                &format!("{path}[{i}]"),
                format!("expected an index in 1..={dim}"),
            )),
        })
        .collect()
}

fn parse_tensor(v: &Value, path: &str) -> Result<NamedTensor, SpecError> {
    let obj = object(v, path)?;
    let dim = uint(field(obj, "dim", path)?, &format!("{path}.dim"))?;
    let tp = format!("{path}.type");
    let ty = array(field(obj, "type", path)?, &tp)?;
    if ty.len() != 2 {
        return Err(parse_err(&tp, "expected [lower, upper]"));
    }
    let (lower, upper) = (uint(&ty[0], &format!("{tp}[0]"))?, uint(&ty[1], &format!("{tp}[1]"))?);
    let antisymmetric = match obj.get("antisymmetric") {
        None => lower == 0 || upper == 0,
        Some(b) => b
            .as_bool()
            .ok_or_else(|| parse_err(&format!("{path}.antisymmetric"), "expected a boolean"))?,
    };
    let cp = format!("{path}.components");
    let mut comps = Vec::new();
    for (i, c) in array(field(obj, "components", path)?, &cp)?.iter().enumerate() {
        let p = format!("{cp}[{i}]");
        let c = object(c, &p)?;
        let lo = indices(c.get("lower"), dim, &format!("{p}.lower"))?;
        let up = indices(c.get("upper"), dim, &format!("{p}.upper"))?;
        if lo.len() != lower || up.len() != upper {
            return Err(parse_err(
                &p,
                format!("expected {lower} lower and {upper} upper indices"),
            ));
        }
        let poly = parse_poly(field(c, "poly", &p)?, dim, &format!("{p}.poly"))?;
        comps.push((lo, up, poly));
    }
    if antisymmetric && lower > 0 && upper > 0 {
        return Err(parse_err(
            path,
            "antisymmetric tensors must be purely covariant or contravariant",
        ));
    }
    // scalars are degree-0 multivectors, so brackets accept them as functions
    if antisymmetric && upper == 0 && lower > 0 {
        return alternating::<weil_core::tensor::Lower>(dim, lower, comps, path).map(NamedTensor::Form);
    }
    if antisymmetric {
        return alternating::<weil_core::tensor::Upper>(dim, upper, comps, path).map(NamedTensor::Multivector);
    }
    let mut t = MixedTensorField::zero(dim, lower, upper);
    for (lo, up, p) in comps {
        let key: Vec<usize> = lo.into_iter().chain(up).collect();
        t.add_at(&key, &p);
    }
    Ok(NamedTensor::Mixed(t))
}

fn alternating<V: Variance>(
    dim: usize,
    degree: usize,
    comps: Vec<(Vec<usize>, Vec<usize>, Polynomial)>,
    path: &str,
) -> Result<Alternating<V>, SpecError> {
    if degree > dim {
        return Err(parse_err(path, format!("degree {degree} exceeds dimension {dim}")));
    }
    let mut out = Alternating::zero(dim, degree);
    for (lo, up, p) in comps {
        let key = if lo.is_empty() { up } else { lo };
        out.add_at(&key, &p);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"{
        "algebra": {"plural": 1},
        "frobenius": {"p": ["0", "1"]},
        "manifold_dim": 2,
        "tensors": {
            "w": {"dim": 2, "type": [0, 2], "components": [
                {"upper": [2, 1], "poly": [{"c": "-1", "e": [1, 0]}]}
            ]}
        },
        "poisson": "w",
        "density": {"log_density": []}
    }"#;

    #[test]
    fn parses_and_canonicalizes() {
        let doc = parse_spec_str(BASE, "t").unwrap();
        assert_eq!(doc.poisson_bivector(), Some(&weil_core::fixtures::linear_plane()));
        assert_eq!(doc.density, Some(LogDensity::zero(2)));
    }

    #[test]
    fn reports_bad_rationals_with_path() {
        let text = BASE.replace(r#"["0", "1"]"#, r#"["1/0", "1"]"#);
        let err = parse_spec_str(&text, "t").unwrap_err();
        assert_eq!(
            err,
            SpecError::BadRational {
                path: "$.frobenius.p[0]".into(),
                value: "1/0".into()
            }
        );
    }

    #[test]
    fn reports_unknown_references() {
        let text = BASE.replace(r#""poisson": "w""#, r#""poisson": "v""#);
        assert!(matches!(parse_spec_str(&text, "t"), Err(SpecError::UnknownReference { name, .. }) if name == "v"));
    }

    #[test]
    fn rejects_out_of_range_indices() {
        let text = BASE.replace("[2, 1]", "[3, 1]");
        let err = parse_spec_str(&text, "t").unwrap_err();
        assert!(
            err.to_string().starts_with("$.tensors.w.components[0].upper[0]"),
            "{err}"
        );
    }
}
