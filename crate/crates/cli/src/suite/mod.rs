//! The verification suite: seeded randomized exact checks of every identity the
//! library implements, plus the brute-force normalization constants they rely on.

mod algebraic;
mod calibrate;
mod lifting;
mod poisson;

use std::fmt::Display;

use rayon::prelude::*;
use weil_core::algebra::WeilAlgebra;
use weil_core::frobenius::FrobeniusStructure;
use weil_core::gen::Gen;
use weil_core::poisson::LogDensity;
use weil_core::poly::Polynomial;
use weil_core::tensor::{Alternating, MixedTensorField, MultiVectorField, Variance};

pub use calibrate::{Calibration, Calibrations};

/// Why a single case failed: the inputs that reproduce it and the first mismatch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseFailure {
    pub inputs: String,
    pub detail: String,
}

pub type CaseResult = Result<(), CaseFailure>;

pub(crate) fn fail(inputs: impl Into<String>, detail: impl Into<String>) -> CaseFailure {
    CaseFailure {
        inputs: inputs.into(),
        detail: detail.into(),
    }
}

pub(crate) fn ensure(cond: bool, inputs: impl FnOnce() -> String, detail: impl FnOnce() -> String) -> CaseResult {
    if cond {
        Ok(())
    } else {
        Err(fail(inputs(), detail()))
    }
}

/// Attaches reproduction inputs to domain errors.
pub(crate) trait OrFail<T> {
    fn or_fail(self, inputs: impl FnOnce() -> String) -> Result<T, CaseFailure>;
}

impl<T, E: Display> OrFail<T> for Result<T, E> {
    fn or_fail(self, inputs: impl FnOnce() -> String) -> Result<T, CaseFailure> {
        self.map_err(|e| fail(inputs(), format!("error: {e}")))
    }
}

fn one_based(key: &[usize]) -> String {
    let parts: Vec<String> = key.iter().map(|i| (i + 1).to_string()).collect();
    format!("[{}]", parts.join(","))
}

pub(crate) fn same_alt<V: Variance>(
    lhs: &Alternating<V>,
    rhs: &Alternating<V>,
    inputs: impl FnOnce() -> String,
) -> CaseResult {
    if lhs.degree() != rhs.degree() || lhs.dim() != rhs.dim() {
        return Err(fail(
            inputs(),
            format!(
                "shape mismatch: degree {} on R^{} vs degree {} on R^{}",
                lhs.degree(),
                lhs.dim(),
                rhs.degree(),
                rhs.dim()
            ),
        ));
    }
    match lhs.first_difference(rhs) {
        None => Ok(()),
        Some(k) => Err(fail(
            inputs(),
            format!(
                "component {}: lhs = {}, rhs = {}",
                one_based(&k),
                lhs.get(&k),
                rhs.get(&k)
            ),
        )),
    }
}

pub(crate) fn same_mixed(
    lhs: &MixedTensorField,
    rhs: &MixedTensorField,
    inputs: impl FnOnce() -> String,
) -> CaseResult {
    if (lhs.dim(), lhs.lower(), lhs.upper()) != (rhs.dim(), rhs.lower(), rhs.upper()) {
        return Err(fail(inputs(), "tensor type mismatch".to_string()));
    }
    match lhs.first_difference(rhs) {
        None => Ok(()),
        Some(k) => Err(fail(
            inputs(),
            format!(
                "component {}: lhs = {}, rhs = {}",
                one_based(&k),
                lhs.get(&k),
                rhs.get(&k)
            ),
        )),
    }
}

pub(crate) fn same_poly(lhs: &Polynomial, rhs: &Polynomial, inputs: impl FnOnce() -> String) -> CaseResult {
    ensure(lhs == rhs, inputs, || format!("lhs = {lhs}, rhs = {rhs}"))
}

/// A Poisson bivector and density supplied by a spec file, checked alongside the
/// built-in fixtures.
#[derive(Debug, Clone)]
pub struct ExtraFixture {
    pub name: String,
    pub frobenius: FrobeniusStructure,
    pub bivector: MultiVectorField,
    pub density: LogDensity,
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    pub cases: usize,
    pub extra: Vec<ExtraFixture>,
}

impl SuiteConfig {
    pub fn new(seed: u64, cases: usize) -> Self {
        SuiteConfig {
            seed,
            cases,
            extra: Vec::new(),
        }
    }
}

/// How many cases a check runs.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Cases {
    /// Randomized; at least this many regardless of the configured count.
    Random { min: usize },
    /// A fixed enumeration of this many deterministic instances.
    Fixed(usize),
}

pub(crate) const RANDOM: Cases = Cases::Random { min: 0 };

pub(crate) struct Ctx<'a> {
    pub cal: &'a Calibrations,
    pub config: &'a SuiteConfig,
}

pub(crate) type CaseFn = fn(&Ctx, &mut Gen, usize) -> CaseResult;

pub(crate) struct Check {
    pub name: &'static str,
    pub anchor: &'static str,
    pub criterion: u8,
    pub cases: Cases,
    pub run: CaseFn,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub case: usize,
    pub case_seed: u64,
    pub inputs: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckRecord {
    pub name: String,
    pub anchor: String,
    pub criterion: u8,
    pub cases: usize,
    pub counterexample: Option<Counterexample>,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub seed: u64,
    pub cases: usize,
    pub calibrations: Calibrations,
    pub checks: Vec<CheckRecord>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckRecord::passed)
    }

    pub fn criterion_passed(&self, criterion: u8) -> bool {
        self.checks
            .iter()
            .filter(|c| c.criterion == criterion)
            .all(CheckRecord::passed)
    }
}

fn name_hash(name: &str) -> u64 {
    // FNV-1a, so check streams do not depend on registration order
    name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

fn run_check(check: &Check, ctx: &Ctx) -> CheckRecord {
    let n = match check.cases {
        Cases::Random { min } => ctx.config.cases.max(min),
        Cases::Fixed(n) => n,
    };
    let mut master = Gen::new(ctx.config.seed ^ name_hash(check.name));
    let mut counterexample = None;
    for case in 0..n {
        let case_seed = master.next_seed();
        let mut g = Gen::new(case_seed);
        if let Err(f) = (check.run)(ctx, &mut g, case) {
            counterexample = Some(Counterexample {
                case,
                case_seed,
                inputs: f.inputs,
                detail: f.detail,
            });
            break;
        }
    }
    CheckRecord {
        name: check.name.to_string(),
        anchor: check.anchor.to_string(),
        criterion: check.criterion,
        cases: n,
        counterexample,
    }
}

pub(crate) fn registry() -> Vec<Check> {
    let mut all = Vec::new();
    all.extend(algebraic::checks());
    all.extend(lifting::checks());
    all.extend(poisson::checks());
    all
}

/// Names of all registered checks with their criterion numbers.
pub fn check_names() -> Vec<(&'static str, u8)> {
    registry().iter().map(|c| (c.name, c.criterion)).collect()
}

/// Runs calibrations, then every check (concurrently), and returns the records sorted
/// by check name.
pub fn run_suite(config: &SuiteConfig) -> SuiteOutcome {
    let cal = Calibrations::determine(config.seed);
    let ctx = Ctx { cal: &cal, config };
    let checks = registry();
    let mut records: Vec<CheckRecord> = checks.par_iter().map(|c| run_check(c, &ctx)).collect();
    records.extend(poisson::extra_fixture_records(&ctx));
    records.sort_by(|a, b| a.name.cmp(&b.name));
    SuiteOutcome {
        seed: config.seed,
        cases: config.cases,
        calibrations: cal,
        checks: records,
    }
}

/// The fixture algebras with their standard covectors, cycled by case index.
pub(crate) fn fixture(case: usize) -> (String, FrobeniusStructure) {
    let mut all = weil_core::fixtures::standard_structures();
    let i = case % all.len();
    all.swap_remove(i)
}

/// A fixture algebra with either its standard covector or a random one, possibly in
/// a rebased Jordan–Hölder basis.
pub(crate) fn random_structure(g: &mut Gen, case: usize) -> (String, FrobeniusStructure) {
    let (name, f) = fixture(case);
    if g.coin() {
        return (name, f);
    }
    let rebased = g.coin();
    let alg: WeilAlgebra = if rebased {
        g.rebased(f.algebra())
    } else {
        f.algebra().clone()
    };
    let f = g.frobenius(&alg);
    let p: Vec<String> = f.p().iter().map(weil_core::rational::fmt_rat).collect();
    let tag = if rebased { " rebased" } else { "" };
    (format!("{name}{tag}, p = ({})", p.join(", ")), f)
}
