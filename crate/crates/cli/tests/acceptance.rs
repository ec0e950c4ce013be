//! Acceptance criteria 1–10, one PASS/FAIL line each.
//!
//! Criterion 1 asks for `det‖p_cγ_{ab}^c‖ = p_n^{n+1}` on `R(ε^n)`. The determinant
//! of that anti-diagonal Hankel matrix is `(−1)^{n(n+1)/2} p_n^{n+1}`, so the
//! literal claim fails for `n = 1, 2`. It is listed in `KNOWN_UNATTAINABLE`: the
//! run reports it as FAIL but does not abort, and aborts if it ever passes.

use std::process::{Command, ExitCode};

use weil_cli::report::{envelope, render_json, suite_json};
use weil_cli::suite::{run_suite, SuiteConfig, SuiteOutcome};

const SEED: u64 = 42;
const CASES: usize = 20;

const KNOWN_UNATTAINABLE: &[(u8, &str)] = &[(
    1,
    "the determinant carries the reversal sign (−1)^{n(n+1)/2}; \
     frobenius.truncated_determinant_signed checks the corrected value",
)];

const TITLES: [&str; 10] = [
    "Frobenius criterion on R(ε^n)",
    "prolongation matches the Taylor oracle",
    "homomorphism and commutation suite",
    "lift identity suite",
    "naturality under polynomial shears",
    "closed forms on TM",
    "Poisson suite",
    "modular field of lifted structures",
    "exactness witnesses",
    "deterministic json reports",
];

fn failures(out: &SuiteOutcome, criterion: u8) -> Vec<String> {
    out.checks
        .iter()
        .filter(|c| c.criterion == criterion && !c.passed())
        .map(|c| {
            let cx = c.counterexample.as_ref().expect("failed checks carry counterexamples");
            format!(
                "{} [{}] case {}: {} :: {}",
                c.name, c.anchor, cx.case, cx.inputs, cx.detail
            )
        })
        .collect()
}

fn binary_report() -> Result<String, String> {
    let spec = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/dual_so3.json");
    let out = Command::new(env!("CARGO_BIN_EXE_weil"))
        .args([
            "verify",
            "--spec",
            spec,
            "--seed",
            &SEED.to_string(),
            "--cases",
            &CASES.to_string(),
        ])
        .args(["--format", "json"])
        .output()
        .map_err(|e| e.to_string())?;
    if out.status.code() == Some(2) {
        return Err(String::from_utf8_lossy(&out.stderr).into_owned());
    }
    String::from_utf8(out.stdout).map_err(|e| e.to_string())
}

fn determinism(out: &SuiteOutcome) -> Result<(), String> {
    let again = run_suite(&SuiteConfig::new(SEED, CASES));
    let a = render_json(&envelope("verify", out.passed(), suite_json(out)));
    let b = render_json(&envelope("verify", again.passed(), suite_json(&again)));
    if a != b {
        return Err("library reports differ between runs".into());
    }
    let (x, y) = (binary_report()?, binary_report()?);
    if x != y {
        return Err("`weil verify --format json` output differs between runs".into());
    }
    if x.is_empty() {
        return Err("`weil verify` produced no output".into());
    }
    Ok(())
}

fn main() -> ExitCode {
    let out = run_suite(&SuiteConfig::new(SEED, CASES));
    let mut ok = true;
    for (k, title) in TITLES.iter().enumerate() {
        let criterion = k as u8 + 1;
        let problems = if criterion == 10 {
            determinism(&out).err().into_iter().collect()
        } else {
            failures(&out, criterion)
        };
        let known = KNOWN_UNATTAINABLE.iter().find(|(c, _)| *c == criterion);
        let verdict = if problems.is_empty() { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {criterion:>2}: {title}");
        for p in &problems {
            println!("     {p}");
        }
        match (known, problems.is_empty()) {
            (Some((_, why)), false) => println!("     known unattainable: {why}"),
            (Some(_), true) => {
                println!("     listed as unattainable but passed");
                ok = false;
            }
            (None, false) => ok = false,
            (None, true) => {}
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
