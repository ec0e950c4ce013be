use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use weil_cli::commands::{run_command, Command, RunOptions};
use weil_cli::report::{render_json, Format};
use weil_cli::spec::parse_spec;

/// Exact verification of lifts to Weil bundles and their Poisson geometry.
#[derive(Parser)]
#[command(name = "weil", version)]
struct Args {
    command: Command,
    /// JSON spec file.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Suite seed; overrides the spec file.
    #[arg(long)]
    seed: Option<u64>,
    /// Randomized cases per check; overrides the spec file.
    #[arg(long)]
    cases: Option<usize>,
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let doc = match args.spec.as_deref().map(parse_spec).transpose() {
        Ok(doc) => doc,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let settings = doc.as_ref().map(|d| d.suite.clone()).unwrap_or_default();
    let opts = RunOptions {
        seed: args.seed.or(settings.seed).unwrap_or(42),
        cases: args.cases.or(settings.cases).unwrap_or(20),
    };
    match run_command(args.command, doc.as_ref(), &opts) {
        Ok(out) => {
            match args.format {
                Format::Json => print!("{}", render_json(&out.json)),
                Format::Human => print!("{}", out.human),
            }
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
