//! `halg`: scenario runner over the graded-algebra laboratory.
//!
//! Exit codes: 0 when every assertion of the scenario passes, 2 on an
//! assertion failure (the report is still written), 1 on usage or input
//! errors.

mod config;
mod report;
mod scenarios;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{load_config_file, parse_ladder, resolve, Overrides, Scenario};

#[derive(Parser)]
#[command(name = "halg", version, about = "Graded Hilbert-algebra laboratory scenario runner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and emit a JSON report (plus CSV residual table).
    Run(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Scenario to execute.
    #[arg(value_enum)]
    scenario: Scenario,
    /// Optional TOML configuration file; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Algebra model: pointwise, matrix or transported.
    #[arg(long)]
    model: Option<String>,
    /// Operator family: weyl-heisenberg:<n> | random:<N>,<d>,<seed> | file:<path>.
    #[arg(long)]
    family: Option<String>,
    /// Truncation size of the model.
    #[arg(long)]
    dim: Option<usize>,
    /// Truncation ladder, comma separated (e.g. 16,32,64).
    #[arg(long)]
    ladder: Option<String>,
    /// Seed determining every sampled quantity.
    #[arg(long)]
    seed: Option<u64>,
    /// Tolerance for residual assertions.
    #[arg(long)]
    tol: Option<f64>,
    /// Sample count (corpus size, random pairs, ...).
    #[arg(long)]
    samples: Option<usize>,
    /// Planted defect, e.g. involution=transpose or product=dropconj.
    #[arg(long)]
    mutate: Option<String>,
    /// Element file for moyal-check on a custom element.
    #[arg(long)]
    element: Option<PathBuf>,
    /// Report path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    // usage errors are exit 1; clap's default would be 2, which is
    // reserved for assertion failures
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(pass) => {
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let Command::Run(args) = cli.command;
    let file = match &args.config {
        Some(path) => Some(load_config_file(path)?),
        None => None,
    };
    let ladder = match &args.ladder {
        Some(spec) => Some(parse_ladder(spec)?),
        None => None,
    };
    let overrides = Overrides {
        model: args.model,
        family: args.family,
        dim: args.dim,
        ladder,
        seed: args.seed,
        tol: args.tol,
        samples: args.samples,
        mutate: args.mutate,
        element: args.element,
        out: args.out,
    };
    let cfg = resolve(args.scenario, file, overrides)?;
    let outcome = scenarios::run_scenario(&cfg)?;
    report::emit(&cfg, &outcome)?;
    Ok(outcome.pass)
}
