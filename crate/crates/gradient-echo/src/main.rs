//! Command-line front end: each subcommand reads a scenario configuration and
//! writes CSV/SVG artifacts plus a pass/fail summary.
//!
//! Exit codes: 0 all checks passed, 1 any check failed or a run error, 2
//! configuration error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use gradient_echo::experiments::scenario::{
    run_analytic, run_converge, run_fig4, run_fig5, run_network, run_scenario, run_series,
};
use gradient_echo::experiments::ScenarioConfig;
use gradient_echo::Error;

#[derive(Parser)]
#[command(name = "gradient-echo", version, about = "gradient-echo memory simulation toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// Scenario configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Output directory for CSV/SVG artifacts.
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Run the simulation scenario named in the config.
    Simulate(RunArgs),
    /// Closed-form self-checks (spectral round trip, ideal echo, chirp law).
    Analytic(RunArgs),
    /// Beamsplitter-network echo report for the configured stack.
    Network(RunArgs),
    /// Gradient-echo efficiencies against beta under multiple switching.
    Fig4(RunArgs),
    /// Transverse echo efficiencies against optical depth.
    Fig5(RunArgs),
    /// Grid-refinement study of the solver.
    Converge(RunArgs),
    /// Two memories in series with opposite gradients.
    Series(RunArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (args, runner): (&RunArgs, fn(&ScenarioConfig, &std::path::Path) -> gradient_echo::Result<_>) =
        match &cli.command {
            Command::Simulate(a) => (a, run_scenario),
            Command::Analytic(a) => (a, run_analytic),
            Command::Network(a) => (a, run_network),
            Command::Fig4(a) => (a, run_fig4),
            Command::Fig5(a) => (a, run_fig5),
            Command::Converge(a) => (a, run_converge),
            Command::Series(a) => (a, run_series),
        };

    let config = match ScenarioConfig::from_file(&args.config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("configuration error: {e}");
            return ExitCode::from(2);
        }
    };

    match runner(&config, &args.out) {
        Ok(summary) => {
            print!("{}", summary.render());
            if summary.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e @ (Error::Config { .. } | Error::UnknownScenario { .. })) => {
            eprintln!("configuration error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
