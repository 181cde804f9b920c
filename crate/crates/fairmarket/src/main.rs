use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fairmarket::config::{Format, TargetSpec};
use fairmarket::suites::Suite;
use fairmarket::{cmd_compare, cmd_solve, cmd_sweep, cmd_verify, CliError, Overrides, ScenarioKind};

#[derive(Parser)]
#[command(name = "fairmarket", version, about = "Equilibria of a data market with and without a demographic target")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScenarioArg {
    Baseline,
    Intervention,
}

#[derive(clap::Args)]
struct Output {
    /// Write here instead of the config's output path (or stdout).
    #[arg(long)]
    output: Option<PathBuf>,
    /// csv or json.
    #[arg(long)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one scenario.
    Solve {
        config: PathBuf,
        #[arg(long, value_enum, default_value = "baseline")]
        scenario: ScenarioArg,
        /// `uniform` or comma-separated weights; overrides [intervention].
        #[arg(long)]
        target: Option<TargetSpec>,
        #[command(flatten)]
        out: Output,
    },
    /// Solve both scenarios and report utility ratios.
    Compare {
        config: PathBuf,
        #[arg(long)]
        target: Option<TargetSpec>,
        #[command(flatten)]
        out: Output,
    },
    /// Ratios along the config's growth sequence.
    Sweep {
        config: PathBuf,
        #[arg(long)]
        target: Option<TargetSpec>,
        /// Comma-separated buyer counts; overrides the config's probes.
        #[arg(long, value_delimiter = ',')]
        probes: Option<Vec<usize>>,
        #[command(flatten)]
        out: Output,
    },
    /// Run randomized verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let flags = |target, out: Output, probes| Overrides { target, output: out.output, format: out.format, probes };
    match cli.command {
        Command::Solve { config, scenario, target, out } => {
            let kind = match scenario {
                ScenarioArg::Baseline => ScenarioKind::Baseline,
                ScenarioArg::Intervention => ScenarioKind::Intervention,
            };
            cmd_solve(&config, kind, &flags(target, out, None)).map(|()| true)
        }
        Command::Compare { config, target, out } => cmd_compare(&config, &flags(target, out, None)).map(|()| true),
        Command::Sweep { config, target, probes, out } => {
            cmd_sweep(&config, &flags(target, out, probes)).map(|()| true)
        }
        Command::Verify { suite, seed, trials } => cmd_verify(suite, seed, trials, &mut std::io::stdout().lock()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
