//! Command layer over `fairmarket-core`: config files, reports, suites.

pub mod config;
pub mod report;
pub mod suites;

use std::io::Write as _;
use std::path::{Path, PathBuf};

use fairmarket_core::equilibrium::{solve_baseline, solve_intervention};
use fairmarket_core::fairness::check_backfire;
use fairmarket_core::growth::{amortization_report, probe, BuyerSequence, MarketStub, RatioPoint, RatioTrace};
use fairmarket_core::model::TargetVector;
use serde::Serialize;
use thiserror::Error;

use crate::config::{ConfigError, Format, RunConfig, TargetSpec};
use crate::report::{BaselineReport, ComparisonReport, InterventionReport, SweepReport};
use crate::suites::Suite;

/// Tolerance on `|UR - 1|` for the sweep's amortization verdict.
pub const SWEEP_TOLERANCE: f64 = 0.01;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Config { path: PathBuf, source: ConfigError },
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Model(#[from] fairmarket_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } | CliError::Usage(_) | CliError::Model(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScenarioKind {
    Baseline,
    Intervention,
}

/// Flags shared by the config-driven commands.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub target: Option<TargetSpec>,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
    pub probes: Option<Vec<usize>>,
}

pub fn load(path: &Path) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
    config::parse(&text).map_err(|source| CliError::Config { path: path.to_owned(), source })
}

fn target_for(cfg: &RunConfig, path: &Path, flags: &Overrides) -> Result<Option<TargetVector>, CliError> {
    let spec = flags.target.as_ref().or(cfg.intervention.as_ref());
    spec.map(|s| s.resolve(cfg.groups.len()))
        .transpose()
        .map_err(|source| CliError::Config { path: path.to_owned(), source })
}

/// Render `value` as JSON or with `csv`, then write it where the flags or
/// config say (stdout when neither gives a path).
fn emit<T: Serialize>(cfg: &RunConfig, flags: &Overrides, value: &T, csv: impl FnOnce() -> String) -> Result<(), CliError> {
    let format = flags.format.or(cfg.output.format).unwrap_or(Format::Csv);
    let body = match format {
        Format::Csv => csv(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
            s.push('\n');
            s
        }
    };
    match flags.output.as_ref().or(cfg.output.path.as_ref()) {
        Some(path) => std::fs::write(path, body).map_err(|source| CliError::Io { path: path.clone(), source }),
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source }),
    }
}

pub fn cmd_solve(path: &Path, scenario: ScenarioKind, flags: &Overrides) -> Result<(), CliError> {
    let cfg = load(path)?;
    let market = cfg.market();
    match scenario {
        ScenarioKind::Baseline => {
            let r = BaselineReport::new(&market, &solve_baseline(&market)?);
            emit(&cfg, flags, &r, || r.to_csv())
        }
        ScenarioKind::Intervention => {
            let target = target_for(&cfg, path, flags)?.ok_or_else(|| {
                CliError::Usage("the intervention scenario needs --target or an [intervention] section".into())
            })?;
            let r = InterventionReport::new(&market, &solve_intervention(&market, &target)?);
            emit(&cfg, flags, &r, || r.to_csv())
        }
    }
}

pub fn cmd_compare(path: &Path, flags: &Overrides) -> Result<(), CliError> {
    let cfg = load(path)?;
    let target = target_for(&cfg, path, flags)?
        .ok_or_else(|| CliError::Usage("compare needs --target or an [intervention] section".into()))?;
    let market = cfg.market();
    let base = solve_baseline(&market)?;
    let fair = solve_intervention(&market, &target)?;
    let formation = check_backfire(&market, &target)?;
    let r = ComparisonReport::new(&market, &base, &fair, &formation);
    emit(&cfg, flags, &r, || r.to_csv())
}

/// Worker count from `FAIRMARKET_THREADS`, else the machine's parallelism.
pub fn thread_budget() -> usize {
    std::env::var("FAIRMARKET_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, usize::from))
}

/// Probe every `N` on up to `threads` workers. Each probe is independent,
/// and results are placed by index, so the trace is the same for any
/// thread count.
pub fn parallel_sweep(
    sequence: &BuyerSequence,
    stub: &MarketStub,
    target: &TargetVector,
    probes: &[usize],
    threads: usize,
) -> fairmarket_core::Result<RatioTrace> {
    let threads = threads.clamp(1, probes.len().max(1));
    let mut slots: Vec<Option<fairmarket_core::Result<RatioPoint>>> = (0..probes.len()).map(|_| None).collect();
    std::thread::scope(|scope| {
        let chunks = slots.chunks_mut(probes.len().div_ceil(threads).max(1));
        let mut start = 0;
        for chunk in chunks {
            let ns = &probes[start..start + chunk.len()];
            start += chunk.len();
            scope.spawn(move || {
                for (slot, &n) in chunk.iter_mut().zip(ns) {
                    *slot = Some(probe(sequence, stub, target, n));
                }
            });
        }
    });
    let points = slots.into_iter().map(|s| s.expect("every slot filled")).collect::<Result<Vec<_>, _>>()?;
    RatioTrace::from_points(points)
}

pub fn cmd_sweep(path: &Path, flags: &Overrides) -> Result<(), CliError> {
    let cfg = load(path)?;
    let growth = cfg
        .growth
        .as_ref()
        .ok_or_else(|| CliError::Usage("sweep needs a [growth] section".into()))?;
    let target = target_for(&cfg, path, flags)?.unwrap_or_else(|| TargetVector::uniform(cfg.groups.len()));
    let probes = flags.probes.clone().unwrap_or_else(|| growth.probes.clone());
    let stub = cfg.stub();
    let trace = parallel_sweep(&growth.sequence, &stub, &target, &probes, thread_budget())?;
    let verdicts = amortization_report(&trace, SWEEP_TOLERANCE);
    let market = stub.with_buyers(growth.sequence.panel(0)?)?;
    let r = SweepReport::new(&market, &trace, &verdicts, SWEEP_TOLERANCE);
    emit(&cfg, flags, &r, || r.to_csv(cfg.sellers))
}

/// Run the suites, print a line per suite, and report overall success.
pub fn cmd_verify(suite: Suite, seed: u64, trials: usize, out: &mut impl std::io::Write) -> Result<bool, CliError> {
    let io = |source| CliError::Io { path: PathBuf::from("<stdout>"), source };
    let mut ok = true;
    for r in suites::run(suite, seed, trials) {
        writeln!(out, "{r}").map_err(io)?;
        for note in &r.notes {
            writeln!(out, "  {note}").map_err(io)?;
        }
        if let Some(c) = &r.counterexample {
            writeln!(out, "  first counterexample:").map_err(io)?;
            for line in c.lines() {
                writeln!(out, "    {line}").map_err(io)?;
            }
        }
        ok &= r.passed();
    }
    Ok(ok)
}
