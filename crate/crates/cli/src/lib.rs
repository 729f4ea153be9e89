//! `derivsim` command line: `path`, `batch`, `grid`, `tornado`, `presets`.
//!
//! Exit codes: 0 success, 1 configuration or validation error, 2 I/O error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use derivsim_core::config::ConfigDocument;
use derivsim_core::mc::{self, ExperimentConfig, TerminalEvent, Trace};
use derivsim_core::options::{OptionTerms, SettlementReport};
use derivsim_core::report::{self, GridMetric};
use derivsim_core::{presets, ContractSpec, SimError};
use serde::Serialize;

/// Environment variable capping the worker-thread count.
pub const THREADS_ENV: &str = "DERIVSIM_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Sim(_) => 1,
            CliError::Io { .. } => 2,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "derivsim", version, about = "Monte Carlo risk simulator for DeFi derivatives")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, clap::Args)]
pub struct RunArgs {
    /// Experiment config (JSON).
    #[arg(short, long)]
    pub config: PathBuf,
    /// Output directory, created if missing.
    #[arg(short, long, default_value = ".")]
    pub out: PathBuf,
    /// Overrides market.master_seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Overrides experiment.replications.
    #[arg(short = 'n', long)]
    pub replications: Option<usize>,
    /// Artifacts to write; defaults to all that apply.
    #[arg(long, value_delimiter = ',')]
    pub format: Vec<Format>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate one path and write its trace.
    Path {
        #[command(flatten)]
        args: RunArgs,
        /// Overrides experiment.path_index.
        #[arg(long)]
        index: Option<u64>,
    },
    /// Batch of replications; writes batch.json.
    Batch {
        #[command(flatten)]
        args: RunArgs,
    },
    /// (sigma, L) sweep; writes grid.csv, grid.svg and friends.
    Grid {
        #[command(flatten)]
        args: RunArgs,
    },
    /// One-at-a-time sensitivity; writes tornado.json and tornado.svg.
    Tornado {
        #[command(flatten)]
        args: RunArgs,
    },
    /// List registered protocol presets.
    Presets {
        #[arg(long)]
        json: bool,
    },
}

struct Loaded {
    doc: ConfigDocument,
    config: ExperimentConfig,
}

impl RunArgs {
    fn load(&self) -> CliResult<Loaded> {
        let text = fs::read_to_string(&self.config).map_err(|source| CliError::Io {
            path: self.config.clone(),
            source,
        })?;
        let mut doc = ConfigDocument::from_json(&text)?;
        if let Some(seed) = self.seed {
            doc.market.master_seed = seed;
        }
        if let Some(n) = self.replications {
            doc.experiment.replications = n;
        }
        let config = doc.experiment_config()?;
        Ok(Loaded { doc, config })
    }

    fn wants(&self, f: Format) -> bool {
        self.format.is_empty() || self.format.contains(&f)
    }

    fn write(&self, name: &str, contents: &str) -> CliResult<PathBuf> {
        let io = |path: &Path| {
            let path = path.to_path_buf();
            move |source| CliError::Io { path, source }
        };
        fs::create_dir_all(&self.out).map_err(io(&self.out))?;
        let path = self.out.join(name);
        fs::write(&path, contents).map_err(io(&path))?;
        Ok(path)
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct BatchDocument<'a> {
    config: &'a ExperimentConfig,
    stats: derivsim_core::stats::BatchStats,
}

#[derive(Serialize)]
struct GridDocument<'a> {
    config: &'a ExperimentConfig,
    grid: &'a mc::GridResult,
}

#[derive(Serialize)]
struct TornadoDocument<'a> {
    config: &'a ExperimentConfig,
    tornado: &'a mc::TornadoResult,
}

fn pct(p: f64) -> String {
    format!("{:.1}%", 100.0 * p)
}

fn cmd_path(args: &RunArgs, index: Option<u64>) -> CliResult<String> {
    let Loaded { doc, config } = args.load()?;
    let index = index.unwrap_or(doc.experiment.path_index);
    let result = mc::run_single(&config, index)?;
    if args.wants(Format::Csv) {
        args.write("path_trace.csv", &report::trace_csv(&result.trace))?;
        args.write("path_prices.csv", &result.path.to_csv())?;
    }
    if args.wants(Format::Json) {
        args.write("path.json", &to_json(&result))?;
        if let (ContractSpec::ExpiringOption(spec), Trace::Option(_)) = (&config.contract, &result.trace) {
            let terms = OptionTerms::Expiring(spec.clone());
            let report = SettlementReport {
                side: terms.side(),
                s: terms.holder_sign() as i8,
                n: terms.contracts(),
                kappa: terms.multiplier(),
                strike: terms.strike(),
                premium: terms.premium(),
                terminal_price: result.path.prices[result.outcome.exit_step],
                realized_pnl: Some(result.outcome.realized_pnl),
            };
            args.write("settlement.json", &to_json(&report))?;
        }
    }
    let event = match result.outcome.event {
        TerminalEvent::ClosedAtHorizon => "closed at horizon",
        TerminalEvent::Liquidated => "liquidated",
        TerminalEvent::StopLoss => "stop-loss",
        TerminalEvent::TakeProfit => "take-profit",
        TerminalEvent::Settled => "settled",
        TerminalEvent::Redeemed => "redeemed",
    };
    Ok(format!(
        "path {index}: {event} at step {}, realized PnL {:.4}",
        result.outcome.exit_step, result.outcome.realized_pnl
    ))
}

fn cmd_batch(args: &RunArgs) -> CliResult<String> {
    let Loaded { config, .. } = args.load()?;
    let stats = mc::run_batch(&config)?;
    if args.wants(Format::Json) {
        args.write("batch.json", &to_json(&BatchDocument { config: &config, stats }))?;
    }
    Ok(format!(
        "liquidation probability {} ± {} | median RPnL {:.2} ± {:.2} ({} replications)",
        pct(stats.liquidation_probability),
        pct(stats.liq_prob_standard_error),
        stats.median_rpnl,
        stats.median_rpnl_standard_error,
        stats.replications
    ))
}

fn cmd_grid(args: &RunArgs) -> CliResult<String> {
    let Loaded { doc, config } = args.load()?;
    let axes = &doc.experiment.grid;
    let grid = mc::grid_sweep(&config, &axes.sigmas, &axes.leverages)?;
    if args.wants(Format::Csv) {
        args.write("grid.csv", &report::grid_csv(&grid, GridMetric::LiqProb))?;
        args.write("grid_median_rpnl.csv", &report::grid_csv(&grid, GridMetric::MedianRpnl))?;
    }
    if args.wants(Format::Svg) {
        args.write("grid.svg", &report::render_heatmap(&grid, GridMetric::LiqProb)?)?;
        args.write("grid_median_rpnl.svg", &report::render_heatmap(&grid, GridMetric::MedianRpnl)?)?;
    }
    if args.wants(Format::Json) {
        args.write("grid.json", &to_json(&GridDocument { config: &config, grid: &grid }))?;
    }
    let (mut worst, mut at) = (f64::NEG_INFINITY, (0.0, 0.0));
    for (i, row) in grid.cells.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            if cell.liquidation_probability > worst {
                worst = cell.liquidation_probability;
                at = (grid.sigma_axis[i], grid.leverage_axis[j]);
            }
        }
    }
    let se = (worst * (1.0 - worst) / config.replications as f64).sqrt();
    Ok(format!(
        "grid {}x{} at {} replications per cell; peak liquidation {} ± {} at sigma={} L={}",
        grid.sigma_axis.len(),
        grid.leverage_axis.len(),
        config.replications,
        pct(worst),
        pct(se),
        at.0,
        at.1
    ))
}

fn cmd_tornado(args: &RunArgs) -> CliResult<String> {
    let Loaded { doc, config } = args.load()?;
    let settings = &doc.experiment.tornado;
    let result = mc::tornado(&config, settings.shock, &settings.parameters)?;
    if args.wants(Format::Json) {
        args.write("tornado.json", &to_json(&TornadoDocument { config: &config, tornado: &result }))?;
    }
    if args.wants(Format::Svg) {
        args.write("tornado.svg", &report::render_tornado(&result)?)?;
    }
    let top = &result.bars[0];
    Ok(format!(
        "baseline liquidation {} ± {}; widest bar {} ({:+.1}, {:+.1}) p.p.",
        pct(result.baseline_liq_prob),
        pct(result.baseline_standard_error),
        top.parameter.name(),
        top.delta_low,
        top.delta_high
    ))
}

fn cmd_presets(json: bool) -> String {
    let all = presets();
    if json {
        return to_json(&all).trim_end().to_string();
    }
    let mut lines = vec![format!(
        "{:<14}{:>10}{:>10}{:>12}{:>10}{:>10}{:>8}",
        "name", "open", "close", "borrow/step", "slippage", "mm", "max L"
    )];
    for p in &all {
        let f = &p.fee_schedule;
        lines.push(format!(
            "{:<14}{:>10}{:>10}{:>12}{:>10}{:>10}{:>8}",
            p.name,
            f.open_fee_rate,
            f.close_fee_rate,
            f.borrow_rate_per_step,
            f.entry_slippage,
            f.maintenance_margin_rate,
            p.max_leverage
        ));
    }
    lines.join("\n")
}

fn parse_threads(raw: Option<&str>) -> CliResult<Option<usize>> {
    match raw.map(str::trim) {
        None | Some("") => Ok(None),
        Some(s) => match s.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(CliError::Config(format!("{THREADS_ENV} must be a positive integer, got {s:?}"))),
        },
    }
}

fn dispatch(cli: &Cli) -> CliResult<String> {
    match &cli.command {
        Command::Path { args, index } => cmd_path(args, *index),
        Command::Batch { args } => cmd_batch(args),
        Command::Grid { args } => cmd_grid(args),
        Command::Tornado { args } => cmd_tornado(args),
        Command::Presets { json } => Ok(cmd_presets(*json)),
    }
}

/// Runs a parsed invocation on `threads` workers (the global pool when
/// `None`) and returns the one-line summary.
pub fn execute(cli: &Cli, threads: Option<usize>) -> CliResult<String> {
    match threads {
        Some(n) => mc::with_workers(n, || dispatch(cli))?,
        None => dispatch(cli),
    }
}

/// Full entry point: parses `argv`, reads the thread cap from the
/// environment, prints the summary and returns the exit code.
pub fn run<I, T>(argv: I, threads_env: Option<&str>, stdout: &mut impl Write, stderr: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if code == 0 {
                write!(stdout, "{e}")
            } else {
                write!(stderr, "{e}")
            };
            return code;
        }
    };
    let outcome = parse_threads(threads_env).and_then(|threads| execute(&cli, threads));
    match outcome {
        Ok(summary) => {
            let _ = writeln!(stdout, "{summary}");
            0
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
