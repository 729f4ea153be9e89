//! Monte Carlo orchestration: single-path traces, batches, (sigma, L) grids
//! and tornado sensitivities.
//!
//! Path `i` of every batch is generated from `(master_seed, i)`, so every grid
//! cell and every tornado leg sees the same normals (common random numbers).
//! Replications may run on any number of threads; results are collected by
//! index before aggregation, so statistics never depend on the schedule.

use serde::{Deserialize, Serialize};

use crate::contract::{
    ContractSpec, FeeSchedule, FundingConfig, FundingMode, PerpetualSpec, ProtocolPreset, SyntheticSpec,
};
use crate::error::{invalid, Result, SimError};
use crate::options::{intrinsic_value, open_option, OptionStatus, OptionTerms};
use crate::paths::{generate_gbm, MarketParams, PricePath};
use crate::perp::{check_triggers, open_position, CloseReason, PerpPosition, PositionStatus, TriggerConfig};
use crate::pool::{PoolLedger, PoolState};
use crate::stats::BatchStats;
use crate::synth::{mint, CdpStatus, LiquidationOutcome};

/// Default replication count per batch.
pub const DEFAULT_REPLICATIONS: usize = 500;

/// Sizing for synthetic experiments: collateral posted and the ratio minted at.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CdpSizing {
    pub collateral_units: f64,
    #[serde(default = "CdpSizing::unit_price")]
    pub collateral_price: f64,
    pub mint_ratio: f64,
}

impl CdpSizing {
    fn unit_price() -> f64 {
        1.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub contract: ContractSpec,
    pub preset: ProtocolPreset,
    pub market: MarketParams,
    #[serde(default = "default_replications")]
    pub replications: usize,
    #[serde(default)]
    pub triggers: Option<TriggerConfig>,
    /// When set, each path runs against a pool seeded with this much
    /// liquidity and the perp's borrow fees accrue to it.
    #[serde(default)]
    pub pool_liquidity: Option<f64>,
    #[serde(default)]
    pub cdp: Option<CdpSizing>,
}

fn default_replications() -> usize {
    DEFAULT_REPLICATIONS
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        self.contract.validate()?;
        self.preset.validate()?;
        self.market.validate()?;
        if self.replications < 1 {
            return Err(invalid("replications", "must be >= 1"));
        }
        if let Some(liquidity) = self.pool_liquidity {
            if !(liquidity > 0.0 && liquidity.is_finite()) {
                return Err(invalid("pool_liquidity", "must be > 0"));
            }
        }
        match &self.contract {
            ContractSpec::Perpetual(spec) => {
                if spec.leverage > self.preset.max_leverage {
                    return Err(invalid(
                        "leverage",
                        format!("{} exceeds preset max {}", spec.leverage, self.preset.max_leverage),
                    ));
                }
            }
            ContractSpec::ExpiringOption(spec) => {
                if spec.expiry > self.market.horizon + 1e-9 {
                    return Err(invalid("expiry", "option expires after the simulated horizon"));
                }
            }
            ContractSpec::EverlastingOption(_) => {}
            ContractSpec::Synthetic(_) => {
                let sizing = self
                    .cdp
                    .ok_or_else(|| invalid("cdp", "synthetic experiments need cdp sizing"))?;
                if !(sizing.collateral_units > 0.0 && sizing.collateral_price > 0.0 && sizing.mint_ratio > 0.0) {
                    return Err(invalid("cdp", "sizing values must be > 0"));
                }
            }
        }
        Ok(())
    }

    /// The perpetual actually simulated: the contract's own funding leg wins,
    /// otherwise the preset's funding applies.
    pub fn effective_perp(&self) -> Option<PerpetualSpec> {
        match &self.contract {
            ContractSpec::Perpetual(spec) => {
                let mut spec = spec.clone();
                if spec.funding.mode == FundingMode::None {
                    spec.funding = self.preset.funding;
                }
                Some(spec)
            }
            _ => None,
        }
    }

    pub fn fees(&self) -> &FeeSchedule {
        &self.preset.fee_schedule
    }

    pub fn with_volatility(&self, volatility: f64) -> Self {
        let mut out = self.clone();
        out.market.volatility = volatility;
        out
    }

    /// Sets leverage on a perpetual; other contracts are returned unchanged
    /// apart from the option tuples' inert leverage field.
    pub fn with_leverage(&self, leverage: f64) -> Self {
        let mut out = self.clone();
        match &mut out.contract {
            ContractSpec::Perpetual(s) => s.leverage = leverage,
            ContractSpec::ExpiringOption(s) => s.leverage = leverage,
            ContractSpec::EverlastingOption(s) => s.leverage = leverage,
            ContractSpec::Synthetic(_) => {}
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TerminalEvent {
    ClosedAtHorizon,
    Liquidated,
    StopLoss,
    TakeProfit,
    Settled,
    Redeemed,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerpTraceRow {
    pub step: usize,
    pub time_days: f64,
    pub price: f64,
    pub upnl: f64,
    pub upnl_net: f64,
    pub fees_cum: f64,
    pub equity: f64,
    pub margin_req: f64,
    pub status: PositionStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptionTraceRow {
    pub step: usize,
    pub price: f64,
    pub mark_value: f64,
    pub upnl: f64,
    pub fees_cum: f64,
    pub status: OptionStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CdpTraceRow {
    pub step: usize,
    pub p_coll: f64,
    pub p_under: f64,
    pub cr: f64,
    pub collateral_units: f64,
    pub synth_units: f64,
    pub status: CdpStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", content = "rows", rename_all = "snake_case")]
pub enum Trace {
    Perp(Vec<PerpTraceRow>),
    Option(Vec<OptionTraceRow>),
    Cdp(Vec<CdpTraceRow>),
}

/// Terminal facts of one replication.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PathOutcome {
    pub path_index: u64,
    pub event: TerminalEvent,
    pub exit_step: usize,
    pub realized_pnl: f64,
    pub partial_liquidations: u32,
    pub pool: Option<PoolState>,
}

impl PathOutcome {
    pub fn liquidated(&self) -> bool {
        self.event == TerminalEvent::Liquidated
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathResult {
    pub outcome: PathOutcome,
    pub path: PricePath,
    pub trace: Trace,
}

struct Recorder<T> {
    rows: Option<Vec<T>>,
}

impl<T> Recorder<T> {
    fn new(enabled: bool, capacity: usize) -> Self {
        Self {
            rows: enabled.then(|| Vec::with_capacity(capacity)),
        }
    }

    #[inline]
    fn push(&mut self, row: impl FnOnce() -> T) {
        if let Some(rows) = &mut self.rows {
            rows.push(row());
        }
    }

    fn finish(self) -> Vec<T> {
        self.rows.unwrap_or_default()
    }
}

fn perp_row(pos: &PerpPosition, step: usize, dt: f64, price: f64) -> PerpTraceRow {
    let equity = match pos.status {
        PositionStatus::Open => pos.equity_at(price),
        _ => pos.equity,
    };
    PerpTraceRow {
        step,
        time_days: step as f64 * dt,
        price,
        upnl: pos.upnl(price),
        upnl_net: pos.upnl_net(price),
        fees_cum: pos.cumulative_fees,
        equity,
        margin_req: pos.margin_requirement(),
        status: pos.status,
    }
}

fn simulate_perp(config: &ExperimentConfig, path: &PricePath, record: bool) -> Result<(PathOutcome, Trace)> {
    let spec = config.effective_perp().expect("perpetual contract");
    let fees = config.fees();
    let dt = path.step_size;
    let mut pos = open_position(&spec, fees, path.prices[0])?;
    if let Some(triggers) = &config.triggers {
        triggers.validate(spec.side, pos.fill_price)?;
    }
    let mut pool = match config.pool_liquidity {
        Some(liquidity) => {
            let mut ledger = PoolLedger::new();
            ledger.deposit(liquidity)?;
            Some(ledger.state)
        }
        None => None,
    };
    let mut trace = Recorder::new(record, path.prices.len());
    trace.push(|| perp_row(&pos, 0, dt, path.prices[0]));

    let last = path.steps();
    let mut event = TerminalEvent::ClosedAtHorizon;
    let mut exit_step = last;
    for (k, &price) in path.prices.iter().enumerate().skip(1) {
        let borrow_before = pos.borrow_paid;
        let status = pos.step(price, dt)?;
        if let Some(pool) = &mut pool {
            pool.accrue_fee(pos.borrow_paid - borrow_before)?;
        }
        if status == PositionStatus::Liquidated {
            event = TerminalEvent::Liquidated;
            exit_step = k;
            trace.push(|| perp_row(&pos, k, dt, price));
            break;
        }
        if let Some(reason) = config.triggers.as_ref().and_then(|t| check_triggers(&pos, price, t)) {
            pos.close(price)?;
            event = match reason {
                CloseReason::StopLoss => TerminalEvent::StopLoss,
                CloseReason::TakeProfit => TerminalEvent::TakeProfit,
            };
            exit_step = k;
            trace.push(|| perp_row(&pos, k, dt, price));
            break;
        }
        if k == last {
            pos.close(price)?;
        }
        trace.push(|| perp_row(&pos, k, dt, price));
    }
    let outcome = PathOutcome {
        path_index: path.path_index,
        event,
        exit_step,
        realized_pnl: pos.realized_pnl.expect("position exited"),
        partial_liquidations: 0,
        pool,
    };
    Ok((outcome, Trace::Perp(trace.finish())))
}

fn simulate_option(config: &ExperimentConfig, path: &PricePath, record: bool) -> Result<(PathOutcome, Trace)> {
    let terms = match &config.contract {
        ContractSpec::ExpiringOption(s) => OptionTerms::Expiring(s.clone()),
        ContractSpec::EverlastingOption(s) => {
            let mut s = s.clone();
            if s.funding.mode == FundingMode::None {
                s.funding = config.preset.funding;
            }
            OptionTerms::Everlasting(s)
        }
        _ => unreachable!("option contract"),
    };
    let dt = path.step_size;
    let (side, strike) = (terms.side(), terms.strike());
    let expiry_step = match &terms {
        OptionTerms::Expiring(s) => ((s.expiry / dt).round() as usize).clamp(1, path.steps()),
        OptionTerms::Everlasting(_) => path.steps(),
    };
    let mut pos = open_option(terms, config.fees())?;
    let mut trace = Recorder::new(record, expiry_step + 1);
    let row = |pos: &crate::options::OptionPosition, k: usize, price: f64| {
        let mark = intrinsic_value(side, price, strike);
        OptionTraceRow {
            step: k,
            price,
            mark_value: mark,
            upnl: pos.mark_upnl(mark),
            fees_cum: pos.cumulative_fees,
            status: pos.status,
        }
    };
    trace.push(|| row(&pos, 0, path.prices[0]));
    let mut event = TerminalEvent::ClosedAtHorizon;
    for k in 1..=expiry_step {
        let price = path.prices[k];
        match &pos.terms {
            OptionTerms::Everlasting(_) => {
                pos.everlasting_step(dt)?;
                if k == expiry_step {
                    pos.close_everlasting(intrinsic_value(side, price, strike))?;
                }
            }
            OptionTerms::Expiring(_) => {
                if k == expiry_step {
                    pos.settle_expiry(price)?;
                    event = TerminalEvent::Settled;
                }
            }
        }
        trace.push(|| row(&pos, k, price));
    }
    let outcome = PathOutcome {
        path_index: path.path_index,
        event,
        exit_step: expiry_step,
        realized_pnl: pos.realized_pnl.expect("option exited"),
        partial_liquidations: 0,
        pool: None,
    };
    Ok((outcome, Trace::Option(trace.finish())))
}

fn simulate_cdp(
    spec: &SyntheticSpec,
    config: &ExperimentConfig,
    path: &PricePath,
    record: bool,
) -> Result<(PathOutcome, Trace)> {
    let sizing = config.cdp.expect("validated cdp sizing");
    let p_coll = sizing.collateral_price;
    let p0 = path.prices[0];
    let synth_units = sizing.collateral_units * p_coll / (sizing.mint_ratio * p0);
    let mut pos = mint(spec, sizing.collateral_units, synth_units, p_coll, p0)?;
    let mut trace = Recorder::new(record, path.prices.len());
    let row = |pos: &crate::synth::CdpPosition, k: usize, p_under: f64| CdpTraceRow {
        step: k,
        p_coll,
        p_under,
        cr: if pos.synth_units > 0.0 {
            pos.collateral_ratio(p_coll, p_under)
        } else {
            f64::INFINITY
        },
        collateral_units: pos.collateral_units,
        synth_units: pos.synth_units,
        status: pos.status,
    };
    trace.push(|| row(&pos, 0, p0));
    let last = path.steps();
    let mut event = TerminalEvent::Redeemed;
    let mut exit_step = last;
    let mut partials = 0;
    for (k, &p_under) in path.prices.iter().enumerate().skip(1) {
        match pos.monitor_and_liquidate(p_coll, p_under)? {
            LiquidationOutcome::Healthy => {}
            LiquidationOutcome::Partial { .. } => partials += 1,
            LiquidationOutcome::Full { .. } => {
                event = TerminalEvent::Liquidated;
                exit_step = k;
                trace.push(|| row(&pos, k, p_under));
                break;
            }
        }
        if k == last {
            pos.redeem(p_under, config.fees())?;
        }
        trace.push(|| row(&pos, k, p_under));
    }
    let outcome = PathOutcome {
        path_index: path.path_index,
        event,
        exit_step,
        realized_pnl: pos.realized_pnl.expect("cdp exited"),
        partial_liquidations: partials,
        pool: None,
    };
    Ok((outcome, Trace::Cdp(trace.finish())))
}

fn simulate(config: &ExperimentConfig, path_index: u64, record: bool) -> Result<(PathOutcome, PricePath, Trace)> {
    let path = generate_gbm(&config.market, path_index)?;
    let (outcome, trace) = match &config.contract {
        ContractSpec::Perpetual(_) => simulate_perp(config, &path, record)?,
        ContractSpec::ExpiringOption(_) | ContractSpec::EverlastingOption(_) => simulate_option(config, &path, record)?,
        ContractSpec::Synthetic(spec) => simulate_cdp(spec, config, &path, record)?,
    };
    Ok((outcome, path, trace))
}

/// Runs one replication and keeps the full trace.
pub fn run_single(config: &ExperimentConfig, path_index: u64) -> Result<PathResult> {
    config.validate()?;
    let (outcome, path, trace) = simulate(config, path_index, true)?;
    Ok(PathResult { outcome, path, trace })
}

#[cfg(feature = "parallel")]
fn collect_outcomes(config: &ExperimentConfig) -> Result<Vec<PathOutcome>> {
    use rayon::prelude::*;
    (0..config.replications as u64)
        .into_par_iter()
        .map(|i| simulate(config, i, false).map(|(o, _, _)| o))
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn collect_outcomes(config: &ExperimentConfig) -> Result<Vec<PathOutcome>> {
    (0..config.replications as u64)
        .map(|i| simulate(config, i, false).map(|(o, _, _)| o))
        .collect()
}

/// Per-path outcomes for indices `0..replications`, in index order.
pub fn run_outcomes(config: &ExperimentConfig) -> Result<Vec<PathOutcome>> {
    config.validate()?;
    collect_outcomes(config)
}

pub fn summarize(outcomes: &[PathOutcome]) -> BatchStats {
    let liquidated: Vec<bool> = outcomes.iter().map(PathOutcome::liquidated).collect();
    let pnl: Vec<f64> = outcomes.iter().map(|o| o.realized_pnl).collect();
    BatchStats::from_outcomes(&liquidated, &pnl)
}

pub fn run_batch(config: &ExperimentConfig) -> Result<BatchStats> {
    Ok(summarize(&run_outcomes(config)?))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridResult {
    pub sigma_axis: Vec<f64>,
    pub leverage_axis: Vec<f64>,
    /// `cells[i][j]` is sigma_axis[i] x leverage_axis[j].
    pub cells: Vec<Vec<BatchStats>>,
}

impl GridResult {
    pub fn cell(&self, sigma_idx: usize, lev_idx: usize) -> &BatchStats {
        &self.cells[sigma_idx][lev_idx]
    }
}

pub fn grid_sweep(base: &ExperimentConfig, sigmas: &[f64], leverages: &[f64]) -> Result<GridResult> {
    if sigmas.is_empty() || leverages.is_empty() {
        return Err(SimError::Empty("grid axis"));
    }
    if !matches!(base.contract, ContractSpec::Perpetual(_)) {
        return Err(invalid("contract", "grid sweeps need a perpetual"));
    }
    let cells = sigmas
        .iter()
        .map(|&sigma| {
            leverages
                .iter()
                .map(|&lev| run_batch(&base.with_volatility(sigma).with_leverage(lev)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GridResult {
        sigma_axis: sigmas.to_vec(),
        leverage_axis: leverages.to_vec(),
        cells,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TornadoParam {
    Leverage,
    Volatility,
    OpenFee,
    CloseFee,
    BorrowRate,
    MaintenanceMarginRate,
    FundingRate,
}

impl TornadoParam {
    pub const ALL: [TornadoParam; 7] = [
        TornadoParam::Leverage,
        TornadoParam::Volatility,
        TornadoParam::OpenFee,
        TornadoParam::CloseFee,
        TornadoParam::BorrowRate,
        TornadoParam::MaintenanceMarginRate,
        TornadoParam::FundingRate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TornadoParam::Leverage => "leverage",
            TornadoParam::Volatility => "volatility",
            TornadoParam::OpenFee => "open_fee",
            TornadoParam::CloseFee => "close_fee",
            TornadoParam::BorrowRate => "borrow_rate",
            TornadoParam::MaintenanceMarginRate => "maintenance_margin_rate",
            TornadoParam::FundingRate => "funding_rate",
        }
    }

    pub fn is_fee_class(self) -> bool {
        !matches!(self, TornadoParam::Leverage | TornadoParam::Volatility)
    }

    /// Current value of the parameter in `config`.
    pub fn value(self, config: &ExperimentConfig) -> f64 {
        let fees = config.fees();
        match self {
            TornadoParam::Leverage => match &config.contract {
                ContractSpec::Perpetual(s) => s.leverage,
                _ => f64::NAN,
            },
            TornadoParam::Volatility => config.market.volatility,
            TornadoParam::OpenFee => fees.open_fee_rate,
            TornadoParam::CloseFee => fees.close_fee_rate,
            TornadoParam::BorrowRate => fees.borrow_rate_per_step,
            TornadoParam::MaintenanceMarginRate => fees.maintenance_margin_rate,
            TornadoParam::FundingRate => config.effective_perp().map_or(0.0, |s| s.funding.rate),
        }
    }

    /// Copy of `config` with this parameter multiplied by `factor`.
    pub fn scaled(self, config: &ExperimentConfig, factor: f64) -> ExperimentConfig {
        let mut out = config.clone();
        let fees = &mut out.preset.fee_schedule;
        match self {
            TornadoParam::Leverage => return config.with_leverage(self.value(config) * factor),
            TornadoParam::Volatility => out.market.volatility *= factor,
            TornadoParam::OpenFee => fees.open_fee_rate *= factor,
            TornadoParam::CloseFee => fees.close_fee_rate *= factor,
            TornadoParam::BorrowRate => fees.borrow_rate_per_step *= factor,
            TornadoParam::MaintenanceMarginRate => fees.maintenance_margin_rate *= factor,
            TornadoParam::FundingRate => {
                if let Some(perp) = config.effective_perp() {
                    let mut perp = perp;
                    perp.funding.rate *= factor;
                    out.contract = ContractSpec::Perpetual(perp);
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TornadoBar {
    pub parameter: TornadoParam,
    pub base_value: f64,
    pub liq_prob_low: f64,
    pub liq_prob_high: f64,
    /// Percentage points, leg at (1 - shock).
    pub delta_low: f64,
    /// Percentage points, leg at (1 + shock).
    pub delta_high: f64,
}

impl TornadoBar {
    pub fn impact(&self) -> f64 {
        self.delta_low.abs().max(self.delta_high.abs())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TornadoResult {
    pub shock: f64,
    pub baseline_liq_prob: f64,
    pub baseline_standard_error: f64,
    pub replications: usize,
    /// Sorted by impact, widest first.
    pub bars: Vec<TornadoBar>,
}

impl TornadoResult {
    pub fn bar(&self, parameter: TornadoParam) -> Option<&TornadoBar> {
        self.bars.iter().find(|b| b.parameter == parameter)
    }
}

/// One-at-a-time +/- `shock` multiplicative sensitivity of the liquidation
/// probability. Every leg reuses the baseline's path indices.
pub fn tornado(base: &ExperimentConfig, shock: f64, parameters: &[TornadoParam]) -> Result<TornadoResult> {
    if !(shock > 0.0 && shock < 1.0) {
        return Err(SimError::InvalidInput(format!("shock must lie in (0, 1), got {shock}")));
    }
    if parameters.is_empty() {
        return Err(SimError::Empty("tornado parameter set"));
    }
    if !matches!(base.contract, ContractSpec::Perpetual(_)) {
        return Err(invalid("contract", "tornado analysis needs a perpetual"));
    }
    let baseline = run_batch(base)?;
    let p0 = baseline.liquidation_probability;
    let mut bars = parameters
        .iter()
        .map(|&param| {
            let low = run_batch(&param.scaled(base, 1.0 - shock))?.liquidation_probability;
            let high = run_batch(&param.scaled(base, 1.0 + shock))?.liquidation_probability;
            Ok(TornadoBar {
                parameter: param,
                base_value: param.value(base),
                liq_prob_low: low,
                liq_prob_high: high,
                delta_low: 100.0 * (low - p0),
                delta_high: 100.0 * (high - p0),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    bars.sort_by(|a, b| b.impact().total_cmp(&a.impact()));
    Ok(TornadoResult {
        shock,
        baseline_liq_prob: p0,
        baseline_standard_error: baseline.liq_prob_standard_error,
        replications: base.replications,
        bars,
    })
}

/// Funding used by the sensitivity baseline: 0.01 % per 8-hour interval.
pub fn baseline_funding() -> FundingConfig {
    FundingConfig::constant(0.0001, 8.0 / 24.0)
}

/// Long SOL perpetual, C0 = 1000, hourly steps over seven days, zero drift.
pub fn solana_long(leverage: f64, preset: ProtocolPreset, volatility: f64, replications: usize, seed: u64) -> ExperimentConfig {
    use crate::contract::{AssetCategory, AssetRef, Side};
    ExperimentConfig {
        contract: ContractSpec::Perpetual(PerpetualSpec {
            underlying: AssetRef::new("SOL", AssetCategory::L1),
            collateral_asset: AssetRef::new("USDC", AssetCategory::Stable),
            collateral_amount: 1000.0,
            leverage,
            side: Side::Long,
            entry_reference_price: 100.0,
            funding: FundingConfig::none(),
        }),
        preset,
        market: MarketParams::hourly_week(100.0, volatility, seed),
        replications,
        triggers: None,
        pool_liquidity: None,
        cdp: None,
    }
}

/// Sensitivity baseline: sigma = 0.04 per day, L = 10, jupiter fees, plus a
/// small constant funding rate so the funding bar is not identically zero.
pub fn tornado_baseline(replications: usize, seed: u64) -> ExperimentConfig {
    let mut preset = crate::contract::load_preset("jupiter").expect("jupiter preset registered");
    preset.funding = baseline_funding();
    solana_long(10.0, preset, 0.04, replications, seed)
}

/// Runs `f` on a dedicated pool of `workers` threads.
#[cfg(feature = "parallel")]
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| SimError::Config(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}
