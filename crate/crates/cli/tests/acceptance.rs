//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line and fails on
//! `FAIL`. Tolerances are pinned here; seeds are fixed at 0.

use std::process::Command;
use std::sync::OnceLock;

use derivsim_core::mc::{self, GridResult, TerminalEvent, TornadoParam};
use derivsim_core::options::{open_option, OptionTerms};
use derivsim_core::perp::{open_position, PositionStatus};
use derivsim_core::pool::PoolState;
use derivsim_core::synth::{self, LiquidationOutcome};
use derivsim_core::{
    load_preset, AssetCategory, AssetRef, ExpiringOptionSpec, FeeSchedule, FundingConfig, OptionRole, OptionSide,
    PerpetualSpec, Side, SyntheticSpec,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

const SEED: u64 = 0;
const REPS: usize = 500;
const SIGMAS: [f64; 4] = [0.02, 0.04, 0.06, 0.08];
const LEVERAGES: [f64; 7] = [2.0, 5.0, 10.0, 15.0, 20.0, 50.0, 100.0];

/// Published liquidation percentages, rows sigma, columns leverage.
const REFERENCE: [[f64; 7]; 4] = [
    [0.0, 0.0, 5.6, 20.2, 35.0, 72.8, 85.4],
    [0.0, 3.4, 32.4, 50.2, 61.0, 86.0, 92.0],
    [0.0, 16.0, 53.2, 65.2, 75.2, 88.2, 94.8],
    [0.0, 27.4, 63.0, 75.2, 80.8, 91.0, 94.8],
];
const L2_TOL: f64 = 1.0;
const CELL_TOL: f64 = 7.0;

const TORNADO_BASELINE: (f64, f64) = (33.0, 6.0);
const LEVERAGE_BAR: (f64, f64) = (-8.0, 7.0);
const VOLATILITY_BAR: (f64, f64) = (-11.0, 9.0);
const BAR_TOL: f64 = 4.0;
const FEE_BAR_MAX: f64 = 3.0;
const FUNDING_BAR_MAX: f64 = 1.5;

const ORACLE_REL: f64 = 1e-6;
const CR_REL: f64 = 1e-9;
const PROPERTY_CASES: u32 = 1000;

fn report(criterion: &str, ok: bool, detail: String) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!("{verdict} {criterion}: {detail}");
    assert!(ok, "{criterion} failed: {detail}");
}

fn jupiter_grid() -> &'static GridResult {
    static GRID: OnceLock<GridResult> = OnceLock::new();
    GRID.get_or_init(|| {
        let base = mc::solana_long(10.0, load_preset("jupiter").unwrap(), 0.04, REPS, SEED);
        mc::grid_sweep(&base, &SIGMAS, &LEVERAGES).unwrap()
    })
}

#[test]
fn criterion_1_jupiter_table() {
    let grid = jupiter_grid();
    let mut worst = (0.0f64, 0, 0);
    let mut worst_l2 = 0.0f64;
    let mut ok = true;
    for (i, row) in REFERENCE.iter().enumerate() {
        for (j, &target) in row.iter().enumerate() {
            let got = 100.0 * grid.cell(i, j).liquidation_probability;
            let diff = (got - target).abs();
            if j == 0 {
                worst_l2 = worst_l2.max(diff);
                ok &= diff <= L2_TOL;
            } else {
                ok &= diff <= CELL_TOL;
                if diff > worst.0 {
                    worst = (diff, i, j);
                }
            }
        }
    }
    report(
        "[1] jupiter table",
        ok,
        format!(
            "L=2 max |d| {worst_l2:.1} <= {L2_TOL}; other cells max |d| {:.1} p.p. at (sigma={}, L={}) <= {CELL_TOL}",
            worst.0, SIGMAS[worst.1], LEVERAGES[worst.2]
        ),
    );
}

#[test]
fn criterion_2_tornado() {
    let base = mc::tornado_baseline(REPS, SEED);
    let t = mc::tornado(&base, 0.2, &TornadoParam::ALL).unwrap();
    let bar = |p| t.bar(p).unwrap();
    let lev = bar(TornadoParam::Leverage);
    let vol = bar(TornadoParam::Volatility);
    let baseline = 100.0 * t.baseline_liq_prob;

    let mut clauses = Vec::new();
    let mut check = |name: String, ok: bool| clauses.push((name, ok));
    check(
        format!("baseline {baseline:.1}% in {}±{}", TORNADO_BASELINE.0, TORNADO_BASELINE.1),
        (baseline - TORNADO_BASELINE.0).abs() <= TORNADO_BASELINE.1,
    );
    for (b, target) in [(lev, LEVERAGE_BAR), (vol, VOLATILITY_BAR)] {
        check(
            format!(
                "{} ({:+.1}, {:+.1}) vs ({:+}, {:+})±{BAR_TOL}",
                b.parameter.name(),
                b.delta_low,
                b.delta_high,
                target.0,
                target.1
            ),
            (b.delta_low - target.0).abs() <= BAR_TOL && (b.delta_high - target.1).abs() <= BAR_TOL,
        );
    }
    let fee_bars: Vec<_> = t.bars.iter().filter(|b| b.parameter.is_fee_class()).collect();
    let fee_max = fee_bars
        .iter()
        .filter(|b| b.parameter != TornadoParam::FundingRate)
        .map(|b| b.impact())
        .fold(0.0, f64::max);
    let funding = bar(TornadoParam::FundingRate).impact();
    check(format!("fee/margin bars max {fee_max:.1} < {FEE_BAR_MAX}"), fee_max < FEE_BAR_MAX);
    check(format!("funding bar {funding:.1} < {FUNDING_BAR_MAX}"), funding < FUNDING_BAR_MAX);
    let fee_class_max = fee_bars.iter().map(|b| b.impact()).fold(0.0, f64::max);
    check(
        format!(
            "ordering |vol| {:.1} >= |lev| {:.1} > fee-class {:.1}",
            vol.impact(),
            lev.impact(),
            fee_class_max
        ),
        vol.impact() >= lev.impact() && lev.impact() > fee_class_max,
    );
    for (name, ok) in &clauses {
        println!("    {} {name}", if *ok { "ok  " } else { "MISS" });
    }
    let ok = clauses.iter().all(|(_, ok)| *ok);
    let summary = clauses
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(n, _)| n.as_str())
        .collect::<Vec<_>>()
        .join("; ");
    report(
        "[2] tornado",
        ok,
        if ok {
            format!("all {} clauses hold", clauses.len())
        } else {
            format!("unmet: {summary}")
        },
    );
}

#[test]
fn criterion_3_monotonicity() {
    let grid = jupiter_grid();
    let mut violations = Vec::new();
    let mut compare = |a: (usize, usize), b: (usize, usize)| {
        let (x, y) = (grid.cell(a.0, a.1), grid.cell(b.0, b.1));
        // y is the riskier neighbour
        let se_p = x.liq_prob_standard_error.hypot(y.liq_prob_standard_error);
        let drop = x.liquidation_probability - y.liquidation_probability;
        if drop > 2.0 * se_p {
            violations.push(format!("liq {:?}->{:?} drops {:.3}", a, b, drop));
        }
        let se_m = x.median_rpnl_standard_error.hypot(y.median_rpnl_standard_error);
        let rise = y.median_rpnl - x.median_rpnl;
        if rise > 2.0 * se_m {
            violations.push(format!("median {:?}->{:?} rises {:.2} > 2SE {:.2}", a, b, rise, 2.0 * se_m));
        }
    };
    for i in 0..SIGMAS.len() {
        for j in 0..LEVERAGES.len() {
            if i + 1 < SIGMAS.len() {
                compare((i, j), (i + 1, j));
            }
            if j + 1 < LEVERAGES.len() {
                compare((i, j), (i, j + 1));
            }
        }
    }
    report(
        "[3] monotonicity under CRN",
        violations.is_empty(),
        if violations.is_empty() {
            "liquidation non-decreasing and median RPnL non-increasing in sigma and L within 2 SE".into()
        } else {
            violations.join("; ")
        },
    );
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-12)
}

fn perp(leverage: f64, side: Side, funding: FundingConfig) -> PerpetualSpec {
    PerpetualSpec {
        underlying: AssetRef::new("SOL", AssetCategory::L1),
        collateral_asset: AssetRef::new("USDC", AssetCategory::Stable),
        collateral_amount: 1000.0,
        leverage,
        side,
        entry_reference_price: 100.0,
        funding,
    }
}

/// First step k >= 1 with equity(k) <= r_m NV on the ramp P_k = P0 + S' a k,
/// where equity is linear in k. Returns (k, realized PnL) or None.
fn ramp_oracle(spec: &PerpetualSpec, fees: &FeeSchedule, p0: f64, slope: f64, dt: f64, steps: usize) -> Option<(usize, f64)> {
    let s = spec.side.sign();
    let c0 = spec.collateral_amount;
    let nv = c0 * spec.leverage;
    let fill = p0 * (1.0 + s * fees.entry_slippage);
    let q = nv / fill;
    let per_step = fees.borrow_rate_per_step * nv + s * nv * spec.funding.rate * dt / spec.funding.interval;
    let a = c0 - fees.open_fee_rate * nv + s * q * (p0 - fill);
    let b = -(s * q * slope) + per_step; // equity(k) = a - b k
    let threshold = fees.maintenance_margin_rate * nv;
    if b <= 0.0 {
        return None;
    }
    let k = ((a - threshold) / b).ceil().max(1.0) as usize;
    (k <= steps).then(|| (k, (a - b * k as f64).max(0.0) - c0))
}

fn exp_oracle(spec: &PerpetualSpec, fees: &FeeSchedule, p0: f64, beta: f64) -> (usize, f64) {
    // zero borrow and funding: equity(k) = C0 - F_open + Q (P0 e^{-beta k} - fill)
    let c0 = spec.collateral_amount;
    let nv = c0 * spec.leverage;
    let fill = p0 * (1.0 + fees.entry_slippage);
    let q = nv / fill;
    let f_open = fees.open_fee_rate * nv;
    let threshold = fees.maintenance_margin_rate * nv;
    let p_star = fill - (c0 - f_open - threshold) / q;
    let k = ((p0 / p_star).ln() / beta).ceil() as usize;
    let price = p0 * (-beta * k as f64).exp();
    (k, (c0 - f_open + q * (price - fill)).max(0.0) - c0)
}

#[test]
fn criterion_4_closed_form_oracles() {
    let mut failures = Vec::new();
    let jupiter = load_preset("jupiter").unwrap().fee_schedule;
    let dt = 1.0 / 24.0;

    // linear ramps driven step by step, with borrow and funding
    let mut ramps = 0;
    for (lev, side, slope) in [
        (10.0, Side::Long, -0.07),
        (20.0, Side::Long, -0.03),
        (50.0, Side::Long, -0.0071),
        (5.0, Side::Short, 0.21),
        (15.0, Side::Short, 0.037),
        (2.0, Side::Long, -0.33),
    ] {
        let spec = perp(lev, side, FundingConfig::constant(0.0001, 8.0 / 24.0));
        let expected = ramp_oracle(&spec, &jupiter, 100.0, slope, dt, 168).expect("ramp liquidates");
        let mut pos = open_position(&spec, &jupiter, 100.0).unwrap();
        let mut got = None;
        for k in 1..=168 {
            if pos.step(100.0 + slope * k as f64, dt).unwrap() == PositionStatus::Liquidated {
                got = Some((k, pos.realized_pnl.unwrap()));
                break;
            }
        }
        ramps += 1;
        match got {
            Some((k, pnl)) if k == expected.0 && rel(pnl, expected.1) <= ORACLE_REL => {}
            other => failures.push(format!("ramp L={lev} {side:?}: engine {other:?} vs oracle {expected:?}")),
        }
    }

    // exponential decay through the full Monte Carlo path (sigma = 0, mu < 0)
    let fees = FeeSchedule {
        borrow_rate_per_step: 0.0,
        ..jupiter
    };
    let mut preset = load_preset("jupiter").unwrap();
    preset.fee_schedule = fees;
    for (lev, mu) in [(10.0, -0.3), (20.0, -0.05), (5.0, -0.9), (100.0, -0.01)] {
        let mut cfg = mc::solana_long(lev, preset.clone(), 0.0, 1, SEED);
        cfg.market.drift = mu;
        let res = mc::run_single(&cfg, 0).unwrap();
        let (k, pnl) = exp_oracle(&perp(lev, Side::Long, FundingConfig::none()), &fees, 100.0, -mu * dt);
        let ok = res.outcome.event == TerminalEvent::Liquidated
            && res.outcome.exit_step == k
            && rel(res.outcome.realized_pnl, pnl) <= ORACLE_REL;
        if !ok {
            failures.push(format!(
                "exp L={lev} mu={mu}: engine ({:?}, {}, {}) vs oracle ({k}, {pnl})",
                res.outcome.event, res.outcome.exit_step, res.outcome.realized_pnl
            ));
        }
    }

    // exhaustive settlement grid, zero fees, exact equality
    let mut settled = 0;
    for side in [OptionSide::Call, OptionSide::Put] {
        for role in [OptionRole::Holder, OptionRole::Writer] {
            for strike in [90.0, 100.0, 110.0] {
                for terminal in [80.0, 90.0, 95.0, 100.0, 105.0, 110.0, 120.0] {
                    let terms = OptionTerms::Expiring(ExpiringOptionSpec {
                        underlying: AssetRef::new("ETH", AssetCategory::L1),
                        collateral_asset: AssetRef::new("USDC", AssetCategory::Stable),
                        leverage: 1.0,
                        side,
                        role,
                        strike,
                        expiry: 7.0,
                        contracts: 3,
                        multiplier: 2.0,
                        premium: 4.0,
                    });
                    let mut pos = open_option(terms, &FeeSchedule::zero()).unwrap();
                    let got = pos.settle_expiry(terminal).unwrap();
                    let payoff = match side {
                        OptionSide::Call => f64::max(terminal - strike, 0.0),
                        OptionSide::Put => f64::max(strike - terminal, 0.0),
                    };
                    let s = if role == OptionRole::Holder { 1.0 } else { -1.0 };
                    let expected = s * 3.0 * 2.0 * (payoff - 4.0);
                    settled += 1;
                    if got != expected {
                        failures.push(format!("{side:?} {role:?} K={strike} P={terminal}: {got} != {expected}"));
                    }
                }
            }
        }
    }

    // partial CDP liquidation restores the target ratio
    let spec = SyntheticSpec {
        underlying: AssetRef::new("sUSD", AssetCategory::Stable),
        collateral_asset: AssetRef::new("SNX", AssetCategory::DeFi),
        cr_min: 1.5,
        cr_liq: 1.45,
        cr_target: 1.6,
        liquidation_penalty: 0.1,
    };
    let mut partials = 0;
    for i in 0..40 {
        let p_under = 1.0 + 0.25 * f64::from(i) / 40.0 + 0.04;
        let mut pos = synth::mint(&spec, 150.0, 100.0, 1.0, 1.0).unwrap();
        if let LiquidationOutcome::Partial { .. } = pos.monitor_and_liquidate(1.0, p_under).unwrap() {
            partials += 1;
            let ratio = pos.collateral_ratio(1.0, p_under);
            if rel(ratio, spec.cr_target) > CR_REL {
                failures.push(format!("cdp p_under={p_under}: CR {ratio} != {}", spec.cr_target));
            }
        }
    }
    if partials == 0 {
        failures.push("no partial liquidation exercised".into());
    }

    report(
        "[4] closed-form oracles",
        failures.is_empty(),
        if failures.is_empty() {
            format!(
                "{ramps} ramps + 4 exponential paths within {ORACLE_REL:e}; {settled} settlements exact; \
                 {partials} partial liquidations at target within {CR_REL:e}"
            )
        } else {
            failures.join("; ")
        },
    )
}

fn run_property<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases: PROPERTY_CASES,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn fee_schedule() -> impl Strategy<Value = FeeSchedule> {
    (0.0..0.002f64, 0.0..0.002f64, 0.0..0.0001f64, 0.0..0.005f64, 0.0..0.01f64).prop_map(|(o, c, b, s, m)| FeeSchedule {
        open_fee_rate: o,
        close_fee_rate: c,
        borrow_rate_per_step: b,
        entry_slippage: s,
        maintenance_margin_rate: m,
    })
}

#[test]
fn criterion_5_invariant_suites() {
    let results = [
        run_property(
            "equity identity",
            (fee_schedule(), 1.0..20.0f64, any::<bool>(), 0.5..2.0f64, 1usize..20, -0.001..0.001f64),
            |(fees, lev, long, move_, steps, rate)| {
                let side = if long { Side::Long } else { Side::Short };
                let spec = perp(lev, side, FundingConfig::constant(rate, 1.0 / 3.0));
                let Ok(mut pos) = open_position(&spec, &fees, 100.0) else { return Ok(()) };
                let dt = 1.0 / 24.0;
                let mut phi = 0.0;
                for k in 1..=steps {
                    let price = 100.0 * (1.0 + (move_ - 1.0) * k as f64 / steps as f64 * 0.05);
                    phi += fees.borrow_rate_per_step * pos.notional + side.sign() * pos.notional * rate * dt / (1.0 / 3.0);
                    if pos.step(price, dt).unwrap() != PositionStatus::Open {
                        break;
                    }
                    let s = side.sign();
                    let expect = 1000.0 - fees.open_fee_rate * pos.notional + s * pos.quantity * (price - pos.fill_price) - phi;
                    prop_assert!((pos.equity - expect).abs() <= 1e-9 * 1000.0);
                }
                Ok(())
            },
        ),
        run_property(
            "funding antisymmetry",
            (1.0..50.0f64, -0.01..0.01f64, 0.01..1.0f64, 1usize..50),
            |(lev, rate, interval, steps)| {
                let funding = FundingConfig::constant(rate, interval);
                let mut long = open_position(&perp(lev, Side::Long, funding), &FeeSchedule::zero(), 100.0).unwrap();
                let mut short = open_position(&perp(lev, Side::Short, funding), &FeeSchedule::zero(), 100.0).unwrap();
                for _ in 0..steps {
                    let a = long.step(100.0, 1.0 / 24.0).unwrap();
                    let b = short.step(100.0, 1.0 / 24.0).unwrap();
                    if a != PositionStatus::Open || b != PositionStatus::Open {
                        break;
                    }
                }
                prop_assert!((long.funding_paid + short.funding_paid).abs() <= 1e-12 * long.notional);
                Ok(())
            },
        ),
        run_property("put-call intrinsic identity", (1.0..500.0f64, 1.0..500.0f64), |(p, k)| {
            use derivsim_core::options::intrinsic_value;
            let lhs = intrinsic_value(OptionSide::Call, p, k) - intrinsic_value(OptionSide::Put, p, k);
            prop_assert!((lhs - (p - k)).abs() <= 1e-12 * p.max(k));
            Ok(())
        }),
        run_property(
            "zero-sum option marks",
            (any::<bool>(), 1.0..500.0f64, 0.0..500.0f64, 0.0..50.0f64, 1u64..100, 0.01..10.0f64),
            |(call, strike, mark, premium, n, kappa)| {
                let side = if call { OptionSide::Call } else { OptionSide::Put };
                let make = |role| {
                    open_option(
                        OptionTerms::Expiring(ExpiringOptionSpec {
                            underlying: AssetRef::new("ETH", AssetCategory::L1),
                            collateral_asset: AssetRef::new("USDC", AssetCategory::Stable),
                            leverage: 1.0,
                            side,
                            role,
                            strike,
                            expiry: 7.0,
                            contracts: n,
                            multiplier: kappa,
                            premium,
                        }),
                        &FeeSchedule::zero(),
                    )
                    .unwrap()
                };
                let (holder, writer) = (make(OptionRole::Holder), make(OptionRole::Writer));
                prop_assert_eq!(holder.mark_upnl(mark) + writer.mark_upnl(mark), 0.0);
                Ok(())
            },
        ),
        run_property(
            "pool value conservation",
            prop::collection::vec((1.0..1e6f64, 0.0..1e4f64), 1..20),
            |ops| {
                let mut pool = PoolState::empty();
                let mut holdings = Vec::new();
                let mut paid_in = 0.0;
                for (deposit, fee) in ops {
                    holdings.push(pool.deposit(deposit).unwrap());
                    pool.accrue_fee(fee).unwrap();
                    paid_in += deposit + fee;
                }
                let supply: f64 = holdings.iter().sum();
                prop_assert!((supply - pool.lp_supply).abs() <= 1e-9 * pool.lp_supply);
                prop_assert!((pool.nav - paid_in).abs() <= 1e-9 * paid_in);
                let mut out = 0.0;
                for shares in holdings {
                    out += pool.withdraw(shares.min(pool.lp_supply)).unwrap();
                }
                prop_assert!((out - paid_in).abs() <= 1e-9 * paid_in);
                Ok(())
            },
        ),
        run_property(
            "pool round-trip neutrality",
            (1.0..1e6f64, 0.0..1e5f64, 1.0..1e6f64),
            |(seed_liquidity, fees, amount)| {
                let mut pool = PoolState::empty();
                pool.deposit(seed_liquidity).unwrap();
                pool.accrue_fee(fees).unwrap();
                let before = pool.unit_value().unwrap();
                let shares = pool.deposit(amount).unwrap();
                let back = pool.withdraw(shares).unwrap();
                prop_assert!((back - amount).abs() <= 1e-9 * amount);
                prop_assert!((pool.unit_value().unwrap() - before).abs() <= 1e-9 * before);
                Ok(())
            },
        ),
        run_property(
            "CR scale invariance",
            (1.0..1e4f64, 1.0..1e4f64, 0.01..100.0f64, 0.01..100.0f64, 0.01..100.0f64),
            |(c, q, p_coll, p_under, lambda)| {
                let a = synth::cr(c, q, p_coll, p_under);
                let b = synth::cr(c, q, lambda * p_coll, lambda * p_under);
                prop_assert!((a - b).abs() <= 1e-12 * a);
                let spec = SyntheticSpec {
                    underlying: AssetRef::new("sUSD", AssetCategory::Stable),
                    collateral_asset: AssetRef::new("SNX", AssetCategory::DeFi),
                    cr_min: 1.5,
                    cr_liq: 1.45,
                    cr_target: 1.6,
                    liquidation_penalty: 0.1,
                };
                let decide = |pc: f64, pu: f64| {
                    // mint at a comfortable ratio, then reprice
                    let mut pos = synth::mint(&spec, c, q, 1.0, c / (2.0 * q)).unwrap();
                    let outcome = pos.monitor_and_liquidate(pc, pu).unwrap();
                    std::mem::discriminant(&outcome)
                };
                // skip cases sitting on the trigger within rounding
                if (a - spec.cr_liq).abs() > 1e-9 {
                    prop_assert_eq!(decide(p_coll, p_under), decide(lambda * p_coll, lambda * p_under));
                }
                Ok(())
            },
        ),
    ];
    let failures: Vec<_> = results.iter().filter_map(|r| r.as_ref().err().cloned()).collect();
    report(
        "[5] invariant suites",
        failures.is_empty(),
        if failures.is_empty() {
            format!("{} properties x {PROPERTY_CASES} cases", results.len())
        } else {
            failures.join("; ")
        },
    );
}

fn config_path(name: &str) -> String {
    format!("{}/configs/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn grid_bytes(threads: &str) -> Vec<u8> {
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_derivsim"))
        .args(["grid", "--config", &config_path("jupiter.json"), "--format", "csv", "--seed", "0", "--out"])
        .arg(dir.path())
        .env("DERIVSIM_THREADS", threads)
        .output()
        .unwrap();
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    std::fs::read(dir.path().join("grid.csv")).unwrap()
}

#[test]
fn criterion_6_determinism() {
    let first = grid_bytes("4");
    let second = grid_bytes("4");
    let mut detail = vec![format!("repeat run identical: {}", first == second)];
    let mut ok = first == second;
    for threads in ["1", "4", "8"] {
        let same = grid_bytes(threads) == first;
        ok &= same;
        detail.push(format!("{threads} workers identical: {same}"));
    }
    // the library grid must render to the same bytes as the binary's
    let lib = derivsim_core::grid_csv(jupiter_grid(), derivsim_core::GridMetric::LiqProb);
    ok &= lib.as_bytes() == first.as_slice();
    detail.push(format!("library matches binary: {}", lib.as_bytes() == first.as_slice()));
    report("[6] determinism", ok, detail.join(", "));
}
