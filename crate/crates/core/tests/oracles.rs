//! Statistical and closed-form oracles computed independently of the engine.

use derivsim_core::options::{open_option, OptionTerms};
use derivsim_core::synth;
use derivsim_core::{
    generate_gbm, AssetCategory, AssetRef, EverlastingOptionSpec, FeeSchedule, FundingConfig, MarketParams, OptionRole,
    OptionSide, SyntheticSpec,
};

const PATHS: u64 = 10_000;

fn terminal_log_returns(market: &MarketParams) -> Vec<f64> {
    (0..PATHS)
        .map(|i| {
            let path = generate_gbm(market, i).unwrap();
            (path.terminal() / market.initial_price).ln()
        })
        .collect()
}

fn mean_var(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var)
}

#[test]
fn terminal_log_mean_matches_ito_drift() {
    let sigma = 0.02;
    let market = MarketParams::hourly_week(100.0, sigma, 2024);
    let logs = terminal_log_returns(&market);
    let (mean, var) = mean_var(&logs);
    let t = 7.0;
    let expected = -0.5 * sigma * sigma * t;
    let se = sigma * f64::sqrt(t) / (PATHS as f64).sqrt();
    assert!((mean - expected).abs() < 3.0 * se, "mean {mean} vs {expected} (se {se})");
    // sample variance of a normal: se ~ var * sqrt(2 / (n - 1))
    let target = sigma * sigma * t;
    let var_se = target * (2.0 / (PATHS as f64 - 1.0)).sqrt();
    assert!((var - target).abs() < 4.0 * var_se, "var {var} vs {target}");
}

#[test]
fn zero_drift_price_is_a_martingale() {
    let sigma = 0.06;
    let market = MarketParams::hourly_week(100.0, sigma, 77);
    let ratios: Vec<f64> = terminal_log_returns(&market).into_iter().map(f64::exp).collect();
    let (mean, var) = mean_var(&ratios);
    let se = (var / PATHS as f64).sqrt();
    assert!((mean - 1.0).abs() < 3.0 * se, "E[P_T / P_0] = {mean} (se {se})");
}

#[test]
fn drift_shifts_log_mean() {
    let (sigma, mu) = (0.03, 0.01);
    let market = MarketParams {
        drift: mu,
        ..MarketParams::hourly_week(50.0, sigma, 5)
    };
    let (mean, _) = mean_var(&terminal_log_returns(&market));
    let expected = (mu - 0.5 * sigma * sigma) * 7.0;
    let se = sigma * 7f64.sqrt() / (PATHS as f64).sqrt();
    assert!((mean - expected).abs() < 3.0 * se);
}

#[test]
fn increments_are_independent_across_steps() {
    let market = MarketParams::hourly_week(100.0, 0.05, 9);
    let n = 2_000u64;
    let mut lag1 = 0.0;
    let mut sq = 0.0;
    let mut count = 0.0;
    for i in 0..n {
        let p = generate_gbm(&market, i).unwrap().prices;
        let r: Vec<f64> = p.windows(2).map(|w| (w[1] / w[0]).ln()).collect();
        for w in r.windows(2) {
            lag1 += w[0] * w[1];
            sq += w[0] * w[0];
            count += 1.0;
        }
    }
    let rho = lag1 / sq;
    assert!(rho.abs() < 4.0 / f64::sqrt(count), "lag-1 correlation {rho}");
}

#[test]
fn everlasting_funding_accrues_linearly_on_strike_notional() {
    let (n, kappa, strike, rate, interval, dt) = (4u64, 2.5, 120.0, 0.0003, 1.0 / 3.0, 1.0 / 24.0);
    for role in [OptionRole::Holder, OptionRole::Writer] {
        let mut pos = open_option(
            OptionTerms::Everlasting(EverlastingOptionSpec {
                underlying: AssetRef::new("ETH", AssetCategory::L1),
                collateral_asset: AssetRef::new("USDC", AssetCategory::Stable),
                leverage: 1.0,
                side: OptionSide::Put,
                role,
                strike,
                contracts: n,
                multiplier: kappa,
                premium: 6.0,
                funding: FundingConfig::constant(rate, interval),
            }),
            &FeeSchedule::zero(),
        )
        .unwrap();
        for _ in 0..168 {
            pos.everlasting_step(dt).unwrap();
        }
        let s = if role == OptionRole::Holder { 1.0 } else { -1.0 };
        let expected = s * n as f64 * kappa * strike * rate * 168.0 * dt / interval;
        assert!((pos.cumulative_fees - expected).abs() <= 1e-9 * expected.abs());
        // mark equal to premium: the only PnL is funding
        let pnl = pos.close_everlasting(6.0).unwrap();
        assert!((pnl + expected).abs() <= 1e-9 * expected.abs());
    }
}

#[test]
fn redeem_fees_use_debt_value_at_each_event() {
    let spec = SyntheticSpec {
        underlying: AssetRef::new("sUSD", AssetCategory::Stable),
        collateral_asset: AssetRef::new("SNX", AssetCategory::DeFi),
        cr_min: 1.5,
        cr_liq: 1.45,
        cr_target: 1.6,
        liquidation_penalty: 0.1,
    };
    let fees = FeeSchedule {
        open_fee_rate: 0.001,
        close_fee_rate: 0.001,
        ..FeeSchedule::zero()
    };
    let mut pos = synth::mint(&spec, 200.0, 100.0, 1.0, 1.0).unwrap();
    let pnl = pos.redeem(1.1, &fees).unwrap();
    // 100 * 0.10 - 0.001 * 100 - 0.001 * 110
    let expected = 10.0 - 0.1 - 0.11;
    assert!((pnl - expected).abs() < 1e-12);
}

#[test]
fn partial_liquidation_worked_example() {
    let spec = SyntheticSpec {
        underlying: AssetRef::new("sUSD", AssetCategory::Stable),
        collateral_asset: AssetRef::new("SNX", AssetCategory::DeFi),
        cr_min: 1.5,
        cr_liq: 1.45,
        cr_target: 1.6,
        liquidation_penalty: 0.1,
    };
    let mut pos = synth::mint(&spec, 150.0, 100.0, 1.0, 1.0).unwrap();
    // collateral slides to 140 of value against 100 of debt
    let p_coll = 140.0 / 150.0;
    pos.monitor_and_liquidate(p_coll, 1.0).unwrap();
    let v_coll = pos.collateral_units * p_coll;
    let v_debt = pos.synth_units;
    // d = (160 - 140) / (1.6 - 1.1) = 40
    assert!((v_coll - 96.0).abs() < 1e-9);
    assert!((v_debt - 60.0).abs() < 1e-9);
    assert!((v_coll / v_debt - 1.6).abs() < 1e-9 * 1.6);
}
