//! Geometric Brownian motion price paths.
//!
//! Drift and volatility are per-day rates and time is measured in days. The
//! default grid is hourly steps over a seven-day horizon (168 steps).

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::rng::NormalStream;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarketParams {
    pub initial_price: f64,
    #[serde(default)]
    pub drift: f64,
    pub volatility: f64,
    #[serde(default = "MarketParams::default_step")]
    pub step_size: f64,
    #[serde(default = "MarketParams::default_horizon")]
    pub horizon: f64,
    #[serde(default)]
    pub master_seed: u64,
}

impl MarketParams {
    fn default_step() -> f64 {
        1.0 / 24.0
    }

    fn default_horizon() -> f64 {
        7.0
    }

    /// Hourly steps over seven days, zero drift.
    pub fn hourly_week(initial_price: f64, volatility: f64, master_seed: u64) -> Self {
        Self {
            initial_price,
            drift: 0.0,
            volatility,
            step_size: Self::default_step(),
            horizon: Self::default_horizon(),
            master_seed,
        }
    }

    /// N = round(horizon / step_size).
    pub fn steps(&self) -> usize {
        (self.horizon / self.step_size).round() as usize
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.initial_price > 0.0 && self.initial_price.is_finite()) {
            return Err(invalid("market.initial_price", "must be > 0"));
        }
        if !self.drift.is_finite() {
            return Err(invalid("market.drift", "must be finite"));
        }
        if !(self.volatility >= 0.0 && self.volatility.is_finite()) {
            return Err(invalid("market.volatility", "must be >= 0"));
        }
        if !(self.step_size > 0.0 && self.step_size.is_finite()) {
            return Err(invalid("market.step_size", "must be > 0"));
        }
        if !(self.horizon >= self.step_size && self.horizon.is_finite()) {
            return Err(invalid("market.horizon", "must be >= step_size"));
        }
        if self.steps() < 1 {
            return Err(invalid("market.horizon", "fewer than one step"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PricePath {
    pub prices: Vec<f64>,
    pub step_size: f64,
    pub path_index: u64,
}

impl PricePath {
    pub fn steps(&self) -> usize {
        self.prices.len() - 1
    }

    pub fn terminal(&self) -> f64 {
        *self.prices.last().expect("path has at least one price")
    }

    /// CSV dump with columns `step,time_days,price`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("step,time_days,price\n");
        for (k, p) in self.prices.iter().enumerate() {
            let _ = writeln!(out, "{},{},{}", k, k as f64 * self.step_size, p);
        }
        out
    }
}

/// Log-Euler GBM path:
/// `P[k+1] = P[k] * exp((mu - sigma^2/2) dt + sigma sqrt(dt) Z[k])`,
/// with `Z[k]` drawn from the counter stream keyed by `(master_seed, path_index, k)`.
pub fn generate_gbm(params: &MarketParams, path_index: u64) -> Result<PricePath> {
    params.validate()?;
    let n = params.steps();
    let dt = params.step_size;
    let drift = (params.drift - 0.5 * params.volatility * params.volatility) * dt;
    let diffusion = params.volatility * dt.sqrt();
    let stream = NormalStream::new(params.master_seed, path_index);

    let mut prices = Vec::with_capacity(n + 1);
    let mut price = params.initial_price;
    prices.push(price);
    for k in 0..n {
        let shock = if diffusion == 0.0 {
            0.0
        } else {
            diffusion * stream.normal(k as u64)
        };
        price *= (drift + shock).exp();
        prices.push(price);
    }
    Ok(PricePath {
        prices,
        step_size: dt,
        path_index,
    })
}
