//! Reward-bearing liquidity pool ledger. Fees raise NAV while the LP supply
//! stays put, so each share's unit value appreciates.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Result, SimError};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct PoolState {
    pub nav: f64,
    pub lp_supply: f64,
    pub fee_income_cum: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PoolEventKind {
    Deposit,
    Fee,
    Withdraw,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PoolEvent {
    pub event: PoolEventKind,
    pub amount: f64,
    pub shares: f64,
    pub nav: f64,
    pub lp_supply: f64,
}

impl PoolState {
    pub fn empty() -> Self {
        Self::default()
    }

    /// NAV per share; `None` for an empty pool.
    pub fn unit_value(&self) -> Option<f64> {
        (self.lp_supply > 0.0).then(|| self.nav / self.lp_supply)
    }

    /// Mints shares pro rata to NAV, 1:1 into an empty pool.
    pub fn deposit(&mut self, amount: f64) -> Result<f64> {
        if !(amount > 0.0 && amount.is_finite()) {
            return Err(SimError::InvalidInput(format!("deposit must be > 0, got {amount}")));
        }
        let shares = if self.lp_supply == 0.0 {
            amount
        } else {
            amount * self.lp_supply / self.nav
        };
        self.nav += amount;
        self.lp_supply += shares;
        Ok(shares)
    }

    pub fn accrue_fee(&mut self, amount: f64) -> Result<()> {
        if !(amount >= 0.0 && amount.is_finite()) {
            return Err(SimError::InvalidInput(format!("fee must be >= 0, got {amount}")));
        }
        self.nav += amount;
        self.fee_income_cum += amount;
        Ok(())
    }

    /// Burns `shares` and pays out their pro-rata slice of NAV.
    pub fn withdraw(&mut self, shares: f64) -> Result<f64> {
        if !(shares > 0.0 && shares.is_finite()) {
            return Err(SimError::InvalidInput(format!("shares must be > 0, got {shares}")));
        }
        if shares > self.lp_supply {
            return Err(SimError::InsufficientShares {
                requested: shares,
                supply: self.lp_supply,
            });
        }
        if shares == self.lp_supply {
            let redeemed = self.nav;
            self.nav = 0.0;
            self.lp_supply = 0.0;
            return Ok(redeemed);
        }
        let redeemed = shares * self.nav / self.lp_supply;
        self.nav -= redeemed;
        self.lp_supply -= shares;
        Ok(redeemed)
    }
}

/// A pool plus its event log.
#[derive(Debug, Clone, Default, Serialize)]
pub struct PoolLedger {
    pub state: PoolState,
    pub events: Vec<PoolEvent>,
}

impl PoolLedger {
    pub fn new() -> Self {
        Self::default()
    }

    fn record(&mut self, event: PoolEventKind, amount: f64, shares: f64) {
        self.events.push(PoolEvent {
            event,
            amount,
            shares,
            nav: self.state.nav,
            lp_supply: self.state.lp_supply,
        });
    }

    pub fn deposit(&mut self, amount: f64) -> Result<f64> {
        let shares = self.state.deposit(amount)?;
        self.record(PoolEventKind::Deposit, amount, shares);
        Ok(shares)
    }

    pub fn accrue_fee(&mut self, amount: f64) -> Result<()> {
        self.state.accrue_fee(amount)?;
        self.record(PoolEventKind::Fee, amount, 0.0);
        Ok(())
    }

    pub fn withdraw(&mut self, shares: f64) -> Result<f64> {
        let amount = self.state.withdraw(shares)?;
        self.record(PoolEventKind::Withdraw, amount, shares);
        Ok(amount)
    }

    /// CSV event log: `event,amount,shares,nav,lp_supply`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("event,amount,shares,nav,lp_supply\n");
        for e in &self.events {
            let kind = match e.event {
                PoolEventKind::Deposit => "deposit",
                PoolEventKind::Fee => "fee",
                PoolEventKind::Withdraw => "withdraw",
            };
            let _ = writeln!(out, "{kind},{},{},{},{}", e.amount, e.shares, e.nav, e.lp_supply);
        }
        out
    }
}
