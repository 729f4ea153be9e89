//! Expiring and everlasting option positions.
//!
//! Marks default to intrinsic value. Everlasting contracts accrue funding on
//! the constant notional `n * kappa * strike`. Leverage on the option tuples is
//! validated but never enters the payoff.

use serde::{Deserialize, Serialize};

use crate::contract::{EverlastingOptionSpec, ExpiringOptionSpec, FeeSchedule, FundingConfig, OptionSide};
use crate::error::{Result, SimError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OptionTerms {
    Expiring(ExpiringOptionSpec),
    Everlasting(EverlastingOptionSpec),
}

impl OptionTerms {
    pub fn side(&self) -> OptionSide {
        match self {
            OptionTerms::Expiring(s) => s.side,
            OptionTerms::Everlasting(s) => s.side,
        }
    }

    pub fn strike(&self) -> f64 {
        match self {
            OptionTerms::Expiring(s) => s.strike,
            OptionTerms::Everlasting(s) => s.strike,
        }
    }

    pub fn premium(&self) -> f64 {
        match self {
            OptionTerms::Expiring(s) => s.premium,
            OptionTerms::Everlasting(s) => s.premium,
        }
    }

    /// n * kappa.
    pub fn size(&self) -> f64 {
        match self {
            OptionTerms::Expiring(s) => s.contracts as f64 * s.multiplier,
            OptionTerms::Everlasting(s) => s.contracts as f64 * s.multiplier,
        }
    }

    pub fn contracts(&self) -> u64 {
        match self {
            OptionTerms::Expiring(s) => s.contracts,
            OptionTerms::Everlasting(s) => s.contracts,
        }
    }

    pub fn multiplier(&self) -> f64 {
        match self {
            OptionTerms::Expiring(s) => s.multiplier,
            OptionTerms::Everlasting(s) => s.multiplier,
        }
    }

    pub fn holder_sign(&self) -> f64 {
        match self {
            OptionTerms::Expiring(s) => s.role.sign(),
            OptionTerms::Everlasting(s) => s.role.sign(),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            OptionTerms::Expiring(s) => s.validate(),
            OptionTerms::Everlasting(s) => s.validate(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OptionStatus {
    Open,
    Settled,
    Closed,
}

impl OptionStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            OptionStatus::Open => "open",
            OptionStatus::Settled => "settled",
            OptionStatus::Closed => "closed",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptionPosition {
    pub terms: OptionTerms,
    pub fees: FeeSchedule,
    /// s: +1 holder, -1 writer.
    pub holder_sign: f64,
    pub open_fee: f64,
    pub close_fee: f64,
    pub cumulative_fees: f64,
    pub status: OptionStatus,
    pub realized_pnl: Option<f64>,
}

/// Per-contract mark. Anything `Fn(side, price, strike) -> value` works.
pub trait MarkValuation {
    fn mark(&self, side: OptionSide, price: f64, strike: f64) -> f64;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct IntrinsicMark;

impl MarkValuation for IntrinsicMark {
    fn mark(&self, side: OptionSide, price: f64, strike: f64) -> f64 {
        intrinsic_value(side, price, strike)
    }
}

impl<F> MarkValuation for F
where
    F: Fn(OptionSide, f64, f64) -> f64,
{
    fn mark(&self, side: OptionSide, price: f64, strike: f64) -> f64 {
        self(side, price, strike)
    }
}

/// `max(P - K, 0)` for calls, `max(K - P, 0)` for puts.
#[inline]
pub fn intrinsic_value(side: OptionSide, price: f64, strike: f64) -> f64 {
    match side {
        OptionSide::Call => (price - strike).max(0.0),
        OptionSide::Put => (strike - price).max(0.0),
    }
}

/// Opens a position, charging the open fee on the premium traded (`n * kappa * premium`).
pub fn open_option(terms: OptionTerms, fees: &FeeSchedule) -> Result<OptionPosition> {
    terms.validate()?;
    fees.validate()?;
    let open_fee = fees.open_fee_rate * terms.size() * terms.premium();
    Ok(OptionPosition {
        holder_sign: terms.holder_sign(),
        terms,
        fees: *fees,
        open_fee,
        close_fee: 0.0,
        cumulative_fees: 0.0,
        status: OptionStatus::Open,
        realized_pnl: None,
    })
}

impl OptionPosition {
    fn ensure_open(&self) -> Result<()> {
        match self.status {
            OptionStatus::Open => Ok(()),
            OptionStatus::Settled => Err(SimError::StaleState("settled")),
            OptionStatus::Closed => Err(SimError::StaleState("closed")),
        }
    }

    /// `s * n * kappa * (V - premium)`.
    pub fn mark_upnl(&self, mark_value: f64) -> f64 {
        self.holder_sign * self.terms.size() * (mark_value - self.terms.premium())
    }

    fn realize(&mut self, mark_value: f64, status: OptionStatus) -> f64 {
        self.close_fee = self.fees.close_fee_rate * self.terms.size() * mark_value;
        let pnl = self.mark_upnl(mark_value) - self.open_fee - self.close_fee - self.cumulative_fees;
        self.realized_pnl = Some(pnl);
        self.status = status;
        pnl
    }

    /// Settles an expiring contract at its intrinsic value.
    pub fn settle_expiry(&mut self, terminal_price: f64) -> Result<f64> {
        if matches!(self.terms, OptionTerms::Everlasting(_)) {
            return Err(SimError::NotExpiring);
        }
        self.ensure_open()?;
        if terminal_price.is_nan() || terminal_price <= 0.0 {
            return Err(SimError::InvalidInput(format!("terminal price must be > 0, got {terminal_price}")));
        }
        let value = intrinsic_value(self.terms.side(), terminal_price, self.terms.strike());
        Ok(self.realize(value, OptionStatus::Settled))
    }

    fn funding(&self) -> Result<&FundingConfig> {
        match &self.terms {
            OptionTerms::Everlasting(s) => Ok(&s.funding),
            OptionTerms::Expiring(_) => Err(SimError::NotEverlasting),
        }
    }

    /// Accrues everlasting funding over `dt` days:
    /// `phi += s * (n * kappa * strike) * F * dt / interval`.
    pub fn everlasting_step(&mut self, dt: f64) -> Result<f64> {
        let fraction = self.funding()?.accrual_fraction(dt);
        self.ensure_open()?;
        let payment = self.holder_sign * self.terms.size() * self.terms.strike() * fraction;
        self.cumulative_fees += payment;
        Ok(payment)
    }

    /// Manual exit of an everlasting position at the given per-contract mark.
    pub fn close_everlasting(&mut self, mark_value: f64) -> Result<f64> {
        self.funding()?;
        self.ensure_open()?;
        if mark_value.is_nan() || mark_value < 0.0 {
            return Err(SimError::InvalidInput(format!("mark value must be >= 0, got {mark_value}")));
        }
        Ok(self.realize(mark_value, OptionStatus::Closed))
    }

    pub fn settlement_report(&self, terminal_price: f64) -> SettlementReport {
        SettlementReport {
            side: self.terms.side(),
            s: self.holder_sign as i8,
            n: self.terms.contracts(),
            kappa: self.terms.multiplier(),
            strike: self.terms.strike(),
            premium: self.terms.premium(),
            terminal_price,
            realized_pnl: self.realized_pnl,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SettlementReport {
    pub side: OptionSide,
    pub s: i8,
    pub n: u64,
    pub kappa: f64,
    pub strike: f64,
    pub premium: f64,
    pub terminal_price: f64,
    pub realized_pnl: Option<f64>,
}
