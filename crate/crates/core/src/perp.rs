//! Perpetual-futures position lifecycle.
//!
//! Sizing is fixed at entry: `Q = C0 * L / fill` and `NV = C0 * L`. The open
//! fee comes out of equity rather than out of the sizing collateral. Each step
//! accrues borrow and funding into the cumulative fee `phi`, recomputes
//!
//! ```text
//! equity = C0 - F_open + S * Q * (P - fill) - phi
//! ```
//!
//! and liquidates in full once `equity <= r_m * NV`. The trader keeps
//! `max(equity, 0)` on liquidation.

use serde::{Deserialize, Serialize};

use crate::contract::{FeeSchedule, PerpetualSpec, Side};
use crate::error::{Result, SimError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PositionStatus {
    Open,
    Closed,
    Liquidated,
}

impl PositionStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            PositionStatus::Open => "open",
            PositionStatus::Closed => "closed",
            PositionStatus::Liquidated => "liquidated",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerpPosition {
    pub spec: PerpetualSpec,
    pub fees: FeeSchedule,
    pub fill_price: f64,
    /// |Q|; the direction lives in `spec.side`.
    pub quantity: f64,
    pub notional: f64,
    pub initial_collateral: f64,
    pub open_fee: f64,
    pub close_fee: f64,
    /// Phi: borrow plus funding, open fee excluded.
    pub cumulative_fees: f64,
    pub borrow_paid: f64,
    /// Signed funding paid (negative when received).
    pub funding_paid: f64,
    pub equity: f64,
    pub mark_price: f64,
    pub status: PositionStatus,
    pub realized_pnl: Option<f64>,
    pub steps_elapsed: u64,
}

/// Stop-loss / take-profit prices.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct TriggerConfig {
    #[serde(default)]
    pub stop_loss: Option<f64>,
    #[serde(default)]
    pub take_profit: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CloseReason {
    StopLoss,
    TakeProfit,
}

pub fn open_position(spec: &PerpetualSpec, fees: &FeeSchedule, mark_price: f64) -> Result<PerpPosition> {
    spec.validate()?;
    fees.validate()?;
    if !(mark_price > 0.0 && mark_price.is_finite()) {
        return Err(SimError::InvalidInput(format!("mark price must be > 0, got {mark_price}")));
    }
    let sign = spec.side.sign();
    let fill_price = mark_price * (1.0 + sign * fees.entry_slippage);
    let notional = spec.collateral_amount * spec.leverage;
    let quantity = notional / fill_price;
    let open_fee = fees.open_fee_rate * notional;
    let equity = spec.collateral_amount - open_fee;
    let requirement = fees.maintenance_margin_rate * notional;
    if equity <= requirement {
        return Err(SimError::ImmediateInsolvency { equity, requirement });
    }
    Ok(PerpPosition {
        spec: spec.clone(),
        fees: *fees,
        fill_price,
        quantity,
        notional,
        initial_collateral: spec.collateral_amount,
        open_fee,
        close_fee: 0.0,
        cumulative_fees: 0.0,
        borrow_paid: 0.0,
        funding_paid: 0.0,
        equity,
        mark_price,
        status: PositionStatus::Open,
        realized_pnl: None,
        steps_elapsed: 0,
    })
}

impl PerpPosition {
    #[inline]
    pub fn sign(&self) -> f64 {
        self.spec.side.sign()
    }

    pub fn side(&self) -> Side {
        self.spec.side
    }

    /// Gross UPnL = S * Q * (P - fill).
    #[inline]
    pub fn upnl(&self, price: f64) -> f64 {
        self.sign() * self.quantity * (price - self.fill_price)
    }

    /// UPnL net of accrued time fees.
    pub fn upnl_net(&self, price: f64) -> f64 {
        self.upnl(price) - self.cumulative_fees
    }

    /// M_m = r_m * NV.
    #[inline]
    pub fn margin_requirement(&self) -> f64 {
        self.fees.maintenance_margin_rate * self.notional
    }

    /// C0 - F_open + UPnL(price) - phi.
    #[inline]
    pub fn equity_at(&self, price: f64) -> f64 {
        self.initial_collateral - self.open_fee + self.upnl(price) - self.cumulative_fees
    }

    pub fn is_open(&self) -> bool {
        self.status == PositionStatus::Open
    }

    fn ensure_open(&self) -> Result<()> {
        if self.is_open() {
            Ok(())
        } else {
            Err(SimError::StaleState(self.status.as_str()))
        }
    }

    /// Price at which the equity equation meets the maintenance requirement
    /// given the fees accrued so far.
    pub fn liquidation_price(&self) -> f64 {
        let buffer = self.initial_collateral - self.open_fee - self.cumulative_fees - self.margin_requirement();
        self.fill_price - buffer / (self.sign() * self.quantity)
    }

    /// Advances one step of `dt` days at `price`: accrues borrow and funding,
    /// recomputes equity, then liquidates if the margin is breached.
    /// Returns the status after the step.
    pub fn step(&mut self, price: f64, dt: f64) -> Result<PositionStatus> {
        self.ensure_open()?;
        if !(price > 0.0 && price.is_finite()) {
            return Err(SimError::InvalidInput(format!("price must be > 0, got {price}")));
        }
        let borrow = self.fees.borrow_rate_per_step * self.notional;
        let funding = self.sign() * self.notional * self.spec.funding.accrual_fraction(dt);
        self.borrow_paid += borrow;
        self.funding_paid += funding;
        self.cumulative_fees += borrow + funding;
        self.mark_price = price;
        self.steps_elapsed += 1;
        self.equity = self.equity_at(price);
        if self.equity <= self.margin_requirement() {
            self.status = PositionStatus::Liquidated;
            self.realized_pnl = Some(self.equity.max(0.0) - self.initial_collateral);
        }
        Ok(self.status)
    }

    /// Voluntary exit at `price`, charging the close fee on NV.
    pub fn close(&mut self, price: f64) -> Result<f64> {
        self.ensure_open()?;
        if !(price > 0.0 && price.is_finite()) {
            return Err(SimError::InvalidInput(format!("price must be > 0, got {price}")));
        }
        self.close_fee = self.fees.close_fee_rate * self.notional;
        let realized = self.upnl(price) - self.open_fee - self.close_fee - self.cumulative_fees;
        self.mark_price = price;
        self.realized_pnl = Some(realized);
        self.equity = self.initial_collateral + realized;
        self.status = PositionStatus::Closed;
        Ok(realized)
    }
}

pub fn close_position(pos: &mut PerpPosition, price: f64) -> Result<f64> {
    pos.close(price)
}

impl TriggerConfig {
    pub fn validate(&self, side: Side, fill_price: f64) -> Result<()> {
        let bad = |field: &'static str, reason: &str| SimError::InvalidSpec {
            field,
            reason: reason.to_string(),
        };
        let sl_ok = |sl: f64| match side {
            Side::Long => sl < fill_price,
            Side::Short => sl > fill_price,
        };
        let tp_ok = |tp: f64| match side {
            Side::Long => tp > fill_price,
            Side::Short => tp < fill_price,
        };
        if let Some(sl) = self.stop_loss {
            if !(sl > 0.0 && sl_ok(sl)) {
                return Err(bad("stop_loss", "must sit on the losing side of the fill price"));
            }
        }
        if let Some(tp) = self.take_profit {
            if !(tp > 0.0 && tp_ok(tp)) {
                return Err(bad("take_profit", "must sit on the winning side of the fill price"));
            }
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.stop_loss.is_none() && self.take_profit.is_none()
    }
}

/// Returns a close instruction when a trigger is crossed. Callers run this
/// after [`PerpPosition::step`], so a liquidation in the same step wins.
pub fn check_triggers(pos: &PerpPosition, price: f64, triggers: &TriggerConfig) -> Option<CloseReason> {
    if !pos.is_open() {
        return None;
    }
    match pos.side() {
        Side::Long => {
            if triggers.stop_loss.is_some_and(|sl| price <= sl) {
                return Some(CloseReason::StopLoss);
            }
            if triggers.take_profit.is_some_and(|tp| price >= tp) {
                return Some(CloseReason::TakeProfit);
            }
        }
        Side::Short => {
            if triggers.stop_loss.is_some_and(|sl| price >= sl) {
                return Some(CloseReason::StopLoss);
            }
            if triggers.take_profit.is_some_and(|tp| price <= tp) {
                return Some(CloseReason::TakeProfit);
            }
        }
    }
    None
}

/// Hyperliquid-style funding: `premium + clamp(interest - premium, -0.0005, 0.0005)`.
pub fn funding_rate_clamp(premium_avg: f64, interest_rate: f64) -> f64 {
    premium_avg + (interest_rate - premium_avg).clamp(-0.0005, 0.0005)
}

/// dYdX funding premium: `(max(0, bid - index) - max(0, index - ask)) / index`.
pub fn funding_premium_dydx(bid: f64, ask: f64, index: f64) -> Result<f64> {
    if index.is_nan() || index <= 0.0 {
        return Err(SimError::InvalidInput(format!("index must be > 0, got {index}")));
    }
    if bid > ask {
        return Err(SimError::DegenerateBook { bid, ask });
    }
    Ok(((bid - index).max(0.0) - (index - ask).max(0.0)) / index)
}
