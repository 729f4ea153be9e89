//! Collateralized debt positions backing synthetic assets.

use serde::{Deserialize, Serialize};

use crate::contract::{FeeSchedule, SyntheticSpec};
use crate::error::{Result, SimError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CdpStatus {
    Open,
    Redeemed,
    Liquidated,
}

impl CdpStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CdpStatus::Open => "open",
            CdpStatus::Redeemed => "redeemed",
            CdpStatus::Liquidated => "liquidated",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CdpPosition {
    pub spec: SyntheticSpec,
    pub collateral_units: f64,
    pub synth_units: f64,
    pub entry_underlying_price: f64,
    /// Debt value at mint; base of the open fee.
    pub entry_debt_value: f64,
    /// Running sum of (collateral value seized - debt value burned).
    pub penalty_paid: f64,
    pub status: CdpStatus,
    pub realized_pnl: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LiquidationOutcome {
    Healthy,
    Partial {
        debt_repaid: f64,
        collateral_seized: f64,
        synth_burned: f64,
        collateral_units_seized: f64,
    },
    Full {
        debt_repaid: f64,
        collateral_seized: f64,
        synth_burned: f64,
        collateral_units_seized: f64,
    },
}

fn check_price(name: &str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(SimError::InvalidInput(format!("{name} must be > 0, got {value}")))
    }
}

/// `CR = c * P_coll / (q * P_under)`.
#[inline]
pub fn cr(collateral_units: f64, synth_units: f64, p_coll: f64, p_under: f64) -> f64 {
    collateral_units * p_coll / (synth_units * p_under)
}

/// Locks `c` collateral units and mints `q` synths. Fails below `cr_min`.
pub fn mint(spec: &SyntheticSpec, c: f64, q: f64, p_coll: f64, p_under: f64) -> Result<CdpPosition> {
    spec.validate()?;
    check_price("collateral units", c)?;
    check_price("synth units", q)?;
    check_price("collateral price", p_coll)?;
    check_price("underlying price", p_under)?;
    let ratio = cr(c, q, p_coll, p_under);
    if ratio < spec.cr_min {
        return Err(SimError::UnderCollateralized {
            ratio,
            minimum: spec.cr_min,
        });
    }
    Ok(CdpPosition {
        spec: spec.clone(),
        collateral_units: c,
        synth_units: q,
        entry_underlying_price: p_under,
        entry_debt_value: q * p_under,
        penalty_paid: 0.0,
        status: CdpStatus::Open,
        realized_pnl: None,
    })
}

impl CdpPosition {
    fn ensure_open(&self) -> Result<()> {
        if self.status == CdpStatus::Open {
            Ok(())
        } else {
            Err(SimError::StaleState(self.status.as_str()))
        }
    }

    pub fn collateral_ratio(&self, p_coll: f64, p_under: f64) -> f64 {
        cr(self.collateral_units, self.synth_units, p_coll, p_under)
    }

    pub fn add_collateral(&mut self, units: f64) -> Result<()> {
        self.ensure_open()?;
        check_price("collateral units", units)?;
        self.collateral_units += units;
        Ok(())
    }

    /// Burns synths against debt. Burning the whole balance is a redemption,
    /// not a burn.
    pub fn burn(&mut self, units: f64) -> Result<()> {
        self.ensure_open()?;
        check_price("burn units", units)?;
        if units >= self.synth_units {
            return Err(SimError::InvalidInput("burn would clear the debt; redeem instead".into()));
        }
        self.synth_units -= units;
        Ok(())
    }

    /// Liquidates when `CR <= cr_liq`. A partial liquidation repays
    ///
    /// ```text
    /// d = (cr_target * V_debt - V_coll) / (cr_target - (1 + penalty))
    /// ```
    ///
    /// of debt and seizes `d * (1 + penalty)` of collateral, which lands the
    /// ratio exactly on `cr_target`. If `d` would clear the whole debt or needs
    /// more collateral than is posted, the position is closed out instead:
    /// all synths are burned and whatever collateral is left stays with the owner.
    pub fn monitor_and_liquidate(&mut self, p_coll: f64, p_under: f64) -> Result<LiquidationOutcome> {
        self.ensure_open()?;
        check_price("collateral price", p_coll)?;
        check_price("underlying price", p_under)?;
        let spec = &self.spec;
        let v_coll = self.collateral_units * p_coll;
        let v_debt = self.synth_units * p_under;
        if v_coll / v_debt > spec.cr_liq {
            return Ok(LiquidationOutcome::Healthy);
        }
        let bonus = 1.0 + spec.liquidation_penalty;
        let denom = spec.cr_target - bonus;
        if denom <= 0.0 {
            return Err(SimError::InfeasibleTarget {
                cr_target: spec.cr_target,
                penalty: spec.liquidation_penalty,
            });
        }
        let d = (spec.cr_target * v_debt - v_coll) / denom;
        if d >= v_debt || d * bonus >= v_coll {
            let seized = (v_debt * bonus).min(v_coll);
            let units_seized = (seized / p_coll).min(self.collateral_units);
            let burned = self.synth_units;
            self.collateral_units -= units_seized;
            self.synth_units = 0.0;
            self.penalty_paid += seized - v_debt;
            self.status = CdpStatus::Liquidated;
            self.realized_pnl = Some(-self.penalty_paid);
            return Ok(LiquidationOutcome::Full {
                debt_repaid: v_debt,
                collateral_seized: seized,
                synth_burned: burned,
                collateral_units_seized: units_seized,
            });
        }
        let burned = d / p_under;
        let units_seized = d * bonus / p_coll;
        self.synth_units -= burned;
        self.collateral_units -= units_seized;
        self.penalty_paid += d * spec.liquidation_penalty;
        Ok(LiquidationOutcome::Partial {
            debt_repaid: d,
            collateral_seized: d * bonus,
            synth_burned: burned,
            collateral_units_seized: units_seized,
        })
    }

    /// Burns the outstanding synths and unlocks all collateral.
    /// `RPnL = q * (P_exit - P_entry) - F_open - F_close`, with each fee charged
    /// on the debt value at its event.
    pub fn redeem(&mut self, p_under_exit: f64, fees: &FeeSchedule) -> Result<f64> {
        self.ensure_open()?;
        check_price("exit price", p_under_exit)?;
        let open_fee = fees.open_fee_rate * self.entry_debt_value;
        let close_fee = fees.close_fee_rate * self.synth_units * p_under_exit;
        let pnl = self.synth_units * (p_under_exit - self.entry_underlying_price) - open_fee - close_fee;
        self.realized_pnl = Some(pnl);
        self.status = CdpStatus::Redeemed;
        Ok(pnl)
    }
}
