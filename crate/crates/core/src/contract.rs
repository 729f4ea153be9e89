//! Contract tuples, fee/margin parameter sets and the named protocol presets.
//!
//! Every contract class is a plain value type. Nothing is simulated until
//! [`validate_spec`] has accepted it; after that the value is never mutated,
//! so a single spec can be shared by any number of path workers.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result, SimError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AssetCategory {
    L1,
    L2,
    DeFi,
    Meme,
    Gaming,
    Forex,
    RWA,
    Stable,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AssetRef {
    pub symbol: String,
    pub category: AssetCategory,
}

impl AssetRef {
    pub fn new(symbol: impl Into<String>, category: AssetCategory) -> Self {
        Self {
            symbol: symbol.into(),
            category,
        }
    }

    fn validate(&self, field: &'static str) -> Result<()> {
        if self.symbol.trim().is_empty() {
            return Err(invalid(field, "asset symbol is empty"));
        }
        Ok(())
    }
}

/// Direction of a perpetual position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Long,
    Short,
}

impl Side {
    /// Position sign S: +1 for long, -1 for short.
    #[inline]
    pub fn sign(self) -> f64 {
        match self {
            Side::Long => 1.0,
            Side::Short => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OptionSide {
    Call,
    Put,
}

/// Which end of an option the position sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OptionRole {
    #[default]
    Holder,
    Writer,
}

impl OptionRole {
    /// Holder sign s: +1 holder, -1 writer.
    #[inline]
    pub fn sign(self) -> f64 {
        match self {
            OptionRole::Holder => 1.0,
            OptionRole::Writer => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FundingMode {
    #[default]
    None,
    ConstantRate,
}

/// Periodic funding between longs and shorts. `rate` is charged once per
/// `interval` days; positive rates debit longs and credit shorts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FundingConfig {
    #[serde(default)]
    pub mode: FundingMode,
    #[serde(default)]
    pub rate: f64,
    #[serde(default = "FundingConfig::default_interval")]
    pub interval: f64,
}

impl Default for FundingConfig {
    fn default() -> Self {
        Self::none()
    }
}

impl FundingConfig {
    fn default_interval() -> f64 {
        1.0
    }

    pub fn none() -> Self {
        Self {
            mode: FundingMode::None,
            rate: 0.0,
            interval: 1.0,
        }
    }

    pub fn constant(rate: f64, interval: f64) -> Self {
        Self {
            mode: FundingMode::ConstantRate,
            rate,
            interval,
        }
    }

    /// Funding fraction of notional accrued over `dt` days (sign not applied).
    #[inline]
    pub fn accrual_fraction(&self, dt: f64) -> f64 {
        match self.mode {
            FundingMode::None => 0.0,
            FundingMode::ConstantRate => self.rate * dt / self.interval,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.rate.is_finite() {
            return Err(invalid("funding.rate", "must be finite"));
        }
        if self.mode == FundingMode::None && self.rate != 0.0 {
            return Err(invalid("funding.rate", "mode None requires rate = 0"));
        }
        if !(self.interval > 0.0 && self.interval.is_finite()) {
            return Err(invalid("funding.interval", "must be > 0"));
        }
        Ok(())
    }
}

/// Execution, borrowing and margin parameters. All rates are fractions.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FeeSchedule {
    pub open_fee_rate: f64,
    pub close_fee_rate: f64,
    pub borrow_rate_per_step: f64,
    pub entry_slippage: f64,
    pub maintenance_margin_rate: f64,
}

impl FeeSchedule {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("fee_schedule.open_fee_rate", self.open_fee_rate),
            ("fee_schedule.close_fee_rate", self.close_fee_rate),
            ("fee_schedule.borrow_rate_per_step", self.borrow_rate_per_step),
            ("fee_schedule.entry_slippage", self.entry_slippage),
            (
                "fee_schedule.maintenance_margin_rate",
                self.maintenance_margin_rate,
            ),
        ];
        for (field, value) in fields {
            if !(value >= 0.0 && value.is_finite()) {
                return Err(invalid(field, format!("must be a finite value >= 0, got {value}")));
            }
        }
        if self.maintenance_margin_rate >= 1.0 {
            return Err(invalid(
                "fee_schedule.maintenance_margin_rate",
                "must be < 1",
            ));
        }
        Ok(())
    }
}

/// Perpetual future tuple: underlying, collateral, leverage, side, entry
/// reference and funding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerpetualSpec {
    pub underlying: AssetRef,
    pub collateral_asset: AssetRef,
    pub collateral_amount: f64,
    pub leverage: f64,
    pub side: Side,
    pub entry_reference_price: f64,
    #[serde(default)]
    pub funding: FundingConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpiringOptionSpec {
    pub underlying: AssetRef,
    pub collateral_asset: AssetRef,
    /// Carried through validation; payoff math does not use it.
    pub leverage: f64,
    pub side: OptionSide,
    #[serde(default)]
    pub role: OptionRole,
    pub strike: f64,
    /// Days from entry.
    pub expiry: f64,
    pub contracts: u64,
    pub multiplier: f64,
    pub premium: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EverlastingOptionSpec {
    pub underlying: AssetRef,
    pub collateral_asset: AssetRef,
    pub leverage: f64,
    pub side: OptionSide,
    #[serde(default)]
    pub role: OptionRole,
    pub strike: f64,
    pub contracts: u64,
    pub multiplier: f64,
    pub premium: f64,
    #[serde(default)]
    pub funding: FundingConfig,
}

/// Synthetic asset minted against a collateralized debt position. Prices of
/// the underlying and the collateral are runtime inputs, not parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticSpec {
    pub underlying: AssetRef,
    pub collateral_asset: AssetRef,
    pub cr_min: f64,
    pub cr_liq: f64,
    pub cr_target: f64,
    pub liquidation_penalty: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ContractSpec {
    Perpetual(PerpetualSpec),
    ExpiringOption(ExpiringOptionSpec),
    EverlastingOption(EverlastingOptionSpec),
    Synthetic(SyntheticSpec),
}

fn positive(field: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(invalid(field, format!("must be > 0, got {value}")))
    }
}

fn check_leverage(value: f64) -> Result<()> {
    if value >= 1.0 && value.is_finite() {
        Ok(())
    } else {
        Err(invalid("leverage", format!("must be >= 1, got {value}")))
    }
}

fn check_option_terms(strike: f64, contracts: u64, multiplier: f64, premium: f64) -> Result<()> {
    positive("strike", strike)?;
    if contracts < 1 {
        return Err(invalid("contracts", "must be >= 1"));
    }
    positive("multiplier", multiplier)?;
    if !(premium >= 0.0 && premium.is_finite()) {
        return Err(invalid("premium", format!("must be >= 0, got {premium}")));
    }
    Ok(())
}

impl PerpetualSpec {
    pub fn validate(&self) -> Result<()> {
        self.underlying.validate("underlying")?;
        self.collateral_asset.validate("collateral_asset")?;
        positive("collateral_amount", self.collateral_amount)?;
        check_leverage(self.leverage)?;
        positive("entry_reference_price", self.entry_reference_price)?;
        self.funding.validate()
    }
}

impl ExpiringOptionSpec {
    pub fn validate(&self) -> Result<()> {
        self.underlying.validate("underlying")?;
        self.collateral_asset.validate("collateral_asset")?;
        check_leverage(self.leverage)?;
        check_option_terms(self.strike, self.contracts, self.multiplier, self.premium)?;
        positive("expiry", self.expiry)
    }
}

impl EverlastingOptionSpec {
    pub fn validate(&self) -> Result<()> {
        self.underlying.validate("underlying")?;
        self.collateral_asset.validate("collateral_asset")?;
        check_leverage(self.leverage)?;
        check_option_terms(self.strike, self.contracts, self.multiplier, self.premium)?;
        self.funding.validate()
    }
}

impl SyntheticSpec {
    pub fn validate(&self) -> Result<()> {
        self.underlying.validate("underlying")?;
        self.collateral_asset.validate("collateral_asset")?;
        let (min, liq, target) = (self.cr_min, self.cr_liq, self.cr_target);
        if !(min.is_finite() && liq.is_finite() && target.is_finite()) {
            return Err(invalid("cr ordering", "ratios must be finite"));
        }
        if !(target > min && min >= liq && liq > 1.0) {
            return Err(invalid(
                "cr ordering",
                format!("need cr_target > cr_min >= cr_liq > 1, got {target} / {min} / {liq}"),
            ));
        }
        let penalty = self.liquidation_penalty;
        if !(penalty >= 0.0 && penalty < target - 1.0) {
            return Err(invalid(
                "liquidation_penalty",
                format!("need 0 <= penalty < cr_target - 1, got {penalty}"),
            ));
        }
        Ok(())
    }
}

impl ContractSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            ContractSpec::Perpetual(s) => s.validate(),
            ContractSpec::ExpiringOption(s) => s.validate(),
            ContractSpec::EverlastingOption(s) => s.validate(),
            ContractSpec::Synthetic(s) => s.validate(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ContractSpec::Perpetual(_) => "perpetual",
            ContractSpec::ExpiringOption(_) => "expiring_option",
            ContractSpec::EverlastingOption(_) => "everlasting_option",
            ContractSpec::Synthetic(_) => "synthetic",
        }
    }
}

/// Returns the spec unchanged when every invariant holds, otherwise the first
/// violated one.
pub fn validate_spec(spec: ContractSpec) -> Result<ContractSpec> {
    spec.validate()?;
    Ok(spec)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtocolPreset {
    pub name: String,
    pub fee_schedule: FeeSchedule,
    #[serde(default)]
    pub funding: FundingConfig,
    pub max_leverage: f64,
}

impl ProtocolPreset {
    pub fn validate(&self) -> Result<()> {
        if self.name.trim().is_empty() {
            return Err(invalid("name", "preset name is empty"));
        }
        self.fee_schedule.validate()?;
        self.funding.validate()?;
        check_leverage(self.max_leverage).map_err(|_| invalid("max_leverage", "must be >= 1"))
    }
}

/// One hour, in days.
pub const HOUR: f64 = 1.0 / 24.0;

/// The preset registry. Names are unique.
///
/// `hyperliquid` and `dydx` are approximations: fees are midpoints of the
/// published ranges, and funding is a constant rate derived from the
/// protocol's funding formula evaluated on a neutral book.
pub fn presets() -> Vec<ProtocolPreset> {
    vec![
        ProtocolPreset {
            name: "jupiter".into(),
            fee_schedule: FeeSchedule {
                open_fee_rate: 0.0006,
                close_fee_rate: 0.0006,
                borrow_rate_per_step: 0.000027,
                entry_slippage: 0.0020,
                maintenance_margin_rate: 0.002556,
            },
            funding: FundingConfig::none(),
            max_leverage: 100.0,
        },
        ProtocolPreset {
            name: "frictionless".into(),
            fee_schedule: FeeSchedule::zero(),
            funding: FundingConfig::none(),
            max_leverage: 1000.0,
        },
        ProtocolPreset {
            name: "hyperliquid".into(),
            fee_schedule: FeeSchedule {
                // maker-taker tiers span 0 - 0.045 %
                open_fee_rate: 0.000225,
                close_fee_rate: 0.000225,
                borrow_rate_per_step: 0.0,
                entry_slippage: 0.0,
                // half the initial margin at 40x
                maintenance_margin_rate: 0.0125,
            },
            // zero premium, 0.00125 % hourly interest component
            funding: FundingConfig::constant(
                crate::perp::funding_rate_clamp(0.0, 0.0000125),
                HOUR,
            ),
            max_leverage: 40.0,
        },
        ProtocolPreset {
            name: "dydx".into(),
            fee_schedule: FeeSchedule {
                // base fee 0.025 - 0.05 %
                open_fee_rate: 0.000375,
                close_fee_rate: 0.000375,
                borrow_rate_per_step: 0.0,
                entry_slippage: 0.0,
                maintenance_margin_rate: 0.025,
            },
            // premium of a symmetric book around the index is zero
            funding: FundingConfig::constant(0.0, HOUR),
            max_leverage: 20.0,
        },
    ]
}

pub fn load_preset(name: &str) -> Result<ProtocolPreset> {
    presets()
        .into_iter()
        .find(|p| p.name == name)
        .ok_or_else(|| SimError::UnknownPreset(name.to_string()))
}
