//! JSON experiment documents.
//!
//! ```json
//! {
//!   "market":   { "initial_price": 100, "volatility": 0.04, "master_seed": 0 },
//!   "contract": { "type": "perpetual", ... },
//!   "preset":   "jupiter",
//!   "experiment": { "replications": 500, "grid": { ... }, "tornado": { ... } }
//! }
//! ```
//!
//! `preset` is either a registered name or an inline object carrying a
//! `fee_schedule`.

use serde::{Deserialize, Serialize};

use crate::contract::{load_preset, ContractSpec, FeeSchedule, FundingConfig, ProtocolPreset};
use crate::error::{Result, SimError};
use crate::mc::{CdpSizing, ExperimentConfig, TornadoParam, DEFAULT_REPLICATIONS};
use crate::paths::MarketParams;
use crate::perp::TriggerConfig;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PresetRef {
    Name(String),
    Inline(InlinePreset),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InlinePreset {
    #[serde(default = "InlinePreset::default_name")]
    pub name: String,
    pub fee_schedule: FeeSchedule,
    #[serde(default)]
    pub funding: FundingConfig,
    #[serde(default = "InlinePreset::default_max_leverage")]
    pub max_leverage: f64,
}

impl InlinePreset {
    fn default_name() -> String {
        "custom".into()
    }

    fn default_max_leverage() -> f64 {
        1000.0
    }
}

impl PresetRef {
    pub fn resolve(&self) -> Result<ProtocolPreset> {
        match self {
            PresetRef::Name(name) => load_preset(name),
            PresetRef::Inline(p) => Ok(ProtocolPreset {
                name: p.name.clone(),
                fee_schedule: p.fee_schedule,
                funding: p.funding,
                max_leverage: p.max_leverage,
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridAxes {
    pub sigmas: Vec<f64>,
    pub leverages: Vec<f64>,
}

impl Default for GridAxes {
    fn default() -> Self {
        Self {
            sigmas: vec![0.02, 0.04, 0.06, 0.08],
            leverages: vec![2.0, 5.0, 10.0, 15.0, 20.0, 50.0, 100.0],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TornadoSettings {
    #[serde(default = "TornadoSettings::default_shock")]
    pub shock: f64,
    #[serde(default = "TornadoSettings::default_parameters")]
    pub parameters: Vec<TornadoParam>,
}

impl TornadoSettings {
    fn default_shock() -> f64 {
        0.20
    }

    fn default_parameters() -> Vec<TornadoParam> {
        TornadoParam::ALL.to_vec()
    }
}

impl Default for TornadoSettings {
    fn default() -> Self {
        Self {
            shock: Self::default_shock(),
            parameters: Self::default_parameters(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSection {
    #[serde(default = "default_replications")]
    pub replications: usize,
    #[serde(default)]
    pub grid: GridAxes,
    #[serde(default)]
    pub tornado: TornadoSettings,
    #[serde(default)]
    pub triggers: Option<TriggerConfig>,
    #[serde(default)]
    pub pool_liquidity: Option<f64>,
    #[serde(default)]
    pub cdp: Option<CdpSizing>,
    /// Path replayed by the `path` subcommand.
    #[serde(default)]
    pub path_index: u64,
}

fn default_replications() -> usize {
    DEFAULT_REPLICATIONS
}

impl Default for ExperimentSection {
    fn default() -> Self {
        Self {
            replications: DEFAULT_REPLICATIONS,
            grid: GridAxes::default(),
            tornado: TornadoSettings::default(),
            triggers: None,
            pool_liquidity: None,
            cdp: None,
            path_index: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigDocument {
    pub market: MarketParams,
    pub contract: ContractSpec,
    pub preset: PresetRef,
    #[serde(default)]
    pub experiment: ExperimentSection,
}

impl ConfigDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| SimError::Config(e.to_string()))
    }

    pub fn experiment_config(&self) -> Result<ExperimentConfig> {
        let config = ExperimentConfig {
            contract: self.contract.clone(),
            preset: self.preset.resolve()?,
            market: self.market,
            replications: self.experiment.replications,
            triggers: self.experiment.triggers,
            pool_liquidity: self.experiment.pool_liquidity,
            cdp: self.experiment.cdp,
        };
        config.validate()?;
        Ok(config)
    }
}
