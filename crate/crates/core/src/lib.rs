//! Simulation engine for DeFi derivative contracts.
//!
//! Contracts are plain tuples ([`contract`]) that the position engines
//! ([`perp`], [`options`], [`synth`]) evolve along GBM price paths
//! ([`paths`]). [`mc`] runs single paths, batches, (sigma, L) grids and
//! tornado sensitivities on top of them.

pub mod config;
pub mod contract;
pub mod error;
pub mod mc;
pub mod options;
pub mod paths;
pub mod perp;
pub mod pool;
pub mod report;
pub mod rng;
pub mod stats;
pub mod synth;

pub use contract::{
    load_preset, presets, validate_spec, AssetCategory, AssetRef, ContractSpec, EverlastingOptionSpec,
    ExpiringOptionSpec, FeeSchedule, FundingConfig, FundingMode, OptionRole, OptionSide, PerpetualSpec,
    ProtocolPreset, Side, SyntheticSpec,
};
pub use error::{Result, SimError};
pub use paths::{generate_gbm, MarketParams, PricePath};
pub use config::ConfigDocument;
pub use report::{grid_csv, render_heatmap, render_tornado, GridMetric};
