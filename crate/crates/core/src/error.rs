use thiserror::Error;

/// Errors raised by contract validation and the position engines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("invalid spec: {field}: {reason}")]
    InvalidSpec { field: &'static str, reason: String },

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("position would be liquidatable at open: equity {equity} <= maintenance requirement {requirement}")]
    ImmediateInsolvency { equity: f64, requirement: f64 },

    #[error("operation on a position that is no longer open ({0})")]
    StaleState(&'static str),

    #[error("degenerate order book: bid {bid} > ask {ask}")]
    DegenerateBook { bid: f64, ask: f64 },

    #[error("contract is everlasting and has no expiry")]
    NotExpiring,

    #[error("contract is expiring and carries no funding leg")]
    NotEverlasting,

    #[error("collateral ratio {ratio} below minimum {minimum}")]
    UnderCollateralized { ratio: f64, minimum: f64 },

    #[error("liquidation target infeasible: cr_target {cr_target} <= 1 + penalty {penalty}")]
    InfeasibleTarget { cr_target: f64, penalty: f64 },

    #[error("insufficient shares: requested {requested}, supply {supply}")]
    InsufficientShares { requested: f64, supply: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("empty {0}")]
    Empty(&'static str),

    #[error("config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, SimError>;

pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> SimError {
    SimError::InvalidSpec {
        field,
        reason: reason.into(),
    }
}
