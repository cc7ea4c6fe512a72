//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide error enumeration.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of an operation (negative speed,
    /// power above the budget, and so on).
    #[error("domain error: {0}")]
    Domain(String),

    /// A parameter set violates a physical-model requirement, e.g. a motor
    /// with no finite no-load speed.
    #[error("model error: {0}")]
    Model(String),

    /// A configuration value was rejected. `path` names the offending key.
    #[error("config error at `{path}`: {msg}")]
    Config { path: String, msg: String },

    /// The requested operating point cannot be reached within the block.
    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("config parse error: {0}")]
    Parse(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn model(msg: impl Into<String>) -> Self {
        Error::Model(msg.into())
    }

    pub(crate) fn config(path: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Config {
            path: path.into(),
            msg: msg.into(),
        }
    }

    pub(crate) fn infeasible(msg: impl Into<String>) -> Self {
        Error::Infeasible(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
