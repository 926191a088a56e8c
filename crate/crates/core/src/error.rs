use thiserror::Error;

/// Errors produced by the model, the solvers and the sweep harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error in {what}: {value}")]
    Domain { what: &'static str, value: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParams { name: &'static str, reason: String },

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("no root for {0} within the bracket expansion limit")]
    NoRoot(&'static str),

    #[error("stored {what} = {stored} disagrees with recomputed value {recomputed}")]
    Inconsistent {
        what: &'static str,
        stored: f64,
        recomputed: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
