use thiserror::Error;

/// Errors raised anywhere in the solution pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: f64 },

    #[error("overflow in {function} at {at}")]
    Overflow { function: &'static str, at: f64 },

    #[error("invalid parameter for {function}: {reason}")]
    Parameter {
        function: &'static str,
        reason: String,
    },

    #[error("{function} did not converge: {reason}")]
    NoConvergence {
        function: &'static str,
        reason: String,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("branch error: {0}")]
    Branch(String),

    #[error("division by zero: {0}")]
    Division(String),

    #[error("outside the real bound-state regime: {0}")]
    Regime(String),

    #[error("degenerate recurrence index n = {index}: R_n vanishes")]
    DegenerateIndex { index: usize },

    #[error("unsupported termination order N = {0} (supported: 0..=6)")]
    UnsupportedOrder(usize),

    #[error("bracket error: {0}")]
    Bracket(String),

    #[error("precision exhausted after {found} roots: {reason}")]
    PrecisionExhausted { found: usize, reason: String },

    #[error("discretization limit: {0}")]
    Discretization(String),

    #[error("insufficient domain: {0}")]
    InsufficientDomain(String),

    #[error("node resolution: count changed from {coarse} to {fine} under refinement")]
    Resolution { coarse: usize, fine: usize },

    #[error("range error: {0}")]
    Range(String),
}

pub type Result<T> = std::result::Result<T, Error>;
