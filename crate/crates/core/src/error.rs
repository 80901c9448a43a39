use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum JostError {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input at {field}[{index}]: {msg}")]
    InvalidEntry { field: String, index: usize, msg: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("{op}: z = {z} lies outside the certified region |z| < {radius}")]
    OutsideRegion { op: &'static str, z: String, radius: f64 },

    #[error("{op}: no convergence after {iterations} iterations ({detail})")]
    NoConvergence { op: &'static str, iterations: usize, detail: String },

    #[error("{op}: overflow in working precision at index {index}")]
    Overflow { op: &'static str, index: usize },

    #[error("{op}: pole of an intermediate m-function at level {level} (z = {z})")]
    PoleProximity { op: &'static str, level: usize, z: String },

    #[error("{op}: zero denominator at z = {z}")]
    ZeroDenominator { op: &'static str, z: String },

    #[error("{op}: ambiguous numerical rank ({detail})")]
    AmbiguousRank { op: &'static str, detail: String },

    #[error("{op}: {detail}")]
    Unresolvable { op: &'static str, detail: String },

    #[error("{op}: residual rate {rate:.6e} exceeds 1/R = {bound:.6e}")]
    ResidualTooLarge { op: &'static str, rate: f64, bound: f64 },

    #[error("{op}: resonance at z = {z}")]
    Resonance { op: &'static str, z: String },

    #[error("{op}: {detail}")]
    Collision { op: &'static str, detail: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl JostError {
    pub fn parse(msg: impl Into<String>) -> Self {
        JostError::Parse(msg.into())
    }

    pub fn entry(field: &str, index: usize, msg: impl Into<String>) -> Self {
        JostError::InvalidEntry { field: field.into(), index, msg: msg.into() }
    }

    /// Operation that raised the error, when recorded.
    pub fn op(&self) -> Option<&'static str> {
        match self {
            JostError::OutsideRegion { op, .. }
            | JostError::NoConvergence { op, .. }
            | JostError::Overflow { op, .. }
            | JostError::PoleProximity { op, .. }
            | JostError::ZeroDenominator { op, .. }
            | JostError::AmbiguousRank { op, .. }
            | JostError::Unresolvable { op, .. }
            | JostError::ResidualTooLarge { op, .. }
            | JostError::Resonance { op, .. }
            | JostError::Collision { op, .. } => Some(op),
            _ => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            JostError::Parse(_) => "parse",
            JostError::InvalidEntry { .. } => "invalid_entry",
            JostError::Invalid(_) => "invalid",
            JostError::OutsideRegion { .. } => "outside_region",
            JostError::NoConvergence { .. } => "no_convergence",
            JostError::Overflow { .. } => "overflow",
            JostError::PoleProximity { .. } => "pole_proximity",
            JostError::ZeroDenominator { .. } => "zero_denominator",
            JostError::AmbiguousRank { .. } => "ambiguous_rank",
            JostError::Unresolvable { .. } => "unresolvable",
            JostError::ResidualTooLarge { .. } => "residual_too_large",
            JostError::Resonance { .. } => "resonance",
            JostError::Collision { .. } => "collision",
            JostError::Io(_) => "io",
        }
    }

    /// Input problems are the caller's fault; everything else is numerical.
    pub fn is_input_error(&self) -> bool {
        matches!(self, JostError::Parse(_) | JostError::InvalidEntry { .. } | JostError::Invalid(_) | JostError::Io(_))
    }
}

impl From<std::io::Error> for JostError {
    fn from(e: std::io::Error) -> Self {
        JostError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for JostError {
    fn from(e: serde_json::Error) -> Self {
        JostError::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, JostError>;
