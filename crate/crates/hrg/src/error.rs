//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HrgError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: u32, n: usize },

    #[error("vertices {s} and {t} are not connected")]
    UnreachablePair { s: u32, t: u32 },

    #[error("distance {distance} between {s} and {t} exceeds max_layers {max_layers}")]
    MaxLayersExceeded {
        s: u32,
        t: u32,
        distance: u32,
        max_layers: u32,
    },

    #[error("calibration failed: {0}")]
    Calibration(String),

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("malformed graph file: field `{field}`: {reason}")]
    Format { field: &'static str, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, HrgError>;
