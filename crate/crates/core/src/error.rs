//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("operator dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("expected {expected} entries, got {got}")]
    BadShape { expected: usize, got: usize },

    #[error("matrix is not Hermitian (‖A − A†‖_F = {asymmetry:.3e})")]
    NotHermitian { asymmetry: f64 },

    #[error("invalid representation label: {0}")]
    InvalidLabel(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("coefficient index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("radial grid too coarse: {points_per_width:.1} points per oscillator width (need ≥ {required})")]
    GridTooCoarse { points_per_width: f64, required: f64 },

    #[error("{0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
