//! Crate-wide error type.

use crate::groups::Flavor;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("flavor mismatch: expected {expected:?}, found {found:?}")]
    FlavorMismatch { expected: Flavor, found: Flavor },

    #[error("scaling constant mismatch: {left} vs {right}")]
    ScaleMismatch { left: f64, right: f64 },

    #[error("boost parameter out of range: |beta| = {beta} must be < {bound}")]
    BetaOutOfRange { beta: f64, bound: f64 },

    #[error("mass mismatch between extended elements: {left} vs {right}")]
    MassMismatch { left: f64, right: f64 },

    #[error("operation requires flavor {required:?}")]
    WrongFlavor { required: Flavor },

    #[error("representation energy must be nonzero")]
    ZeroEnergy,

    #[error("wavefunction basis mismatch: expected {expected}, found {found}")]
    BasisMismatch { expected: &'static str, found: &'static str },

    #[error("representation tag mismatch: {0}")]
    RepMismatch(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("frame-change limit mismatch: expected {expected}, found {found}")]
    LimitMismatch { expected: &'static str, found: &'static str },

    #[error("{0}")]
    Precondition(String),

    #[error("conjugate gradient failed to converge: residual {residual} after {iters} iterations")]
    CgDiverged { residual: f64, iters: usize },

    #[error("container format error: {0}")]
    Container(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
