use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("weight is not strictly positive (minimum {min:e})")]
    NonPositiveWeight { min: f64 },

    #[error("weight must exceed 1 everywhere (minimum {min:e})")]
    WeightNotAboveOne { min: f64 },

    #[error("grid of {grid} points cannot represent {required} modes without aliasing")]
    Aliasing { required: usize, grid: usize },

    #[error("point outside the open unit disk: {0}")]
    OutOfDomain(String),

    #[error("factorization failed: {0}")]
    Factorization(String),

    #[error("{what} did not converge (last residual {residual:e})")]
    NotConverged { what: String, residual: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("mesh quality: {0}")]
    MeshQuality(String),

    #[error("interior stiffness block is singular (disconnected mesh?)")]
    SingularInterior,

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures of the numerics rather than of the caller's input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Factorization(_)
                | Error::NotConverged { .. }
                | Error::SingularInterior
                | Error::MeshQuality(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
