use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("argument error: {0}")]
    Argument(String),

    #[error("pole: the spectral parameter must be nonzero")]
    Pole,

    #[error("singular r-matrix: λ and μ coincide")]
    SingularRMatrix,

    #[error("chart singularity: sin θ = 0")]
    ChartSingularity,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("field strength b is zero")]
    ZeroField,

    #[error("degenerate spectral point: {0}")]
    DegeneratePoint(String),

    #[error("singular map: {0}")]
    SingularMap(String),

    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),

    #[error("reality violation: imaginary residue {residue:e} exceeds {tolerance:e}")]
    RealityViolation { residue: f64, tolerance: f64 },

    #[error("ill-conditioned sample set: {0}")]
    Conditioning(String),

    #[error("config key `{key}`: {message}")]
    Config { key: String, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("step {step}: {source}")]
    Step {
        step: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn config(key: &str, message: impl Into<String>) -> Self {
        Error::Config {
            key: key.to_string(),
            message: message.into(),
        }
    }

    /// True for errors caused by invalid user input rather than a failed computation.
    pub fn is_validation(&self) -> bool {
        matches!(self, Error::Config { .. })
    }
}
