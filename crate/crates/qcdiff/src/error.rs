use thiserror::Error;

/// Errors produced by the numerical kernels and the harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("lift is not monotone: min derivative {min_deriv} on validation grid")]
    NotMonotone { min_deriv: f64 },

    #[error("root finding failed to converge after {iterations} iterations (target {target})")]
    ConvergenceFailure { iterations: usize, target: f64 },

    #[error("point {point} outside the domain: {reason}")]
    DomainError { point: String, reason: String },

    #[error("quadrature failed: {0}")]
    QuadratureFailure(String),

    #[error("inversion of the supplied map failed at {point}")]
    InversionFailure { point: String },

    #[error("Neumann iteration did not reach tolerance {tol}: residual {residual} after {iterations} iterations")]
    NoConvergence {
        residual: f64,
        tol: f64,
        iterations: usize,
    },

    #[error("evaluation point |z| = {abs_z} inside the exclusion band (boundary {band})")]
    TooCloseToBoundary { abs_z: f64, band: f64 },

    #[error("derivative too small for pre-Schwarzian: |f'(z)| = {abs_deriv}")]
    DegenerateDerivative { abs_deriv: f64 },

    #[error("produced Beltrami coefficient is not admissible: sup |mu| = {sup} >= 1")]
    NotAdmissible { sup: f64 },

    #[error("annulus radii must be strictly decreasing: {0}")]
    BadPartition(String),

    #[error("unsupported distortion check kind: {0}")]
    UnsupportedKind(String),

    #[error("invalid configuration: {0}")]
    ConfigError(String),

    #[error("check {check} failed: {source}")]
    CheckFailed {
        check: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
