use thiserror::Error;

/// Crate-wide error type. Every fallible operation names the violated
/// constraint in its message so callers (and the CLI) can surface it.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain violation: {0}")]
    Domain(String),
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),
    #[error("invalid extension spec: {0}")]
    InvalidExtension(String),
    #[error("grid error: {0}")]
    Grid(String),
    #[error("degree cap exceeded: {0}")]
    DegreeCap(String),
    #[error("depth cap exceeded: {0}")]
    DepthCap(String),
    #[error("quadrature did not converge: {0}")]
    QuadratureNonConvergence(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
