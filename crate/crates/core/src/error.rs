use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error in {op}: {msg}")]
    Domain { op: &'static str, msg: String },

    /// The requested accuracy cannot be certified at these arguments.
    #[error("accuracy error in {op}: estimated error {est:.3e} exceeds {want:.3e}")]
    Accuracy {
        op: &'static str,
        est: f64,
        want: f64,
    },

    /// A quadrature did not converge to the requested tolerance.
    #[error("quadrature for {op} did not converge (best error {est:.3e})")]
    QuadratureNonConvergence { op: &'static str, est: f64 },

    /// Root bracketing or iteration failed.
    #[error("root finding failed in {op}: {msg}")]
    RootFinding { op: &'static str, msg: String },

    /// The grid is too coarse for the requested stencil.
    #[error("grid too coarse: need nx, ny >= 3, got {nx} x {ny}")]
    GridTooCoarse { nx: usize, ny: usize },

    /// Boundary specification is inconsistent with the requested mode.
    #[error("boundary mode mismatch: {0}")]
    ModeMismatch(String),

    /// The discrete linear system could not be solved.
    #[error("linear solve failed: {0}")]
    LinearSolve(String),

    /// A divergent integral was requested (non-normalizable kernel).
    #[error("kernel is not normalizable for b2 = {b2} (requires b2 < 1)")]
    NonNormalizable { b2: f64 },

    /// Catalog lookup failed.
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),

    /// Verification preconditions violated.
    #[error("verification precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
