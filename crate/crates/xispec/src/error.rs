//! Error type shared by every module of the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in this crate.
///
/// The variants are coarse on purpose: callers mostly need to distinguish
/// bad inputs, ranges the binary64 engine cannot serve, and quadrature that
/// ran out of budget. The CLI maps them onto distinct exit codes.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A function handed to the numerics engine produced NaN or infinity.
    #[error("non-finite function value at x = {abscissa}")]
    NonFinite { abscissa: f64 },

    /// Adaptive quadrature exhausted its subdivision budget.
    ///
    /// Carries the best estimate reached (real and imaginary part) together
    /// with the achieved and requested error levels.
    #[error(
        "quadrature did not converge: best estimate ({best_re:e}, {best_im:e}), \
         achieved error {achieved:e} > target {target:e}"
    )]
    QuadratureNonConvergence {
        best_re: f64,
        best_im: f64,
        achieved: f64,
        target: f64,
    },

    /// The requested point is outside the region an evaluator supports.
    #[error("unsupported region: {0}")]
    UnsupportedRegion(String),

    /// The requested range runs past the binary64 precision wall.
    #[error("precision wall: {0}")]
    PrecisionWall(String),

    /// An internal guard that should be unreachable fired.
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),

    /// Malformed user-supplied data (tolerances, sampled waves, grids).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
