//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Broad failure class, used by the command-line front end to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed or missing input data.
    Input,
    /// Fitting or numerical failure.
    Numeric,
    /// Filesystem failure.
    Io,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("format error at line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("validation error at line {line}: {message}")]
    Validation { line: usize, message: String },

    #[error("invalid series: {0}")]
    InvalidSeries(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("insufficient data: need at least {needed} observations, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("singular fit: design columns {columns:?} are collinear")]
    SingularFit { columns: Vec<&'static str> },

    #[error("non-diffusion shape: quadratic coefficient c = {c} is not negative")]
    NonDiffusionShape { c: f64 },

    #[error("no real market size: discriminant {discriminant} is negative")]
    NoRealMarketSize { discriminant: f64 },

    #[error("non-positive intercept a = {a}; innovation coefficient undefined")]
    NonPositiveIntercept { a: f64 },

    #[error("forecast diverged at period {period}: cumulative demand {cumulative}")]
    Divergence { period: String, cumulative: f64 },

    #[error("length mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: usize, got: usize },

    #[error("undefined baseline: classical SSE {0} must be positive")]
    UndefinedBaseline(f64),

    #[error("degenerate plot: {0}")]
    DegeneratePlot(String),

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::EmptyInput(_)
            | Error::Format { .. }
            | Error::Validation { .. }
            | Error::InvalidSeries(_)
            | Error::Parameter(_)
            | Error::DegeneratePlot(_) => ErrorKind::Input,
            Error::Io { .. } => ErrorKind::Io,
            _ => ErrorKind::Numeric,
        }
    }

    /// Stable snake_case identifier, written into JSON outputs in place of a value
    /// that could not be computed.
    pub fn code(&self) -> &'static str {
        match self {
            Error::EmptyInput(_) => "empty_input",
            Error::Format { .. } => "format",
            Error::Validation { .. } => "validation",
            Error::InvalidSeries(_) => "invalid_series",
            Error::Parameter(_) => "parameter",
            Error::InsufficientData { .. } => "insufficient_data",
            Error::SingularFit { .. } => "singular_fit",
            Error::NonDiffusionShape { .. } => "non_diffusion_shape",
            Error::NoRealMarketSize { .. } => "no_real_market_size",
            Error::NonPositiveIntercept { .. } => "non_positive_intercept",
            Error::Divergence { .. } => "divergence",
            Error::ShapeMismatch { .. } => "shape_mismatch",
            Error::UndefinedBaseline(_) => "undefined_baseline",
            Error::DegeneratePlot(_) => "degenerate_plot",
            Error::Io { .. } => "io",
        }
    }

    pub(crate) fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            context: context.into(),
            source,
        }
    }
}
