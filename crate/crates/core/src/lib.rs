//! Discrete Bass diffusion forecasting with a tail-length correction for
//! mono-peak demand curves.
//!
//! The classical model predicts period demand from cumulative demand,
//! `d(t) = a + b·D(t-1) + c·D(t-1)²`, with `(a, b, c)` fitted by least squares.
//! Curves that peak once, fall sharply and then settle on a long, slowly
//! decaying tail are poorly served by that recursion. The corrected variants add
//! `r1·mean` or subtract `r2·mean` at every period, where `mean` is the
//! observed mean demand and the ratios move linearly with the share of the series
//! spent in the tail:
//!
//! ```text
//! r1 = 0   + (tail_per − 0.5) · 1.6
//! r2 = 0.5 − (tail_per − 0.5) · 1.6
//! ```
//!
//! The tail starts at the first post-peak period whose demand falls to half the
//! curve's height.
//!
//! ```
//! use bass_tail::{fit_quadratic, profile, compare_models, ForecastMode, TimeSeries};
//!
//! let series = TimeSeries::from_demands(vec![
//!     2.0, 9.0, 30.0, 80.0, 100.0, 60.0, 35.0, 28.0, 25.0, 24.0, 23.0, 22.0, 22.0, 21.0,
//! ])?;
//! let coeffs = fit_quadratic(&series)?;
//! let tail = profile(&series)?;
//! let report = compare_models(&series, &coeffs, &tail, ForecastMode::Simulated)?;
//! assert!(report.sse_modified <= report.sse_classical);
//! # Ok::<(), bass_tail::Error>(())
//! ```

// `!(x > 0.0)` guards are meant to reject NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod evaluate;
pub mod fit;
pub mod forecast;
pub mod ingest;
pub mod pipeline;
pub mod plot;
pub mod series;
pub mod synthetic;
pub mod tail;

pub use error::{Error, ErrorKind, Result};
pub use evaluate::{
    compare_models, compare_models_with, improvement_percent, sse, EvaluationReport, Metrics,
    ModelComparison,
};
pub use fit::{derive_bass_parameters, fit_quadratic, BassParameters, QuadraticCoefficients};
pub use forecast::{
    forecast, predict_classical, predict_modified, ForecastConfig, ForecastMode, ForecastResult,
    ModelVariant,
};
pub use ingest::{
    aggregate_transactions, parse_generic_csv, parse_google_trends_csv, parse_transaction_csv,
    ColumnSelector, Granularity, IngestOptions, LessThanOnePolicy,
};
pub use series::{cumulative, mean_demand, CumulativeSeries, TimeSeries};
pub use synthetic::{generate_bass_series, generate_mono_peak, MonoPeakSpec};
pub use tail::{
    compute_ratios, detect_peak, detect_tail_start, profile, profile_with, TailProfile,
    TailSettings,
};
