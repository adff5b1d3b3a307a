//! Demand prediction under the classical recursion and its two tail-corrected variants.
//!
//! The corrected variants shift every prediction by a constant: `+r1·mean` (add) or
//! `−r2·mean` (subtract), where `mean` is the observed mean demand.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evaluate::sse_slices;
use crate::fit::QuadraticCoefficients;
use crate::series::{lagged_cumsum, mean_demand, TimeSeries};
use crate::tail::TailProfile;

/// Cumulative demand magnitude treated as a blow-up.
pub const DIVERGENCE_LIMIT: f64 = 1e15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelVariant {
    Classical,
    ModifiedAdd,
    ModifiedSubtract,
    /// Lowest in-sample simulated SSE among the three concrete variants.
    Auto,
}

impl ModelVariant {
    /// Concrete variants in tie-break order.
    pub const CANDIDATES: [ModelVariant; 3] = [
        ModelVariant::Classical,
        ModelVariant::ModifiedAdd,
        ModelVariant::ModifiedSubtract,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ModelVariant::Classical => "classical",
            ModelVariant::ModifiedAdd => "modified_add",
            ModelVariant::ModifiedSubtract => "modified_subtract",
            ModelVariant::Auto => "auto",
        }
    }

    /// Signed constant added to every classical prediction. Zero for classical and auto.
    pub fn correction(&self, tail: &TailProfile, mean: f64) -> f64 {
        match self {
            ModelVariant::ModifiedAdd => tail.r1 * mean,
            ModelVariant::ModifiedSubtract => -(tail.r2 * mean),
            ModelVariant::Classical | ModelVariant::Auto => 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ForecastMode {
    /// Each in-sample step is driven by the actual cumulative demand.
    OneStep,
    /// Cumulative demand accumulates the model's own predictions from zero.
    Simulated,
}

impl ForecastMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            ForecastMode::OneStep => "one_step",
            ForecastMode::Simulated => "simulated",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ForecastConfig {
    pub mode: ForecastMode,
    /// Periods predicted beyond the observed data.
    pub horizon: usize,
    pub clamp_nonnegative: bool,
    pub variant: ModelVariant,
}

impl Default for ForecastConfig {
    fn default() -> Self {
        Self {
            mode: ForecastMode::Simulated,
            horizon: 0,
            clamp_nonnegative: false,
            variant: ModelVariant::Auto,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForecastResult {
    /// One prediction per observed period followed by `horizon` out-of-sample ones.
    pub predicted: Vec<f64>,
    /// Never `Auto`.
    pub variant_used: ModelVariant,
    pub correction_term: f64,
    pub config: ForecastConfig,
}

fn ensure_finite(values: &[f64]) -> Result<()> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::Parameter(format!("non-finite input in {values:?}")))
    }
}

/// `a + b·D + c·D²`
pub fn predict_classical(coeffs: &QuadraticCoefficients, cumulative_value: f64) -> Result<f64> {
    ensure_finite(&[coeffs.a, coeffs.b, coeffs.c, cumulative_value])?;
    Ok(coeffs.eval(cumulative_value))
}

/// Classical prediction plus a signed correction (`+r1·mean` or `−r2·mean`).
pub fn predict_modified(
    coeffs: &QuadraticCoefficients,
    cumulative_value: f64,
    correction: f64,
) -> Result<f64> {
    ensure_finite(&[correction])?;
    Ok(predict_classical(coeffs, cumulative_value)? + correction)
}

/// Labels for the `horizon` periods after the last observed one.
///
/// `YYYY-MM` labels continue by calendar month, integer labels by one; anything
/// else becomes `<last>+k`.
pub fn extend_periods(series: &TimeSeries, horizon: usize) -> Vec<String> {
    let last = series.periods().last().map(String::as_str).unwrap_or("");
    if let Some((year, month)) = parse_year_month(last) {
        let base = year * 12 + (month - 1);
        return (1..=horizon as i64)
            .map(|k| {
                let idx = base + k;
                format!("{:04}-{:02}", idx.div_euclid(12), idx.rem_euclid(12) + 1)
            })
            .collect();
    }
    if let Ok(v) = last.trim().parse::<i64>() {
        return (1..=horizon as i64).map(|k| (v + k).to_string()).collect();
    }
    (1..=horizon).map(|k| format!("{last}+{k}")).collect()
}

fn parse_year_month(label: &str) -> Option<(i64, i64)> {
    let (y, m) = label.split_once('-')?;
    if y.len() != 4 || m.len() != 2 {
        return None;
    }
    let year: i64 = y.parse().ok()?;
    let month: i64 = m.parse().ok()?;
    (1..=12).contains(&month).then_some((year, month))
}

fn period_label(series: &TimeSeries, t: usize) -> String {
    let n = series.len();
    if t < n {
        series.periods()[t].clone()
    } else {
        extend_periods(series, t - n + 1).pop().unwrap_or_default()
    }
}

/// Runs one concrete variant, given its correction, for `n + horizon` periods.
pub fn run_variant(
    series: &TimeSeries,
    coeffs: &QuadraticCoefficients,
    correction: f64,
    mode: ForecastMode,
    horizon: usize,
    clamp_nonnegative: bool,
) -> Result<Vec<f64>> {
    ensure_finite(&[coeffs.a, coeffs.b, coeffs.c, correction])?;
    let n = series.len();
    let actual_lagged = match mode {
        ForecastMode::OneStep => Some(lagged_cumsum(series.demands())),
        ForecastMode::Simulated => None,
    };
    let mut predicted = Vec::with_capacity(n + horizon);
    // cumulative demand before the current period
    let mut running = 0.0;
    for t in 0..n + horizon {
        let before = match &actual_lagged {
            Some(lagged) if t < n => lagged[t],
            Some(_) if t == n => series.total(),
            _ => running,
        };
        let mut value = coeffs.eval(before) + correction;
        if clamp_nonnegative {
            value = value.max(0.0);
        }
        let after = before + value;
        if !value.is_finite() || !after.is_finite() || after.abs() > DIVERGENCE_LIMIT {
            return Err(Error::Divergence {
                period: period_label(series, t),
                cumulative: after,
            });
        }
        predicted.push(value);
        running = after;
    }
    Ok(predicted)
}

/// Picks the concrete variant with the lowest in-sample SSE in `mode`; ties keep the earlier candidate.
///
/// Candidates whose run diverges are skipped. Returns `(variant, correction, in-sample SSE)`.
pub fn select_variant(
    series: &TimeSeries,
    coeffs: &QuadraticCoefficients,
    tail: &TailProfile,
    mode: ForecastMode,
    clamp_nonnegative: bool,
) -> Result<(ModelVariant, f64, f64)> {
    let mean = mean_demand(series);
    let mut best: Option<(ModelVariant, f64, f64)> = None;
    let mut first_err = None;
    for variant in ModelVariant::CANDIDATES {
        let correction = variant.correction(tail, mean);
        match run_variant(series, coeffs, correction, mode, 0, clamp_nonnegative) {
            Ok(pred) => {
                let err = sse_slices(series.demands(), &pred);
                if best.is_none_or(|(_, _, s)| err < s) {
                    best = Some((variant, correction, err));
                }
            }
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    match (best, first_err) {
        (Some(b), _) => Ok(b),
        (None, Some(e)) => Err(e),
        (None, None) => unreachable!("candidate list is non-empty"),
    }
}

/// Full forecast: resolves `Auto` (by simulated in-sample SSE), then runs the chosen variant.
pub fn forecast(
    series: &TimeSeries,
    coeffs: &QuadraticCoefficients,
    tail: &TailProfile,
    config: &ForecastConfig,
) -> Result<ForecastResult> {
    let (variant_used, correction_term) = match config.variant {
        ModelVariant::Auto => {
            let (v, corr, _) = select_variant(
                series,
                coeffs,
                tail,
                ForecastMode::Simulated,
                config.clamp_nonnegative,
            )?;
            (v, corr)
        }
        v => (v, v.correction(tail, mean_demand(series))),
    };
    let predicted = run_variant(
        series,
        coeffs,
        correction_term,
        config.mode,
        config.horizon,
        config.clamp_nonnegative,
    )?;
    Ok(ForecastResult {
        predicted,
        variant_used,
        correction_term,
        config: *config,
    })
}
