//! In-sample error measures and the classical-vs-corrected comparison report.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fit::QuadraticCoefficients;
use crate::forecast::{run_variant, select_variant, ForecastMode, ModelVariant};
use crate::series::{mean_demand, TimeSeries};
use crate::tail::TailProfile;

pub(crate) fn sse_slices(actual: &[f64], predicted: &[f64]) -> f64 {
    actual.iter().zip(predicted).fold(0.0, |acc, (&a, &p)| {
        let r = a - p;
        acc + r * r
    })
}

/// Sum of squared errors over the observed periods.
pub fn sse(actual: &TimeSeries, predicted: &[f64]) -> Result<f64> {
    if predicted.len() != actual.len() {
        return Err(Error::ShapeMismatch {
            expected: actual.len(),
            got: predicted.len(),
        });
    }
    Ok(sse_slices(actual.demands(), predicted))
}

/// Relative SSE reduction of the corrected model, in percent.
pub fn improvement_percent(sse_classical: f64, sse_modified: f64) -> Result<f64> {
    if !(sse_classical > 0.0) {
        return Err(Error::UndefinedBaseline(sse_classical));
    }
    Ok((sse_classical - sse_modified) / sse_classical * 100.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub sse: f64,
    pub rmse: f64,
    pub mae: f64,
    /// Mean absolute percentage error over periods with non-zero actual demand.
    /// `None` when every actual is zero.
    pub mape: Option<f64>,
    pub mape_skipped: usize,
}

impl Metrics {
    pub fn compute(actual: &[f64], predicted: &[f64]) -> Result<Self> {
        if actual.len() != predicted.len() {
            return Err(Error::ShapeMismatch {
                expected: actual.len(),
                got: predicted.len(),
            });
        }
        let n = actual.len() as f64;
        let sse = sse_slices(actual, predicted);
        let abs_sum = actual
            .iter()
            .zip(predicted)
            .fold(0.0, |acc, (&a, &p)| acc + (a - p).abs());
        let mut pct_sum = 0.0;
        let mut used = 0usize;
        for (&a, &p) in actual.iter().zip(predicted) {
            if a != 0.0 {
                pct_sum += ((a - p) / a).abs();
                used += 1;
            }
        }
        Ok(Self {
            sse,
            rmse: (sse / n).sqrt(),
            mae: abs_sum / n,
            mape: (used > 0).then(|| pct_sum / used as f64 * 100.0),
            mape_skipped: actual.len() - used,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AuxiliaryMetrics {
    pub classical: Metrics,
    pub modified: Metrics,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub sse_classical: f64,
    pub sse_modified: f64,
    pub variant_used: ModelVariant,
    /// `None` only when the classical SSE is zero and the corrected one is not.
    pub improvement_percent: Option<f64>,
    pub mode: ForecastMode,
    pub correction_term: f64,
    pub n_obs: usize,
    pub tail_profile: TailProfile,
    pub auxiliary: AuxiliaryMetrics,
}

/// Report plus the two in-sample prediction paths it was computed from.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelComparison {
    pub report: EvaluationReport,
    pub classical: Vec<f64>,
    pub modified: Vec<f64>,
}

/// Classical against the best corrected variant (`Auto`) in the given mode.
pub fn compare_models(
    series: &TimeSeries,
    coeffs: &QuadraticCoefficients,
    tail: &TailProfile,
    mode: ForecastMode,
) -> Result<EvaluationReport> {
    Ok(compare_models_with(series, coeffs, tail, mode, ModelVariant::Auto, false)?.report)
}

/// Classical against `variant` over the observed range.
///
/// With `Auto`, the candidate is chosen by in-sample SSE in the same `mode` the
/// report is computed in, so the reported improvement is never negative.
pub fn compare_models_with(
    series: &TimeSeries,
    coeffs: &QuadraticCoefficients,
    tail: &TailProfile,
    mode: ForecastMode,
    variant: ModelVariant,
    clamp_nonnegative: bool,
) -> Result<ModelComparison> {
    let classical = run_variant(series, coeffs, 0.0, mode, 0, clamp_nonnegative)?;
    let (variant_used, correction_term) = match variant {
        ModelVariant::Auto => {
            let (v, corr, _) = select_variant(series, coeffs, tail, mode, clamp_nonnegative)?;
            (v, corr)
        }
        v => (v, v.correction(tail, mean_demand(series))),
    };
    let modified = if variant_used == ModelVariant::Classical {
        classical.clone()
    } else {
        run_variant(series, coeffs, correction_term, mode, 0, clamp_nonnegative)?
    };

    let actual = series.demands();
    let classical_metrics = Metrics::compute(actual, &classical)?;
    let modified_metrics = Metrics::compute(actual, &modified)?;
    let sse_classical = classical_metrics.sse;
    let sse_modified = modified_metrics.sse;
    let improvement = if sse_classical > 0.0 {
        Some(improvement_percent(sse_classical, sse_modified)?)
    } else if sse_modified == 0.0 {
        Some(0.0)
    } else {
        None
    };

    Ok(ModelComparison {
        report: EvaluationReport {
            sse_classical,
            sse_modified,
            variant_used,
            improvement_percent: improvement,
            mode,
            correction_term,
            n_obs: series.len(),
            tail_profile: *tail,
            auxiliary: AuxiliaryMetrics {
                classical: classical_metrics,
                modified: modified_metrics,
            },
        },
        classical,
        modified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sse_examples() {
        let s = TimeSeries::from_demands(vec![1.0, 2.0]).unwrap();
        assert_eq!(sse(&s, &[1.0, 2.0]).unwrap(), 0.0);
        assert_eq!(sse(&s, &[0.0, 0.0]).unwrap(), 5.0);
        assert!(matches!(
            sse(&s, &[0.0]),
            Err(Error::ShapeMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn improvement_reported_pairs() {
        let cases = [
            (22_061.11, 14_041.68, 36.35, 0.01),
            (179_525.74, 37_197.51, 79.3, 0.05),
            (301_500_362.4, 180_145_992.2, 40.25, 0.01),
        ];
        for (c, m, expected, tol) in cases {
            let got = improvement_percent(c, m).unwrap();
            assert!((got - expected).abs() <= tol, "{c} -> {m}: {got}");
        }
    }

    #[test]
    fn improvement_edges() {
        assert_eq!(improvement_percent(7.0, 7.0).unwrap(), 0.0);
        assert_eq!(improvement_percent(7.0, 0.0).unwrap(), 100.0);
        assert!(improvement_percent(0.0, 1.0).is_err());
        assert!(improvement_percent(-1.0, 1.0).is_err());
    }

    #[test]
    fn mape_skips_zero_actuals() {
        let m = Metrics::compute(&[0.0, 2.0, 4.0], &[1.0, 1.0, 5.0]).unwrap();
        assert_eq!(m.mape_skipped, 1);
        assert!((m.mape.unwrap() - 37.5).abs() < 1e-12);
        assert!((m.mae - 1.0).abs() < 1e-12);
        assert!((m.rmse - 1.0).abs() < 1e-12);
        let m = Metrics::compute(&[0.0, 0.0], &[1.0, 1.0]).unwrap();
        assert_eq!(m.mape, None);
    }
}
