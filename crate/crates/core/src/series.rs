//! Demand series and the lagged-cumulative and mean primitives built on them.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An ordered, non-empty sequence of `(period, demand)` observations.
///
/// Period labels are opaque strings. They must be unique and strictly ascending:
/// two labels that both parse as numbers are compared numerically, anything else
/// lexicographically (which orders ISO `YYYY-MM` / `YYYY-MM-DD` labels correctly).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    periods: Vec<String>,
    demands: Vec<f64>,
    unit: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

/// `D(t-1)` for `t = 1..n`: the demand accumulated strictly before each period.
#[derive(Debug, Clone, PartialEq)]
pub struct CumulativeSeries {
    values: Vec<f64>,
}

pub(crate) fn compare_periods(a: &str, b: &str) -> Ordering {
    match (a.trim().parse::<f64>(), b.trim().parse::<f64>()) {
        (Ok(x), Ok(y)) if x.is_finite() && y.is_finite() => x.total_cmp(&y),
        _ => a.cmp(b),
    }
}

impl TimeSeries {
    pub fn new(periods: Vec<String>, demands: Vec<f64>, unit: impl Into<String>) -> Result<Self> {
        if periods.len() != demands.len() {
            return Err(Error::ShapeMismatch {
                expected: periods.len(),
                got: demands.len(),
            });
        }
        if demands.is_empty() {
            return Err(Error::EmptyInput("series has no observations".into()));
        }
        for (i, (p, &d)) in periods.iter().zip(&demands).enumerate() {
            if !d.is_finite() {
                return Err(Error::InvalidSeries(format!(
                    "demand at period {p:?} (index {i}) is not finite"
                )));
            }
            if d < 0.0 {
                return Err(Error::InvalidSeries(format!(
                    "demand at period {p:?} (index {i}) is negative: {d}"
                )));
            }
        }
        for (i, w) in periods.windows(2).enumerate() {
            if compare_periods(&w[0], &w[1]) != Ordering::Less {
                return Err(Error::InvalidSeries(format!(
                    "period {:?} at index {} does not follow {:?}",
                    w[1],
                    i + 1,
                    w[0]
                )));
            }
        }
        Ok(Self {
            periods,
            demands,
            unit: unit.into(),
            name: None,
        })
    }

    /// Builds a series labelled `1..=n`.
    pub fn from_demands(demands: Vec<f64>) -> Result<Self> {
        let periods = (1..=demands.len()).map(|i| i.to_string()).collect();
        Self::new(periods, demands, "units")
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn periods(&self) -> &[String] {
        &self.periods
    }

    pub fn demands(&self) -> &[f64] {
        &self.demands
    }

    pub fn unit(&self) -> &str {
        &self.unit
    }

    /// Series title, e.g. the search term of a Trends export.
    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn len(&self) -> usize {
        self.demands.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.demands.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.demands.iter().fold(0.0, |acc, &d| acc + d)
    }
}

impl CumulativeSeries {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.values
    }
}

/// Lagged partial sums with `D(0) = 0`, accumulated left to right.
pub fn cumulative(series: &TimeSeries) -> CumulativeSeries {
    CumulativeSeries {
        values: lagged_cumsum(series.demands()),
    }
}

pub(crate) fn lagged_cumsum(values: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(values.len());
    let mut acc = 0.0;
    for &v in values {
        out.push(acc);
        acc += v;
    }
    out
}

/// Arithmetic mean over all `n` observations.
pub fn mean_demand(series: &TimeSeries) -> f64 {
    series.total() / series.len() as f64
}
