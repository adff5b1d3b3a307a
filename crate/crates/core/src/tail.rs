//! Peak and tail location for mono-peak curves, and the tail-length ratios
//! `r1`/`r2` that scale the mean-demand correction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::TimeSeries;

pub const DEFAULT_HEIGHT_FRACTION: f64 = 0.5;
pub const DEFAULT_TAIL_SLOPE: f64 = 1.6;
/// Value of `r1` when the tail covers exactly half the series.
pub const REF_R1: f64 = 0.0;
/// Value of `r2` when the tail covers exactly half the series.
pub const REF_R2: f64 = 0.5;
/// Tail fraction at which both ratios sit at their reference values.
pub const REF_TAIL_PER: f64 = 0.5;

/// Knobs of the tail rule. Defaults: tail starts at 50% of the curve height, slope 1.6.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailSettings {
    pub height_fraction: f64,
    pub slope: f64,
}

impl Default for TailSettings {
    fn default() -> Self {
        Self {
            height_fraction: DEFAULT_HEIGHT_FRACTION,
            slope: DEFAULT_TAIL_SLOPE,
        }
    }
}

impl TailSettings {
    pub fn validate(&self) -> Result<()> {
        if !(self.height_fraction > 0.0 && self.height_fraction < 1.0) {
            return Err(Error::Parameter(format!(
                "height fraction must lie in (0, 1), got {}",
                self.height_fraction
            )));
        }
        if !self.slope.is_finite() {
            return Err(Error::Parameter(format!(
                "tail slope must be finite, got {}",
                self.slope
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailProfile {
    pub peak_index: usize,
    pub peak_value: f64,
    /// First index of the tail; equals the series length when the tail is empty.
    pub tail_start_index: usize,
    /// Tail length over series length.
    pub tail_per: f64,
    pub r1: f64,
    pub r2: f64,
}

/// Global maximum, earliest index on ties.
pub fn detect_peak(series: &TimeSeries) -> (usize, f64) {
    let d = series.demands();
    let mut best = (0, d[0]);
    for (i, &v) in d.iter().enumerate().skip(1) {
        if v > best.1 {
            best = (i, v);
        }
    }
    best
}

/// First index after the peak whose demand drops to `min + height_fraction·(peak − min)` or below.
///
/// Returns `n` when the curve never comes back down after its peak.
pub fn detect_tail_start(series: &TimeSeries, height_fraction: f64) -> Result<usize> {
    let n = series.len();
    if n < 2 {
        return Err(Error::Parameter(format!(
            "tail detection needs at least 2 observations, got {n}"
        )));
    }
    if !(height_fraction > 0.0 && height_fraction < 1.0) {
        return Err(Error::Parameter(format!(
            "height fraction must lie in (0, 1), got {height_fraction}"
        )));
    }
    let d = series.demands();
    let (peak_index, peak_value) = detect_peak(series);
    let min = d.iter().copied().fold(f64::INFINITY, f64::min);
    let threshold = height_fraction * (peak_value - min) + min;
    Ok(d
        .iter()
        .enumerate()
        .skip(peak_index + 1)
        .find(|(_, &v)| v <= threshold)
        .map_or(n, |(i, _)| i))
}

const SHIFT_GRID: f64 = 4_503_599_627_370_496.0; // 2^52

/// `r1 = REF_R1 + (tail_per − 0.5)·slope`, `r2 = REF_R2 − (tail_per − 0.5)·slope`. Not clamped.
pub fn compute_ratios_with_slope(tail_per: f64, slope: f64) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&tail_per) {
        return Err(Error::Parameter(format!(
            "tail fraction must lie in [0, 1], got {tail_per}"
        )));
    }
    // Quantised to a multiple of 2^-52: r1 + r2 == REF_R1 + REF_R2 exactly while |r2| < 2.
    let shift = ((tail_per - REF_TAIL_PER) * slope * SHIFT_GRID).round() / SHIFT_GRID;
    Ok((REF_R1 + shift, REF_R2 - shift))
}

pub fn compute_ratios(tail_per: f64) -> Result<(f64, f64)> {
    compute_ratios_with_slope(tail_per, DEFAULT_TAIL_SLOPE)
}

pub fn profile(series: &TimeSeries) -> Result<TailProfile> {
    profile_with(series, &TailSettings::default())
}

/// Peak, tail start, tail fraction and ratios in one pass.
///
/// A single observation is its own peak and has an empty tail.
pub fn profile_with(series: &TimeSeries, settings: &TailSettings) -> Result<TailProfile> {
    settings.validate()?;
    let n = series.len();
    let (peak_index, peak_value) = detect_peak(series);
    let tail_start_index = if n == 1 {
        1
    } else {
        detect_tail_start(series, settings.height_fraction)?
    };
    let tail_per = (n - tail_start_index) as f64 / n as f64;
    let (r1, r2) = compute_ratios_with_slope(tail_per, settings.slope)?;
    Ok(TailProfile {
        peak_index,
        peak_value,
        tail_start_index,
        tail_per,
        r1,
        r2,
    })
}
