//! Deterministic fixture generators.
//!
//! Noise comes from ChaCha8 seeded through `SeedableRng::seed_from_u64`, one
//! `f64` draw per period, so a given seed reproduces the same series on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fit::QuadraticCoefficients;
use crate::forecast::DIVERGENCE_LIMIT;
use crate::series::TimeSeries;

/// First period label of every generated series.
pub const START_YEAR: i64 = 2004;

/// Parameters of a single-peak curve with an exponential fall onto a plateau.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonoPeakSpec {
    pub n: usize,
    pub peak_time: usize,
    pub peak_height: f64,
    /// Exponential decay rate after the peak.
    pub decay_rate: f64,
    /// Level the tail decays towards.
    pub plateau_level: f64,
    /// Exponent of the pre-peak power-law rise.
    pub rise_shape: f64,
    /// Half-width of the uniform noise band.
    pub noise_amplitude: f64,
    pub seed: u64,
}

impl Default for MonoPeakSpec {
    fn default() -> Self {
        Self {
            n: 120,
            peak_time: 36,
            peak_height: 100.0,
            decay_rate: 0.5,
            plateau_level: 5.0,
            rise_shape: 2.0,
            noise_amplitude: 2.0,
            seed: 42,
        }
    }
}

impl MonoPeakSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Parameter(msg));
        if !(self.peak_time > 0 && self.peak_time < self.n) {
            return bad(format!(
                "peak_time must satisfy 0 < peak_time < n, got {} with n = {}",
                self.peak_time, self.n
            ));
        }
        if !(self.peak_height.is_finite() && self.peak_height > 0.0) {
            return bad(format!("peak_height must be positive, got {}", self.peak_height));
        }
        if !(self.decay_rate.is_finite() && self.decay_rate > 0.0) {
            return bad(format!("decay_rate must be positive, got {}", self.decay_rate));
        }
        if !(self.plateau_level >= 0.0 && self.plateau_level < self.peak_height) {
            return bad(format!(
                "plateau_level must lie in [0, peak_height), got {}",
                self.plateau_level
            ));
        }
        if !(self.rise_shape.is_finite() && self.rise_shape > 0.0) {
            return bad(format!("rise_shape must be positive, got {}", self.rise_shape));
        }
        if !(self.noise_amplitude.is_finite() && self.noise_amplitude >= 0.0) {
            return bad(format!(
                "noise_amplitude must be non-negative, got {}",
                self.noise_amplitude
            ));
        }
        Ok(())
    }

    /// Noise-free curve value at period `t`.
    pub fn shape_at(&self, t: usize) -> f64 {
        if t < self.peak_time {
            self.peak_height * (t as f64 / self.peak_time as f64).powf(self.rise_shape)
        } else {
            let k = (t - self.peak_time) as f64;
            self.plateau_level
                + (self.peak_height - self.plateau_level) * (-self.decay_rate * k).exp()
        }
    }
}

/// `n` consecutive monthly labels starting January [`START_YEAR`].
pub fn monthly_labels(n: usize) -> Vec<String> {
    (0..n as i64)
        .map(|i| {
            let idx = START_YEAR * 12 + i;
            format!("{:04}-{:02}", idx / 12, idx % 12 + 1)
        })
        .collect()
}

/// Forward recursion `d(t) = a + b·D(t-1) + c·D(t-1)²` from `D(0) = 0`.
pub fn generate_bass_series(coeffs: &QuadraticCoefficients, n: usize) -> Result<TimeSeries> {
    if n == 0 {
        return Err(Error::Parameter("series length must be at least 1".into()));
    }
    let labels = monthly_labels(n);
    let mut demands = Vec::with_capacity(n);
    let mut cumulative = 0.0;
    for label in &labels {
        let d = coeffs.eval(cumulative);
        let next = cumulative + d;
        if !next.is_finite() || next.abs() > DIVERGENCE_LIMIT {
            return Err(Error::Divergence {
                period: label.clone(),
                cumulative: next,
            });
        }
        demands.push(d);
        cumulative = next;
    }
    TimeSeries::new(labels, demands, "units")
}

/// Power-law rise to `peak_height`, exponential decay to `plateau_level`, uniform noise, floored at zero.
pub fn generate_mono_peak(spec: &MonoPeakSpec) -> Result<TimeSeries> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let demands = (0..spec.n)
        .map(|t| {
            let u: f64 = rng.random();
            let noise = spec.noise_amplitude * (2.0 * u - 1.0);
            (spec.shape_at(t) + noise).max(0.0)
        })
        .collect();
    TimeSeries::new(monthly_labels(spec.n), demands, "units")
}
