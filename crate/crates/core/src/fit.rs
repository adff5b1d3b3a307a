//! Least-squares estimation of the discrete Bass recursion
//! `d(t) = a + b·D(t-1) + c·D(t-1)²` and the classical `(p, q, m)` it implies.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{cumulative, TimeSeries};

/// Smallest-to-largest singular value ratio below which the design is treated as rank deficient.
pub const RANK_TOLERANCE: f64 = 1e-10;

pub const MIN_FIT_OBSERVATIONS: usize = 4;

const COLUMN_NAMES: [&str; 3] = ["intercept", "D(t-1)", "D(t-1)^2"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadraticCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// Sum of squared one-step residuals at the fitted coefficients.
    pub residual_sse: f64,
    pub n_obs: usize,
}

impl QuadraticCoefficients {
    /// Coefficients with no fit diagnostics attached.
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        Self {
            a,
            b,
            c,
            residual_sse: 0.0,
            n_obs: 0,
        }
    }

    /// `a + b·D + c·D²`
    pub fn eval(&self, cumulative: f64) -> f64 {
        self.a + self.b * cumulative + self.c * cumulative * cumulative
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BassParameters {
    /// Coefficient of innovation.
    pub p: f64,
    /// Coefficient of imitation.
    pub q: f64,
    /// Market potential, in units of cumulative demand.
    pub m: f64,
}

impl BassParameters {
    /// Maps `(p, q, m)` to the recursion coefficients `(p·m, q − p, −q/m)`.
    pub fn to_coefficients(&self) -> QuadraticCoefficients {
        QuadraticCoefficients::new(self.p * self.m, self.q - self.p, -self.q / self.m)
    }
}

/// Sum of squared residuals of `demands` against `coeffs` evaluated on `lagged`, summed left to right.
pub(crate) fn residual_sse(coeffs: &QuadraticCoefficients, lagged: &[f64], demands: &[f64]) -> f64 {
    lagged.iter().zip(demands).fold(0.0, |acc, (&x, &y)| {
        let r = y - coeffs.eval(x);
        acc + r * r
    })
}

/// Ordinary least squares of each demand on `(1, D(t-1), D(t-1)²)` over all `n` periods.
///
/// The cumulative regressor is centred and scaled before a Householder QR solve;
/// the solution is then mapped back so the returned `(a, b, c)` apply to raw `D(t-1)`.
pub fn fit_quadratic(series: &TimeSeries) -> Result<QuadraticCoefficients> {
    let n = series.len();
    if n < MIN_FIT_OBSERVATIONS {
        return Err(Error::InsufficientData {
            needed: MIN_FIT_OBSERVATIONS,
            got: n,
        });
    }
    let demands = series.demands();
    let lagged = cumulative(series).into_vec();

    let center = lagged.iter().sum::<f64>() / n as f64;
    let spread = (lagged.iter().map(|x| (x - center).powi(2)).sum::<f64>() / n as f64).sqrt();
    if !(spread > 0.0) {
        return Err(Error::SingularFit {
            columns: COLUMN_NAMES.to_vec(),
        });
    }

    let z: Vec<f64> = lagged.iter().map(|x| (x - center) / spread).collect();
    let design = DMatrix::from_fn(n, 3, |i, j| match j {
        0 => 1.0,
        1 => z[i],
        _ => z[i] * z[i],
    });
    check_rank(&design)?;

    let rhs = DVector::from_column_slice(demands);
    let qr = design.qr();
    let qty = qr.q().transpose() * &rhs;
    let r = qr.r();
    let scaled = r
        .solve_upper_triangular(&qty)
        .ok_or_else(|| Error::SingularFit {
            columns: COLUMN_NAMES.to_vec(),
        })?;
    let (alpha, beta, gamma) = (scaled[0], scaled[1], scaled[2]);

    // d = alpha + beta·z + gamma·z², z = (D - center) / spread
    let s2 = spread * spread;
    let a = alpha - beta * center / spread + gamma * center * center / s2;
    let b = beta / spread - 2.0 * gamma * center / s2;
    let c = gamma / s2;

    let mut coeffs = QuadraticCoefficients {
        a,
        b,
        c,
        residual_sse: 0.0,
        n_obs: n,
    };
    if ![a, b, c].iter().all(|v| v.is_finite()) {
        return Err(Error::SingularFit {
            columns: COLUMN_NAMES.to_vec(),
        });
    }
    coeffs.residual_sse = residual_sse(&coeffs, &lagged, demands);
    Ok(coeffs)
}

/// Column-normalised singular value test; on failure names the columns carrying the null direction.
fn check_rank(design: &DMatrix<f64>) -> Result<()> {
    let mut normalized = design.clone();
    for mut col in normalized.column_iter_mut() {
        let norm = col.norm();
        if norm > 0.0 {
            col /= norm;
        }
    }
    let svd = normalized.svd(false, true);
    let sv = &svd.singular_values;
    let max = sv.max();
    let (min_i, min) = sv.argmin();
    if min >= RANK_TOLERANCE * max {
        return Ok(());
    }
    let columns = match &svd.v_t {
        Some(v_t) => {
            let null = v_t.row(min_i);
            let peak = null.amax();
            COLUMN_NAMES
                .iter()
                .enumerate()
                .filter(|(j, _)| null[*j].abs() > 1e-3 * peak)
                .map(|(_, name)| *name)
                .collect()
        }
        None => COLUMN_NAMES.to_vec(),
    };
    Err(Error::SingularFit { columns })
}

/// Recovers `(p, q, m)` from `(a, b, c)` via `a = p·m`, `b = q − p`, `c = −q/m`.
///
/// `m` is the positive root of `c·m² + b·m + a = 0`.
pub fn derive_bass_parameters(coeffs: &QuadraticCoefficients) -> Result<BassParameters> {
    let QuadraticCoefficients { a, b, c, .. } = *coeffs;
    if !(c < 0.0) {
        return Err(Error::NonDiffusionShape { c });
    }
    let discriminant = b * b - 4.0 * a * c;
    if discriminant < 0.0 {
        return Err(Error::NoRealMarketSize { discriminant });
    }
    if !(a > 0.0) {
        return Err(Error::NonPositiveIntercept { a });
    }
    let m = (-b - discriminant.sqrt()) / (2.0 * c);
    let q = -c * m;
    let p = a / m;
    Ok(BassParameters { p, q, m })
}
