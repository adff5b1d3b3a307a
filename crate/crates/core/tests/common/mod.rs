//! Independent oracles shared by the integration tests. Nothing here calls into the
//! code paths it is used to check.
#![allow(dead_code, clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform_vec(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n).map(|_| lo + (hi - lo) * rng.random::<f64>()).collect()
}

pub fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().expect("representable")
}

/// Correctly rounded sum of `values`.
pub fn exact_sum(values: &[f64]) -> f64 {
    let total = values.iter().fold(BigRational::zero(), |acc, &v| acc + exact(v));
    to_f64(&total)
}

/// Correctly rounded sum of squared differences.
pub fn exact_sse(actual: &[f64], predicted: &[f64]) -> f64 {
    let total = actual
        .iter()
        .zip(predicted)
        .fold(BigRational::zero(), |acc, (&a, &p)| {
            let r = exact(a) - exact(p);
            acc + &r * &r
        });
    to_f64(&total)
}

/// `x = m·2^e` with integer `m`.
fn dyadic(x: f64) -> (BigInt, i32) {
    let (mantissa, exponent, sign) = num_traits::Float::integer_decode(x);
    (BigInt::from(sign) * BigInt::from(mantissa), exponent as i32)
}

fn det3(m: &[[BigInt; 3]; 3]) -> BigInt {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

/// Least-squares `(a, b, c)` of `d(t)` on `(1, D(t-1), D(t-1)²)` via the normal equations,
/// solved exactly. Every f64 is a dyadic rational, so all demands are scaled by a common
/// power of two into integers, the normal equations are formed in integers and solved by
/// Cramer's rule, and each coefficient is rounded once at the end.
pub fn normal_equations_oracle(demands: &[f64]) -> [f64; 3] {
    let parts: Vec<(BigInt, i32)> = demands.iter().map(|&d| dyadic(d)).collect();
    let e = parts
        .iter()
        .filter(|(m, _)| !m.is_zero())
        .map(|&(_, e)| e)
        .min()
        .unwrap_or(0);
    // true value = integer · 2^e
    let y: Vec<BigInt> = parts.iter().map(|(m, k)| m << (k - e) as usize).collect();
    let mut x = Vec::with_capacity(y.len());
    let mut acc = BigInt::zero();
    for v in &y {
        x.push(acc.clone());
        acc += v;
    }
    let mut xtx: [[BigInt; 3]; 3] = Default::default();
    let mut xty: [BigInt; 3] = Default::default();
    for (xi, yi) in x.iter().zip(&y) {
        let row = [BigInt::from(1), xi.clone(), xi * xi];
        for i in 0..3 {
            for j in 0..3 {
                xtx[i][j] += &row[i] * &row[j];
            }
            xty[i] += &row[i] * yi;
        }
    }
    let det = det3(&xtx);
    assert!(!det.is_zero(), "singular normal equations");
    let solve = |col: usize| {
        let mut m = xtx.clone();
        for i in 0..3 {
            m[i][col] = xty[i].clone();
        }
        BigRational::new(det3(&m), det.clone())
    };
    // scaled system: y' = a' + b·x' + c'·x'², with a = a'·2^e, c = c'·2^-e
    let scale = |q: BigRational, shift: i32| {
        let two = BigRational::from_integer(BigInt::from(2));
        if shift >= 0 {
            q * num_traits::pow(two, shift as usize)
        } else {
            q / num_traits::pow(two, (-shift) as usize)
        }
    };
    [
        to_f64(&scale(solve(0), e)),
        to_f64(&solve(1)),
        to_f64(&scale(solve(2), -e)),
    ]
}

/// Argmax by plain index loop, earliest on ties.
pub fn scan_peak(values: &[f64]) -> (usize, f64) {
    let mut idx = 0;
    let mut i = 1;
    while i < values.len() {
        if values[i] > values[idx] {
            idx = i;
        }
        i += 1;
    }
    (idx, values[idx])
}

/// Tail start by enumeration: sort for the minimum, then walk forward from the peak.
pub fn scan_tail_start(values: &[f64], fraction: f64) -> usize {
    let (peak_idx, peak) = scan_peak(values);
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let min = sorted[0];
    let threshold = fraction * (peak - min) + min;
    for i in peak_idx + 1..values.len() {
        if values[i] <= threshold {
            return i;
        }
    }
    values.len()
}

/// Continuous time after the peak at which `plateau + (height - plateau)·e^{-rate·k}` reaches `threshold`.
pub fn exponential_crossing_time(height: f64, plateau: f64, rate: f64, threshold: f64) -> f64 {
    ((height - plateau) / (threshold - plateau)).ln() / rate
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    if want == 0.0 {
        got.abs()
    } else {
        ((got - want) / want).abs()
    }
}
