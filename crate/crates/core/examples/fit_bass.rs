//! Fit `(a, b, c)` by least squares and recover the Bass parameters `(p, q, m)`.
//!
//! `cargo run --example fit_bass [-- file.csv]` reads a `period,demand` CSV, or
//! fits a series generated from known coefficients when no file is given.

use bass_tail::ingest::IngestOptions;
use bass_tail::{
    derive_bass_parameters, fit_quadratic, generate_bass_series, parse_generic_csv,
    QuadraticCoefficients,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let series = match std::env::args().nth(1) {
        Some(path) => parse_generic_csv(&std::fs::read_to_string(path)?, &IngestOptions::default())?,
        None => generate_bass_series(&QuadraticCoefficients::new(10.0, 0.5, -0.001), 30)?,
    };
    let fit = fit_quadratic(&series)?;
    println!("n = {}", fit.n_obs);
    println!("a = {:.6}  b = {:.6}  c = {:.8}", fit.a, fit.b, fit.c);
    println!("residual SSE = {:.3e}", fit.residual_sse);
    match derive_bass_parameters(&fit) {
        Ok(bp) => println!("p = {:.6}  q = {:.6}  m = {:.3}", bp.p, bp.q, bp.m),
        Err(e) => println!("no Bass parameters: {e}"),
    }
    Ok(())
}
