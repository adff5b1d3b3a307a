//! Compare classical and corrected predictions and print the report as JSON.

use bass_tail::{compare_models, fit_quadratic, generate_mono_peak, profile, ForecastMode, MonoPeakSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = MonoPeakSpec {
        seed: 7,
        ..MonoPeakSpec::default()
    };
    let series = generate_mono_peak(&spec)?;
    let coeffs = fit_quadratic(&series)?;
    let tail = profile(&series)?;
    let report = compare_models(&series, &coeffs, &tail, ForecastMode::Simulated)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}
