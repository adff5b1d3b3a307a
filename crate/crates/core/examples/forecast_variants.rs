//! Run every model variant in both prediction modes and extend past the data.

use bass_tail::{
    fit_quadratic, forecast, generate_mono_peak, profile, sse, ForecastConfig, ForecastMode,
    ModelVariant, MonoPeakSpec,
};

fn main() -> Result<(), bass_tail::Error> {
    let series = generate_mono_peak(&MonoPeakSpec::default())?;
    let coeffs = fit_quadratic(&series)?;
    let tail = profile(&series)?;
    let n = series.len();

    for mode in [ForecastMode::OneStep, ForecastMode::Simulated] {
        println!("{}:", mode.as_str());
        for variant in [
            ModelVariant::Classical,
            ModelVariant::ModifiedAdd,
            ModelVariant::ModifiedSubtract,
            ModelVariant::Auto,
        ] {
            let config = ForecastConfig {
                mode,
                horizon: 12,
                clamp_nonnegative: true,
                variant,
            };
            let r = forecast(&series, &coeffs, &tail, &config)?;
            println!(
                "  {:<18} -> {:<18} correction {:>8.3}  in-sample SSE {:>10.1}  next 3: {:.2?}",
                variant.as_str(),
                r.variant_used.as_str(),
                r.correction_term,
                sse(&series, &r.predicted[..n])?,
                &r.predicted[n..n + 3],
            );
        }
    }
    Ok(())
}
