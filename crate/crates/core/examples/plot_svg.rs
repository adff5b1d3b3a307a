//! Render the actual / classical / corrected comparison as a standalone SVG.
//!
//! `cargo run --example plot_svg [-- out.svg]`

use bass_tail::plot::{render_comparison_svg, PlotInput};
use bass_tail::{
    compare_models_with, fit_quadratic, generate_mono_peak, profile, ForecastMode, ModelVariant,
    MonoPeakSpec,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let series = generate_mono_peak(&MonoPeakSpec::default())?;
    let coeffs = fit_quadratic(&series)?;
    let tail = profile(&series)?;
    let cmp = compare_models_with(
        &series,
        &coeffs,
        &tail,
        ForecastMode::Simulated,
        ModelVariant::Auto,
        false,
    )?;
    let svg = render_comparison_svg(&PlotInput {
        title: "Synthetic mono-peak demand",
        y_label: series.unit(),
        periods: series.periods(),
        actual: series.demands(),
        classical: &cmp.classical,
        modified: &cmp.modified,
        report: &cmp.report,
    })?;
    let path = std::env::args().nth(1).unwrap_or_else(|| "compare.svg".into());
    std::fs::write(&path, svg)?;
    println!("wrote {path}");
    Ok(())
}
