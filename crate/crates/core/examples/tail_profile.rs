//! Locate the peak and tail of a mono-peak curve and derive the correction ratios.

use bass_tail::{generate_mono_peak, profile_with, MonoPeakSpec, TailSettings};

fn main() -> Result<(), bass_tail::Error> {
    let series = generate_mono_peak(&MonoPeakSpec::default())?;
    println!("height_fraction  tail_start  tail_per      r1      r2");
    for height_fraction in [0.3, 0.5, 0.7] {
        let settings = TailSettings {
            height_fraction,
            ..TailSettings::default()
        };
        let p = profile_with(&series, &settings)?;
        println!(
            "{height_fraction:>15}  {:>10}  {:>8.3}  {:>6.3}  {:>6.3}",
            p.tail_start_index, p.tail_per, p.r1, p.r2
        );
    }
    Ok(())
}
