//! Seeded fixtures: an exact Bass recursion and a noisy mono-peak curve.

use bass_tail::{generate_bass_series, generate_mono_peak, profile, MonoPeakSpec, QuadraticCoefficients};

fn main() -> Result<(), bass_tail::Error> {
    let bass = generate_bass_series(&QuadraticCoefficients::new(10.0, 0.5, -0.001), 12)?;
    println!("bass: {:.2?}", bass.demands());

    for seed in 0..3 {
        let spec = MonoPeakSpec {
            seed,
            ..MonoPeakSpec::default()
        };
        let s = generate_mono_peak(&spec)?;
        let tail = profile(&s)?;
        println!(
            "seed {seed}: peak {:.1} at {}, tail_per {:.3}, last 4 {:.2?}",
            tail.peak_value,
            s.periods()[tail.peak_index],
            tail.tail_per,
            &s.demands()[s.len() - 4..]
        );
    }
    Ok(())
}
