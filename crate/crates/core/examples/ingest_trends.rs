//! Parse a Google Trends "interest over time" export.
//!
//! `cargo run --example ingest_trends [-- multiTimeline.csv]`

use bass_tail::{parse_google_trends_csv, IngestOptions, LessThanOnePolicy};

const SAMPLE: &str = "Category: All categories

Month,fidget spinner: (Worldwide)
2017-01,<1
2017-02,1
2017-03,8
2017-04,62
2017-05,100
2017-06,41
2017-07,19
2017-08,11
2017-09,7
2017-10,5
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => SAMPLE.to_string(),
    };
    for policy in [LessThanOnePolicy::AsHalf, LessThanOnePolicy::AsZero] {
        let opts = IngestOptions {
            less_than_one_policy: policy,
            ..IngestOptions::default()
        };
        let series = parse_google_trends_csv(&text, &opts)?;
        println!(
            "{:?}: {} ({}), {} months, first {:?} = {}, total {}",
            policy,
            series.name().unwrap_or("?"),
            series.unit(),
            series.len(),
            series.periods()[0],
            series.demands()[0],
            series.total()
        );
    }
    Ok(())
}
