//! End-to-end runs of the `bass-tail` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bass-tail"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn synth(dir: &Path, extra: &[&str]) -> PathBuf {
    let mut args = vec!["synth", "-o", dir.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = run(&args);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    dir.join("synth.csv")
}

fn bass_csv(n: usize) -> String {
    let (a, b, c) = (10.0, 0.5, -0.001);
    let mut cum = 0.0;
    let mut text = String::from("period,demand\n");
    for t in 1..=n {
        let d: f64 = a + b * cum + c * cum * cum;
        cum += d;
        text.push_str(&format!("{t},{d}\n"));
    }
    text
}

#[test]
fn empty_csv_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "empty.csv", "period,demand\n");
    let out = run(&["fit", input.to_str().unwrap(), "-o", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("no data rows"), "{}", stderr(&out));
}

#[test]
fn missing_file_is_an_io_error() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("nope.csv");
    let out = run(&["fit", missing.to_str().unwrap(), "-o", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 4);
}

#[test]
fn malformed_value_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "bad.csv", "period,demand\n1,3\n2,abc\n");
    let out = run(&["fit", input.to_str().unwrap(), "-o", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn rank_deficient_fit_is_a_numeric_error() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "zeros.csv", "period,demand\n1,0\n2,0\n3,0\n4,0\n5,0\n");
    let out = run(&["fit", input.to_str().unwrap(), "-o", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 3, "{}", stderr(&out));
}

#[test]
fn bad_flag_value_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "fx.csv", &bass_csv(20));
    let out = run(&[
        "evaluate",
        input.to_str().unwrap(),
        "--height-fraction",
        "1.5",
        "-o",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn fit_writes_coefficients_and_bass_parameters() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "fx.csv", &bass_csv(30));
    let out = run(&["fit", input.to_str().unwrap(), "-o", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let fit = json(&dir.path().join("fit.json"));
    let close = |key: &str, want: f64| {
        let got = fit[key].as_f64().unwrap();
        assert!(((got - want) / want).abs() < 1e-6, "{key}: {got}");
    };
    close("a", 10.0);
    close("b", 0.5);
    close("c", -0.001);
    assert_eq!(fit["n_obs"], 30);
    assert!(fit["residual_sse"].as_f64().unwrap() < 1e-12);
    let m = fit["bass"]["m"].as_f64().unwrap();
    assert!((m - 519.2582).abs() < 1e-3);
    assert!(fit["bass_error"].is_null());
}

#[test]
fn sse_pair_prints_improvement() {
    let out = run(&["evaluate", "--sse-pair", "22061.11,14041.68", "--sse-pair", "179525.74,37197.51"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = String::from_utf8(out.stdout).unwrap();
    let values: Vec<Value> = serde_json::Deserializer::from_str(&text)
        .into_iter::<Value>()
        .map(Result::unwrap)
        .collect();
    assert_eq!(values.len(), 2);
    let p0 = values[0]["improvement_percent"].as_f64().unwrap();
    let p1 = values[1]["improvement_percent"].as_f64().unwrap();
    assert!((p0 - 36.35).abs() < 0.05);
    assert!((p1 - 79.3).abs() < 0.05);

    let out = run(&["evaluate", "--sse-pair", "0,5"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn evaluate_report_schema() {
    let dir = TempDir::new().unwrap();
    let input = synth(dir.path(), &[]);
    let out = run(&["evaluate", input.to_str().unwrap(), "-o", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report = json(&dir.path().join("report.json"));
    for key in [
        "sse_classical",
        "sse_modified",
        "variant_used",
        "improvement_percent",
        "mode",
        "correction_term",
        "n_obs",
        "tail_profile",
        "auxiliary",
    ] {
        assert!(report.get(key).is_some(), "missing {key}");
    }
    for key in ["peak_index", "peak_value", "tail_start_index", "tail_per", "r1", "r2"] {
        assert!(report["tail_profile"].get(key).is_some(), "missing tail_profile.{key}");
    }
    for path in ["classical", "modified"] {
        for key in ["sse", "rmse", "mae", "mape", "mape_skipped"] {
            assert!(report["auxiliary"][path].get(key).is_some(), "missing {path}.{key}");
        }
    }
    assert_eq!(report["mode"], "simulated");
    assert!(["classical", "modified_add", "modified_subtract"]
        .contains(&report["variant_used"].as_str().unwrap()));
    assert!(report["improvement_percent"].as_f64().unwrap() >= 0.0);

    let csv = fs::read_to_string(dir.path().join("predictions.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("period,actual,classical,modified"));
    assert_eq!(lines.count(), 120);
}

#[test]
fn evaluate_both_modes_writes_two_reports() {
    let dir = TempDir::new().unwrap();
    let input = synth(dir.path(), &[]);
    let out = run(&[
        "evaluate",
        input.to_str().unwrap(),
        "--mode",
        "both",
        "-o",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(json(&dir.path().join("report.json"))["mode"], "simulated");
    let one_step = json(&dir.path().join("report_one_step.json"));
    assert_eq!(one_step["mode"], "one_step");
    assert!(dir.path().join("predictions_one_step.csv").exists());
}

#[test]
fn plot_has_three_full_length_polylines() {
    let dir = TempDir::new().unwrap();
    let input = synth(dir.path(), &["--n", "90", "--peak-time", "25"]);
    let out = run(&["plot", input.to_str().unwrap(), "-o", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let svg = fs::read_to_string(dir.path().join("compare.svg")).unwrap();
    let doc = roxmltree::Document::parse(&svg).unwrap();
    let polylines: Vec<_> = doc
        .descendants()
        .filter(|n| n.has_tag_name("polyline"))
        .collect();
    assert_eq!(polylines.len(), 3);
    for p in &polylines {
        let points = p.attribute("points").unwrap().split_whitespace().count();
        assert_eq!(points, 90);
    }
    let style = |series: &str| {
        polylines
            .iter()
            .find(|p| p.attribute("data-series") == Some(series))
            .map(|p| p.attribute("stroke-dasharray"))
            .expect(series)
    };
    assert_eq!(style("actual"), None);
    assert_eq!(style("classical"), Some("8 4"));
    assert_eq!(style("modified"), Some("10 4 2 4"));
    assert!(svg.contains("SSE"));
}

#[test]
fn single_point_plot_is_degenerate() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "one.csv", "period,demand\n1,5\n");
    let out = run(&["plot", input.to_str().unwrap(), "-o", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(!dir.path().join("compare.svg").exists());
}

#[test]
fn synth_is_reproducible_and_records_its_spec() {
    let a = TempDir::new().unwrap();
    let b = TempDir::new().unwrap();
    synth(a.path(), &["--seed", "7"]);
    synth(b.path(), &["--seed", "7"]);
    let ca = fs::read(a.path().join("synth.csv")).unwrap();
    assert_eq!(ca, fs::read(b.path().join("synth.csv")).unwrap());
    let spec = json(&a.path().join("synth.spec.json"));
    assert_eq!(spec["seed"], 7);
    assert_eq!(spec["n"], 120);
    assert_eq!(spec["noise_amplitude"].as_f64().unwrap(), 2.0);

    let c = TempDir::new().unwrap();
    synth(c.path(), &["--seed", "8"]);
    assert_ne!(ca, fs::read(c.path().join("synth.csv")).unwrap());

    let out = run(&["fit", a.path().join("synth.csv").to_str().unwrap(), "-o", a.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
}

#[test]
fn invalid_synth_spec_is_rejected() {
    let dir = TempDir::new().unwrap();
    let out = run(&["synth", "--n", "10", "--peak-time", "10", "-o", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn forecast_extends_past_the_data() {
    let dir = TempDir::new().unwrap();
    let input = synth(dir.path(), &[]);
    let out = run(&[
        "forecast",
        input.to_str().unwrap(),
        "--horizon",
        "6",
        "--clamp",
        "-o",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let f = json(&dir.path().join("forecast.json"));
    let periods = f["periods"].as_array().unwrap();
    assert_eq!(periods.len(), 126);
    assert_eq!(periods[120], "2014-01");
    let predicted = f["result"]["predicted"].as_array().unwrap();
    assert_eq!(predicted.len(), 126);
    assert!(predicted.iter().all(|v| v.as_f64().unwrap() >= 0.0));
    let csv = fs::read_to_string(dir.path().join("forecast.csv")).unwrap();
    assert_eq!(csv.lines().count(), 127);
    assert!(csv.lines().last().unwrap().starts_with("2014-06,,"));
}

#[test]
fn trends_export_is_ingested() {
    let dir = TempDir::new().unwrap();
    let mut text = String::from("Category: All categories\n\nMonth,widget: (Worldwide)\n");
    for i in 0..48 {
        let v = match i {
            0..=9 => (i * 10).to_string(),
            10..=14 => (100 - (i - 10) * 15).to_string(),
            _ if i % 7 == 0 => "<1".to_string(),
            _ => "12".to_string(),
        };
        text.push_str(&format!("{}-{:02},{v}\n", 2004 + i / 12, i % 12 + 1));
    }
    let input = write(dir.path(), "trends.csv", &text);
    let out = run(&[
        "plot",
        input.to_str().unwrap(),
        "--format",
        "trends",
        "-o",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let svg = fs::read_to_string(dir.path().join("compare.svg")).unwrap();
    assert!(svg.contains("widget"));
    assert!(svg.contains("trend-index"));

    let out = run(&["fit", input.to_str().unwrap(), "-o", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 2, "generic parser must reject the Trends preamble");
}

#[test]
fn transactions_are_aggregated_by_month() {
    let dir = TempDir::new().unwrap();
    let mut text = String::from("date,qty\n");
    for month in 1..=12 {
        for day in [3, 17] {
            let qty = if month <= 3 { month * 20 } else { 60 / month + 1 };
            text.push_str(&format!("2020-{month:02}-{day:02},{qty}\n"));
        }
    }
    let input = write(dir.path(), "tx.csv", &text);
    let out = run(&[
        "evaluate",
        input.to_str().unwrap(),
        "--format",
        "transactions",
        "--value-column",
        "qty",
        "-o",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let csv = fs::read_to_string(dir.path().join("predictions.csv")).unwrap();
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 12);
    assert!(rows[0].starts_with("2020-01,40,"));
    assert!(rows[2].starts_with("2020-03,120,"));
}

#[test]
fn batch_writes_one_directory_per_input() {
    let dir = TempDir::new().unwrap();
    let s1 = TempDir::new().unwrap();
    let s2 = TempDir::new().unwrap();
    let in1 = synth(s1.path(), &["--seed", "1"]);
    let in2 = synth(s2.path(), &["--seed", "2"]);
    let bad = write(dir.path(), "empty.csv", "period,demand\n");
    let out_dir = dir.path().join("out");
    let out = run(&[
        "batch",
        in1.to_str().unwrap(),
        in2.to_str().unwrap(),
        "--jobs",
        "2",
        "-o",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    for sub in ["000-synth", "001-synth"] {
        for f in ["report.json", "predictions.csv", "compare.svg"] {
            assert!(out_dir.join(sub).join(f).exists(), "{sub}/{f}");
        }
    }

    let out = run(&[
        "batch",
        in1.to_str().unwrap(),
        bad.to_str().unwrap(),
        "-o",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("empty.csv"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let src = TempDir::new().unwrap();
    let input = synth(src.path(), &[]);
    let outputs: Vec<TempDir> = (0..2).map(|_| TempDir::new().unwrap()).collect();
    for out in &outputs {
        let o = out.path().to_str().unwrap();
        for cmd in ["evaluate", "plot"] {
            let r = run(&[cmd, input.to_str().unwrap(), "-o", o]);
            assert_eq!(code(&r), 0, "{}", stderr(&r));
        }
    }
    for f in ["report.json", "predictions.csv", "compare.svg"] {
        assert_eq!(
            fs::read(outputs[0].path().join(f)).unwrap(),
            fs::read(outputs[1].path().join(f)).unwrap(),
            "{f}"
        );
    }
}
