//! File-in, file-out workflow behind the command-line tool: ingest, fit, profile
//! the tail, forecast, evaluate, plot.
//!
//! Every writer here is deterministic: identical inputs and options give
//! byte-identical output files.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evaluate::{compare_models_with, improvement_percent, EvaluationReport, ModelComparison};
use crate::fit::{derive_bass_parameters, fit_quadratic, BassParameters, QuadraticCoefficients};
use crate::forecast::{extend_periods, forecast, ForecastConfig, ForecastMode, ForecastResult, ModelVariant};
use crate::ingest::{
    parse_generic_csv, parse_google_trends_csv, parse_transaction_csv, write_generic_csv, ColumnSelector,
    IngestOptions, LessThanOnePolicy,
};
use crate::plot::{render_comparison_svg, PlotInput};
use crate::series::TimeSeries;
use crate::synthetic::{generate_mono_peak, MonoPeakSpec};
use crate::tail::{profile_with, TailProfile, TailSettings, DEFAULT_HEIGHT_FRACTION, DEFAULT_TAIL_SLOPE};

pub const FIT_FILE: &str = "fit.json";
pub const REPORT_FILE: &str = "report.json";
pub const REPORT_ONE_STEP_FILE: &str = "report_one_step.json";
pub const PREDICTIONS_FILE: &str = "predictions.csv";
pub const PREDICTIONS_ONE_STEP_FILE: &str = "predictions_one_step.csv";
pub const PLOT_FILE: &str = "compare.svg";
pub const FORECAST_JSON_FILE: &str = "forecast.json";
pub const FORECAST_CSV_FILE: &str = "forecast.csv";
pub const SYNTH_CSV_FILE: &str = "synth.csv";
pub const SYNTH_SPEC_FILE: &str = "synth.spec.json";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InputFormat {
    Trends,
    #[default]
    Generic,
    Transactions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeSelection {
    OneStep,
    #[default]
    Simulated,
    Both,
}

impl ModeSelection {
    /// Modes to evaluate, primary first.
    pub fn modes(&self) -> &'static [ForecastMode] {
        match self {
            ModeSelection::OneStep => &[ForecastMode::OneStep],
            ModeSelection::Simulated => &[ForecastMode::Simulated],
            ModeSelection::Both => &[ForecastMode::Simulated, ForecastMode::OneStep],
        }
    }

    pub fn primary(&self) -> ForecastMode {
        self.modes()[0]
    }
}

/// Options of a single run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub inputs: Vec<PathBuf>,
    pub format: InputFormat,
    pub variant: ModelVariant,
    pub mode: ModeSelection,
    pub horizon: usize,
    pub clamp_nonnegative: bool,
    pub height_fraction: f64,
    pub tail_constant: f64,
    pub less_than_one: LessThanOnePolicy,
    pub date_column: ColumnSelector,
    pub value_column: ColumnSelector,
    pub out_dir: PathBuf,
}

impl Default for RunManifest {
    fn default() -> Self {
        Self {
            inputs: Vec::new(),
            format: InputFormat::Generic,
            variant: ModelVariant::Auto,
            mode: ModeSelection::Simulated,
            horizon: 0,
            clamp_nonnegative: false,
            height_fraction: DEFAULT_HEIGHT_FRACTION,
            tail_constant: DEFAULT_TAIL_SLOPE,
            less_than_one: LessThanOnePolicy::AsHalf,
            date_column: ColumnSelector::Index(0),
            value_column: ColumnSelector::Index(1),
            out_dir: PathBuf::from("."),
        }
    }
}

impl RunManifest {
    pub fn tail_settings(&self) -> TailSettings {
        TailSettings {
            height_fraction: self.height_fraction,
            slope: self.tail_constant,
        }
    }

    pub fn ingest_options(&self) -> IngestOptions {
        IngestOptions {
            less_than_one_policy: self.less_than_one,
            date_column: self.date_column.clone(),
            value_column: self.value_column.clone(),
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.tail_settings().validate()
    }

    fn single_input(&self) -> Result<&Path> {
        match self.inputs.as_slice() {
            [one] => Ok(one),
            [] => Err(Error::Parameter("no input file given".into())),
            _ => Err(Error::Parameter(format!(
                "expected one input file, got {}; use batch for several",
                self.inputs.len()
            ))),
        }
    }
}

pub fn load_series(path: &Path, manifest: &RunManifest) -> Result<TimeSeries> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::io(format!("cannot read {}", path.display()), e))?;
    let opts = manifest.ingest_options();
    match manifest.format {
        InputFormat::Trends => parse_google_trends_csv(&text, &opts),
        InputFormat::Generic => parse_generic_csv(&text, &opts),
        InputFormat::Transactions => parse_transaction_csv(&text, &opts),
    }
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    fs::create_dir_all(dir)
        .map_err(|e| Error::io(format!("cannot create {}", dir.display()), e))?;
    let path = dir.join(name);
    fs::write(&path, contents)
        .map_err(|e| Error::io(format!("cannot write {}", path.display()), e))?;
    Ok(path)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

/// Contents of `fit.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitFile {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub residual_sse: f64,
    pub n_obs: usize,
    pub bass: Option<BassParameters>,
    /// Error code when `(p, q, m)` cannot be derived.
    pub bass_error: Option<String>,
}

impl FitFile {
    pub fn new(coeffs: &QuadraticCoefficients) -> Self {
        let (bass, bass_error) = match derive_bass_parameters(coeffs) {
            Ok(bp) => (Some(bp), None),
            Err(e) => (None, Some(e.code().to_string())),
        };
        Self {
            a: coeffs.a,
            b: coeffs.b,
            c: coeffs.c,
            residual_sse: coeffs.residual_sse,
            n_obs: coeffs.n_obs,
            bass,
            bass_error,
        }
    }
}

/// Fitted state shared by every downstream command.
pub struct Analysis {
    pub series: TimeSeries,
    pub coeffs: QuadraticCoefficients,
    pub tail: TailProfile,
}

impl Analysis {
    pub fn run(series: TimeSeries, settings: &TailSettings) -> Result<Self> {
        let coeffs = fit_quadratic(&series)?;
        let tail = profile_with(&series, settings)?;
        Ok(Self { series, coeffs, tail })
    }

    pub fn compare(&self, mode: ForecastMode, manifest: &RunManifest) -> Result<ModelComparison> {
        compare_models_with(
            &self.series,
            &self.coeffs,
            &self.tail,
            mode,
            manifest.variant,
            manifest.clamp_nonnegative,
        )
    }
}

fn analyse(manifest: &RunManifest) -> Result<Analysis> {
    manifest.validate()?;
    let series = load_series(manifest.single_input()?, manifest)?;
    Analysis::run(series, &manifest.tail_settings())
}

pub fn cmd_fit(manifest: &RunManifest) -> Result<FitFile> {
    manifest.validate()?;
    let series = load_series(manifest.single_input()?, manifest)?;
    let coeffs = fit_quadratic(&series)?;
    let file = FitFile::new(&coeffs);
    write_file(&manifest.out_dir, FIT_FILE, &to_json(&file))?;
    Ok(file)
}

/// Contents of `forecast.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForecastFile {
    pub coefficients: QuadraticCoefficients,
    pub tail_profile: TailProfile,
    pub periods: Vec<String>,
    pub result: ForecastResult,
}

pub fn cmd_forecast(manifest: &RunManifest) -> Result<ForecastFile> {
    let analysis = analyse(manifest)?;
    let config = ForecastConfig {
        mode: manifest.mode.primary(),
        horizon: manifest.horizon,
        clamp_nonnegative: manifest.clamp_nonnegative,
        variant: manifest.variant,
    };
    let result = forecast(&analysis.series, &analysis.coeffs, &analysis.tail, &config)?;
    let mut periods = analysis.series.periods().to_vec();
    periods.extend(extend_periods(&analysis.series, manifest.horizon));

    let mut csv = String::from("period,actual,predicted\n");
    let actual = analysis.series.demands();
    for (t, (period, pred)) in periods.iter().zip(&result.predicted).enumerate() {
        let actual = actual.get(t).map(|v| v.to_string()).unwrap_or_default();
        csv.push_str(&format!("{},{actual},{pred}\n", csv_field(period)));
    }
    let file = ForecastFile {
        coefficients: analysis.coeffs,
        tail_profile: analysis.tail,
        periods,
        result,
    };
    write_file(&manifest.out_dir, FORECAST_JSON_FILE, &to_json(&file))?;
    write_file(&manifest.out_dir, FORECAST_CSV_FILE, &csv)?;
    Ok(file)
}

fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

/// `period,actual,classical,modified` over the observed range.
pub fn predictions_csv(series: &TimeSeries, comparison: &ModelComparison) -> String {
    let mut out = String::from("period,actual,classical,modified\n");
    for (((period, actual), classical), modified) in series
        .periods()
        .iter()
        .zip(series.demands())
        .zip(&comparison.classical)
        .zip(&comparison.modified)
    {
        out.push_str(&format!(
            "{},{actual},{classical},{modified}\n",
            csv_field(period)
        ));
    }
    out
}

/// Writes `report.json` and `predictions.csv`, plus the one-step pair when both modes are requested.
pub fn cmd_evaluate(manifest: &RunManifest) -> Result<Vec<EvaluationReport>> {
    let analysis = analyse(manifest)?;
    evaluate_into(&analysis, manifest, &manifest.out_dir)
}

fn evaluate_into(analysis: &Analysis, manifest: &RunManifest, out_dir: &Path) -> Result<Vec<EvaluationReport>> {
    let mut reports = Vec::new();
    for (k, &mode) in manifest.mode.modes().iter().enumerate() {
        let comparison = analysis.compare(mode, manifest)?;
        let (report_name, predictions_name) = if k == 0 {
            (REPORT_FILE, PREDICTIONS_FILE)
        } else {
            (REPORT_ONE_STEP_FILE, PREDICTIONS_ONE_STEP_FILE)
        };
        write_file(out_dir, report_name, &to_json(&comparison.report))?;
        write_file(out_dir, predictions_name, &predictions_csv(&analysis.series, &comparison))?;
        reports.push(comparison.report);
    }
    Ok(reports)
}

pub fn cmd_plot(manifest: &RunManifest) -> Result<PathBuf> {
    manifest.validate()?;
    let series = load_series(manifest.single_input()?, manifest)?;
    if series.len() < 2 {
        return Err(Error::DegeneratePlot(format!(
            "series has {} observation; a comparison plot needs more data",
            series.len()
        )));
    }
    let analysis = Analysis::run(series, &manifest.tail_settings())?;
    plot_into(&analysis, manifest, &manifest.out_dir)
}

fn plot_into(analysis: &Analysis, manifest: &RunManifest, out_dir: &Path) -> Result<PathBuf> {
    let comparison = analysis.compare(manifest.mode.primary(), manifest)?;
    let title = analysis.series.name().unwrap_or("Actual vs predicted demand");
    let svg = render_comparison_svg(&PlotInput {
        title,
        y_label: analysis.series.unit(),
        periods: analysis.series.periods(),
        actual: analysis.series.demands(),
        classical: &comparison.classical,
        modified: &comparison.modified,
        report: &comparison.report,
    })?;
    write_file(out_dir, PLOT_FILE, &svg)
}

/// Writes `synth.csv` and the generating spec as `synth.spec.json`.
pub fn cmd_synth(spec: &MonoPeakSpec, out_dir: &Path) -> Result<TimeSeries> {
    let series = generate_mono_peak(spec)?;
    write_file(out_dir, SYNTH_CSV_FILE, &write_generic_csv(&series))?;
    write_file(out_dir, SYNTH_SPEC_FILE, &to_json(spec))?;
    Ok(series)
}

/// Outcome of one file in a batch run.
#[derive(Debug)]
pub struct BatchItem {
    pub input: PathBuf,
    pub out_dir: PathBuf,
    pub result: Result<Vec<EvaluationReport>>,
}

/// Output directory of the `index`-th batch input: `<out>/<index>-<file stem>`.
pub fn batch_dir(out_dir: &Path, index: usize, input: &Path) -> PathBuf {
    let stem = input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "input".into());
    out_dir.join(format!("{index:03}-{stem}"))
}

/// Fits, evaluates and plots each input into its own subdirectory, `jobs` files at a time.
pub fn cmd_batch(manifest: &RunManifest, jobs: usize) -> Result<Vec<BatchItem>> {
    manifest.validate()?;
    if manifest.inputs.is_empty() {
        return Err(Error::Parameter("no input files given".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Parameter(format!("cannot start worker pool: {e}")))?;
    let run_one = |index: usize, input: &PathBuf| {
        let out_dir = batch_dir(&manifest.out_dir, index, input);
        let result = load_series(input, manifest)
            .and_then(|series| Analysis::run(series, &manifest.tail_settings()))
            .and_then(|analysis| {
                let reports = evaluate_into(&analysis, manifest, &out_dir)?;
                if analysis.series.len() >= 2 {
                    plot_into(&analysis, manifest, &out_dir)?;
                }
                Ok(reports)
            });
        BatchItem {
            input: input.clone(),
            out_dir,
            result,
        }
    };
    Ok(pool.install(|| {
        manifest
            .inputs
            .par_iter()
            .enumerate()
            .map(|(i, input)| run_one(i, input))
            .collect()
    }))
}

/// Improvement arithmetic on an externally supplied pair of SSE values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SsePair {
    pub sse_classical: f64,
    pub sse_modified: f64,
    pub improvement_percent: f64,
}

pub fn sse_pair(sse_classical: f64, sse_modified: f64) -> Result<SsePair> {
    Ok(SsePair {
        sse_classical,
        sse_modified,
        improvement_percent: improvement_percent(sse_classical, sse_modified)?,
    })
}

pub fn to_json_string<T: Serialize>(value: &T) -> String {
    to_json(value)
}
