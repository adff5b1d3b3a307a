use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bass_tail::pipeline::{
    self, InputFormat, ModeSelection, RunManifest, PLOT_FILE, REPORT_FILE,
};
use bass_tail::{ColumnSelector, Error, ErrorKind, LessThanOnePolicy, ModelVariant, MonoPeakSpec};

/// Bass diffusion forecasting with a tail-length correction for mono-peak demand curves.
///
/// Exit codes: 0 success, 2 input or format error, 3 fitting or numeric error, 4 I/O error.
#[derive(Parser)]
#[command(name = "bass-tail", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit (a, b, c) and write fit.json
    Fit(RunArgs),
    /// Forecast with the chosen variant and write forecast.json / forecast.csv
    Forecast(RunArgs),
    /// Compare classical and corrected models; write report.json and predictions.csv
    Evaluate(EvaluateArgs),
    /// Write compare.svg with actual, classical and corrected curves
    Plot(RunArgs),
    /// Generate a seeded mono-peak fixture: synth.csv and synth.spec.json
    Synth(SynthArgs),
    /// Evaluate and plot several inputs, one output subdirectory each
    Batch(BatchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Trends,
    Generic,
    Transactions,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Classical,
    ModifiedAdd,
    ModifiedSubtract,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    OneStep,
    Simulated,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    Half,
    Zero,
    One,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Input file layout
    #[arg(long, value_enum, default_value = "generic")]
    format: FormatArg,
    /// Model variant; auto picks the lowest in-sample SSE
    #[arg(long, value_enum, default_value = "auto")]
    variant: VariantArg,
    /// Prediction mode
    #[arg(long, value_enum, default_value = "simulated")]
    mode: ModeArg,
    /// Periods to forecast past the data (forecast only)
    #[arg(long, default_value_t = 0)]
    horizon: usize,
    /// Floor every prediction at zero
    #[arg(long)]
    clamp: bool,
    /// Fraction of the curve height at which the tail starts, in (0, 1)
    #[arg(long, default_value_t = bass_tail::tail::DEFAULT_HEIGHT_FRACTION)]
    height_fraction: f64,
    /// Slope of r1/r2 against the tail fraction
    #[arg(long, default_value_t = bass_tail::tail::DEFAULT_TAIL_SLOPE)]
    tail_constant: f64,
    /// Value substituted for Google Trends "<1" cells
    #[arg(long, value_enum, default_value = "half")]
    less_than_one: PolicyArg,
    /// Period (or timestamp) column, by header name or 0-based index
    #[arg(long, default_value = "0")]
    date_column: String,
    /// Demand (or count) column, by header name or 0-based index
    #[arg(long, default_value = "1")]
    value_column: String,
    /// Output directory
    #[arg(short, long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct RunArgs {
    /// Input CSV
    input: PathBuf,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct EvaluateArgs {
    /// Input CSV (not needed with --sse-pair)
    #[arg(required_unless_present = "sse_pair")]
    input: Option<PathBuf>,
    /// Print the improvement for an externally computed "CLASSICAL,MODIFIED" SSE pair
    #[arg(long, value_name = "CLASSICAL,MODIFIED")]
    sse_pair: Vec<String>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct BatchArgs {
    /// Input CSVs
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    /// Files processed concurrently
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long, default_value_t = MonoPeakSpec::default().n)]
    n: usize,
    #[arg(long, default_value_t = MonoPeakSpec::default().peak_time)]
    peak_time: usize,
    #[arg(long, default_value_t = MonoPeakSpec::default().peak_height)]
    peak_height: f64,
    #[arg(long, default_value_t = MonoPeakSpec::default().decay_rate)]
    decay_rate: f64,
    #[arg(long, default_value_t = MonoPeakSpec::default().plateau_level)]
    plateau: f64,
    #[arg(long, default_value_t = MonoPeakSpec::default().rise_shape)]
    rise_shape: f64,
    /// Half-width of the uniform noise band; defaults to 2% of the peak height
    #[arg(long)]
    noise: Option<f64>,
    #[arg(long, default_value_t = MonoPeakSpec::default().seed)]
    seed: u64,
    #[arg(short, long, default_value = ".")]
    out_dir: PathBuf,
}

impl CommonArgs {
    fn manifest(&self, inputs: Vec<PathBuf>) -> RunManifest {
        RunManifest {
            inputs,
            format: match self.format {
                FormatArg::Trends => InputFormat::Trends,
                FormatArg::Generic => InputFormat::Generic,
                FormatArg::Transactions => InputFormat::Transactions,
            },
            variant: match self.variant {
                VariantArg::Classical => ModelVariant::Classical,
                VariantArg::ModifiedAdd => ModelVariant::ModifiedAdd,
                VariantArg::ModifiedSubtract => ModelVariant::ModifiedSubtract,
                VariantArg::Auto => ModelVariant::Auto,
            },
            mode: match self.mode {
                ModeArg::OneStep => ModeSelection::OneStep,
                ModeArg::Simulated => ModeSelection::Simulated,
                ModeArg::Both => ModeSelection::Both,
            },
            horizon: self.horizon,
            clamp_nonnegative: self.clamp,
            height_fraction: self.height_fraction,
            tail_constant: self.tail_constant,
            less_than_one: match self.less_than_one {
                PolicyArg::Half => LessThanOnePolicy::AsHalf,
                PolicyArg::Zero => LessThanOnePolicy::AsZero,
                PolicyArg::One => LessThanOnePolicy::AsOne,
            },
            date_column: ColumnSelector::parse(&self.date_column),
            value_column: ColumnSelector::parse(&self.value_column),
            out_dir: self.out_dir.clone(),
        }
    }
}

fn parse_pair(text: &str) -> Result<(f64, f64), Error> {
    let bad = || Error::Parameter(format!("--sse-pair expects CLASSICAL,MODIFIED, got {text:?}"));
    let (c, m) = text.split_once(',').ok_or_else(bad)?;
    let c = c.trim().replace('_', "").parse::<f64>().map_err(|_| bad())?;
    let m = m.trim().replace('_', "").parse::<f64>().map_err(|_| bad())?;
    Ok((c, m))
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Fit(args) => {
            pipeline::cmd_fit(&args.common.manifest(vec![args.input]))?;
        }
        Command::Forecast(args) => {
            pipeline::cmd_forecast(&args.common.manifest(vec![args.input]))?;
        }
        Command::Evaluate(args) => {
            for pair in &args.sse_pair {
                let (c, m) = parse_pair(pair)?;
                let result = pipeline::sse_pair(c, m)?;
                print!("{}", pipeline::to_json_string(&result));
            }
            if let Some(input) = args.input {
                let manifest = args.common.manifest(vec![input]);
                let reports = pipeline::cmd_evaluate(&manifest)?;
                for report in reports {
                    println!(
                        "{}: sse_classical={} sse_modified={} variant={} improvement={}",
                        report.mode.as_str(),
                        report.sse_classical,
                        report.sse_modified,
                        report.variant_used.as_str(),
                        report
                            .improvement_percent
                            .map_or_else(|| "undefined".into(), |p| format!("{p:.2}%")),
                    );
                }
                println!("wrote {}", manifest.out_dir.join(REPORT_FILE).display());
            }
        }
        Command::Plot(args) => {
            let path = pipeline::cmd_plot(&args.common.manifest(vec![args.input]))?;
            println!("wrote {}", path.display());
        }
        Command::Synth(args) => {
            let spec = MonoPeakSpec {
                n: args.n,
                peak_time: args.peak_time,
                peak_height: args.peak_height,
                decay_rate: args.decay_rate,
                plateau_level: args.plateau,
                rise_shape: args.rise_shape,
                noise_amplitude: args.noise.unwrap_or(0.02 * args.peak_height),
                seed: args.seed,
            };
            pipeline::cmd_synth(&spec, &args.out_dir)?;
        }
        Command::Batch(args) => {
            let manifest = args.common.manifest(args.inputs);
            let items = pipeline::cmd_batch(&manifest, args.jobs)?;
            let mut first_err = None;
            for item in items {
                match item.result {
                    Ok(_) => println!(
                        "ok    {} -> {}",
                        item.input.display(),
                        item.out_dir.join(PLOT_FILE).display()
                    ),
                    Err(e) => {
                        eprintln!("error {}: {e}", item.input.display());
                        first_err.get_or_insert(e);
                    }
                }
            }
            if let Some(e) = first_err {
                return Err(e);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.kind() {
                ErrorKind::Input => 2,
                ErrorKind::Numeric => 3,
                ErrorKind::Io => 4,
            })
        }
    }
}
