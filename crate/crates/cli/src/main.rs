//! `bandsel` command-line front end.
//!
//! Exit codes: 0 on success, 2 for usage or input errors, 1 for internal
//! failures such as an unwritable output.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use bandsel::band_selection::{bandwidth_rejection, estimate_ground_truth, select_bands, Thresholds};
use bandsel::data_model::{
    load_cube, load_ground_truth, read_header, sidecar_path, split_labeled_pixels, synthesize_bands,
    synthetic_ground_truth, write_cube, write_ground_truth, ByteOrder, CubeHeader, DType, GroundTruthMap, HsiCube,
    Interleave, SyntheticSpec,
};
use bandsel::evaluation::{
    classify_bands, curve_csv, emit_report, export_features_csv, extract_features, parse_selection_json, sweep, Report,
    ReportFormat, SweepConfig,
};
use bandsel::info_theory::{relevance_curve, DEFAULT_BINS};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "bandsel",
    version,
    about = "Mutual-information band selection for hyperspectral cubes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-band MI with the ground truth, as CSV.
    Info(InfoArgs),
    /// Two-threshold selection; prints the bands, writes the full result.
    Select(SelectArgs),
    /// Bandwidth-rejection baseline on an MI curve.
    Baseline(BaselineArgs),
    /// Render a synthetic cube from a ground-truth map.
    Synth(SynthArgs),
    /// Selection and 1-NN accuracy over a grid of thresholds.
    Sweep(SweepArgs),
    /// 1-NN accuracy of one band subset.
    Classify(ClassifyArgs),
}

#[derive(Args)]
struct Inputs {
    /// Raw cube; its header is read from `<cube>.json`.
    #[arg(long)]
    cube: PathBuf,
    /// Ground-truth map (text grid, or raw single-band cube with sidecar).
    #[arg(long)]
    gt: PathBuf,
}

#[derive(Args)]
struct InfoArgs {
    #[command(flatten)]
    inputs: Inputs,
    #[arg(long, default_value_t = DEFAULT_BINS)]
    bins: usize,
    /// Also compute MI against a map estimated by averaging bands `A:B`.
    #[arg(long, value_name = "A:B")]
    estimated_gt: Option<String>,
    /// Label levels of the estimated map.
    #[arg(long, default_value_t = 17)]
    levels: u32,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SelectArgs {
    #[command(flatten)]
    inputs: Inputs,
    #[arg(long)]
    th_relevance: f64,
    #[arg(long)]
    th_redundancy: f64,
    #[arg(long, default_value_t = DEFAULT_BINS)]
    bins: usize,
    /// Where to write the selection document.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct BaselineArgs {
    #[arg(long, required_unless_present = "mi_curve", requires = "gt")]
    cube: Option<PathBuf>,
    #[arg(long)]
    gt: Option<PathBuf>,
    /// Precomputed curve in the `info` CSV layout.
    #[arg(long, conflicts_with_all = ["cube", "gt"])]
    mi_curve: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_BINS)]
    bins: usize,
    /// Neighborhood half-width.
    #[arg(long)]
    bandwidth: usize,
    /// Number of bands to pick.
    #[arg(long)]
    target: usize,
    /// Neighborhood rejection threshold on MI steps, in bits.
    #[arg(long)]
    d_threshold: f64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct SynthArgs {
    /// Ground-truth map to render; a synthetic one is generated when absent.
    #[arg(long)]
    gt: Option<PathBuf>,
    /// Where the generated map is written.
    #[arg(long, required_unless_present = "gt", conflicts_with = "gt")]
    gt_out: Option<PathBuf>,
    #[arg(long, default_value_t = 145)]
    lines: usize,
    #[arg(long, default_value_t = 145)]
    samples: usize,
    #[arg(long, default_value_t = 16)]
    classes: u32,
    /// Synthetic spec JSON; the built-in 19-band suite when absent.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Raw cube path; the sidecar goes to `<out>.json`.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value = "u16")]
    dtype: DTypeArg,
    #[arg(long, default_value = "bsq")]
    interleave: InterleaveArg,
    #[arg(long, default_value = "little")]
    byte_order: ByteOrderArg,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    inputs: Inputs,
    /// Relevance cutoffs: `a,b,c` or `start:step:end`.
    #[arg(long)]
    relevance: String,
    /// Redundancy cutoffs: `a,b,c` or `start:step:end`.
    #[arg(long)]
    redundancy: String,
    #[arg(long, default_value_t = DEFAULT_BINS)]
    bins: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Training share of the labeled pixels.
    #[arg(long, default_value_t = 0.5)]
    fraction: f64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    inputs: Inputs,
    /// Comma-separated band indices.
    #[arg(long, required_unless_present = "selection", conflicts_with = "selection")]
    bands: Option<String>,
    /// Selection document written by `select`.
    #[arg(long)]
    selection: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.5)]
    fraction: f64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "json")]
    format: Format,
    /// Training features as CSV, label last.
    #[arg(long)]
    export_train: Option<PathBuf>,
    /// Test features as CSV, label last.
    #[arg(long)]
    export_test: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => ReportFormat::Csv,
            Format::Json => ReportFormat::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DTypeArg {
    U16,
    F32,
}

#[derive(Clone, Copy, ValueEnum)]
enum InterleaveArg {
    Bsq,
    Bil,
    Bip,
}

#[derive(Clone, Copy, ValueEnum)]
enum ByteOrderArg {
    Little,
    Big,
}

/// A failure and the exit code it maps to.
enum Failure {
    Input(anyhow::Error),
    Internal(anyhow::Error),
}

type Outcome<T> = std::result::Result<T, Failure>;

trait Classify<T> {
    fn input(self) -> Outcome<T>;
    fn internal(self) -> Outcome<T>;
}

impl<T, E: Into<anyhow::Error>> Classify<T> for std::result::Result<T, E> {
    fn input(self) -> Outcome<T> {
        self.map_err(|e| Failure::Input(e.into()))
    }

    fn internal(self) -> Outcome<T> {
        self.map_err(|e| Failure::Internal(e.into()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Info(a) => info(a),
        Command::Select(a) => select(a),
        Command::Baseline(a) => baseline(a),
        Command::Synth(a) => synth(a),
        Command::Sweep(a) => run_sweep(a),
        Command::Classify(a) => classify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("internal error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn read_cube(path: &Path) -> Outcome<HsiCube> {
    let header = read_header(&sidecar_path(path)).input()?;
    load_cube(path, &header).input()
}

fn read_inputs(inputs: &Inputs) -> Outcome<(HsiCube, GroundTruthMap)> {
    let cube = read_cube(&inputs.cube)?;
    let gt = load_ground_truth(&inputs.gt).input()?;
    Ok((cube, gt))
}

fn emit(text: &str, out: Option<&Path>) -> Outcome<()> {
    match out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display()))
            .internal(),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .context("cannot write to standard output")
            .internal(),
    }
}

fn say(line: &str) -> Outcome<()> {
    writeln!(std::io::stdout(), "{line}")
        .context("cannot write to standard output")
        .internal()
}

fn band_range(text: &str) -> anyhow::Result<(usize, usize)> {
    let (a, b) = text
        .split_once(':')
        .ok_or_else(|| anyhow!("--estimated-gt expects A:B, got {text:?}"))?;
    let a: usize = a.trim().parse().with_context(|| format!("bad band index {a:?}"))?;
    let b: usize = b.trim().parse().with_context(|| format!("bad band index {b:?}"))?;
    Ok((a, b))
}

fn info(args: InfoArgs) -> Outcome<()> {
    let estimated = args.estimated_gt.as_deref().map(band_range).transpose().input()?;
    let (cube, gt) = read_inputs(&args.inputs)?;
    let curve = relevance_curve(&cube, &gt, args.bins).input()?;
    let dashed = match estimated {
        Some((a, b)) => {
            let reference = estimate_ground_truth(&cube, a..=b, args.levels).input()?;
            Some(relevance_curve(&cube, &reference, args.bins).input()?)
        }
        None => None,
    };
    let text = curve_csv(&curve, dashed.as_deref()).internal()?;
    emit(&text, args.out.as_deref())
}

fn join(bands: &[usize]) -> String {
    bands.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn select(args: SelectArgs) -> Outcome<()> {
    let th = Thresholds::new(args.th_relevance, args.th_redundancy).input()?;
    let (cube, gt) = read_inputs(&args.inputs)?;
    let result = select_bands(&cube, &gt, th, args.bins).input()?;
    say(&join(&result.selected))?;
    if let Some(out) = &args.out {
        let text = emit_report(Report::Selection(&result), args.format.into()).internal()?;
        emit(&text, Some(out))?;
    }
    Ok(())
}

fn read_curve(path: &Path) -> anyhow::Result<Vec<f64>> {
    let mut reader = csv::Reader::from_path(path).with_context(|| format!("cannot read {}", path.display()))?;
    let mut curve = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.with_context(|| format!("{}: malformed CSV", path.display()))?;
        let band: usize = record
            .get(0)
            .unwrap_or_default()
            .parse()
            .with_context(|| format!("{}: row {}: bad band index", path.display(), i + 1))?;
        if band != i {
            bail!("{}: row {}: expected band {i}, found {band}", path.display(), i + 1);
        }
        let mi: f64 = record
            .get(1)
            .unwrap_or_default()
            .parse()
            .with_context(|| format!("{}: row {}: bad MI value", path.display(), i + 1))?;
        curve.push(mi);
    }
    Ok(curve)
}

fn baseline(args: BaselineArgs) -> Outcome<()> {
    let curve = match (&args.mi_curve, &args.cube, &args.gt) {
        (Some(path), _, _) => read_curve(path).input()?,
        (None, Some(cube), Some(gt)) => {
            let inputs = Inputs {
                cube: cube.clone(),
                gt: gt.clone(),
            };
            let (cube, gt) = read_inputs(&inputs)?;
            relevance_curve(&cube, &gt, args.bins).input()?
        }
        _ => return Err(Failure::Input(anyhow!("give --mi-curve or both --cube and --gt"))),
    };
    let result = bandwidth_rejection(&curve, args.bandwidth, args.target, args.d_threshold).input()?;
    say(&join(&result.selected))?;
    if result.exhausted {
        eprintln!(
            "warning: candidate pool ran out after {} of {} bands",
            result.selected.len(),
            args.target
        );
    }
    if let Some(out) = &args.out {
        let text = emit_report(Report::Baseline(&result), args.format.into()).internal()?;
        emit(&text, Some(out))?;
    }
    Ok(())
}

fn synth(args: SynthArgs) -> Outcome<()> {
    let spec = match &args.spec {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))
                .input()?;
            serde_json::from_str::<SyntheticSpec>(&text)
                .with_context(|| format!("{}: invalid synthetic spec", path.display()))
                .input()?
        }
        None => SyntheticSpec::paper_like(),
    };
    let gt = match &args.gt {
        Some(path) => load_ground_truth(path).input()?,
        None => synthetic_ground_truth(args.lines, args.samples, args.classes, args.seed).input()?,
    };
    let cube = synthesize_bands(&gt, &spec, args.seed).input()?;
    let header = CubeHeader {
        bands: cube.bands(),
        lines: cube.lines(),
        samples: cube.samples(),
        dtype: match args.dtype {
            DTypeArg::U16 => DType::U16,
            DTypeArg::F32 => DType::F32,
        },
        interleave: match args.interleave {
            InterleaveArg::Bsq => Interleave::Bsq,
            InterleaveArg::Bil => Interleave::Bil,
            InterleaveArg::Bip => Interleave::Bip,
        },
        byte_order: match args.byte_order {
            ByteOrderArg::Little => ByteOrder::Little,
            ByteOrderArg::Big => ByteOrder::Big,
        },
    };
    write_cube(&cube, &args.out, &header).internal()?;
    if let Some(path) = &args.gt_out {
        write_ground_truth(&gt, path).internal()?;
    }
    Ok(())
}

/// `a,b,c` or inclusive `start:step:end`, each value rounded to 1e-6.
fn parse_axis(text: &str) -> anyhow::Result<Vec<f64>> {
    let round = |v: f64| (v * 1e6).round() / 1e6;
    let number = |s: &str| -> anyhow::Result<f64> {
        let v: f64 = s.trim().parse().with_context(|| format!("bad axis value {s:?}"))?;
        if !v.is_finite() {
            bail!("axis value {s:?} is not finite");
        }
        Ok(v)
    };
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [start, step, end] => {
            let (start, step, end) = (number(start)?, number(step)?, number(end)?);
            if step <= 0.0 || end < start {
                bail!("range {text:?} needs a positive step and start <= end");
            }
            let count = ((end - start) / step + 1e-9).floor() as usize + 1;
            Ok((0..count).map(|k| round(start + k as f64 * step)).collect())
        }
        [_] => text.split(',').map(|s| number(s).map(round)).collect(),
        _ => bail!("axis {text:?} is neither a comma list nor start:step:end"),
    }
}

fn run_sweep(args: SweepArgs) -> Outcome<()> {
    let config = SweepConfig {
        relevance_axis: parse_axis(&args.relevance).context("--relevance").input()?,
        redundancy_axis: parse_axis(&args.redundancy).context("--redundancy").input()?,
        bins: args.bins,
        split_seed: args.seed,
        fraction: args.fraction,
    };
    let (cube, gt) = read_inputs(&args.inputs)?;
    let grid = sweep(&cube, &gt, &config).input()?;
    let text = emit_report(Report::Sweep(&grid), args.format.into()).internal()?;
    emit(&text, args.out.as_deref())
}

fn parse_bands(text: &str) -> anyhow::Result<Vec<usize>> {
    text.split(',')
        .map(|s| s.trim().parse().with_context(|| format!("bad band index {s:?}")))
        .collect()
}

fn classify(args: ClassifyArgs) -> Outcome<()> {
    let (bands, thresholds) = match (&args.bands, &args.selection) {
        (Some(list), _) => (parse_bands(list).context("--bands").input()?, None),
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))
                .input()?;
            let selection = parse_selection_json(&text)
                .with_context(|| format!("{}", path.display()))
                .input()?;
            (selection.selected, Some(selection.thresholds))
        }
        (None, None) => return Err(Failure::Input(anyhow!("give --bands or --selection"))),
    };
    if bands.is_empty() {
        return Err(Failure::Input(anyhow!("no bands to classify")));
    }
    let (cube, gt) = read_inputs(&args.inputs)?;
    if let Some(&b) = bands.iter().find(|&&b| b >= cube.bands()) {
        return Err(Failure::Input(anyhow!(
            "band {b} is outside the {} bands of the cube",
            cube.bands()
        )));
    }
    let split = split_labeled_pixels(&gt, args.fraction, args.seed).input()?;
    let mut report = classify_bands(&cube, &gt, &split, &bands).input()?;
    report.thresholds = thresholds;

    for (path, pixels) in [(&args.export_train, &split.train), (&args.export_test, &split.test)] {
        if let Some(path) = path {
            let features = extract_features(&cube, &report.bands, pixels, &gt).input()?;
            emit(&export_features_csv(&features).internal()?, Some(path))?;
        }
    }

    say(&format!(
        "accuracy {:.2}% with {} bands ({}, seed {})",
        report.accuracy, report.n_bands, report.classifier, report.seed
    ))?;
    if let Some(out) = &args.out {
        let text = emit_report(Report::Accuracy(&report), args.format.into()).internal()?;
        emit(&text, Some(out))?;
    }
    Ok(())
}
