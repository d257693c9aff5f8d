//! Command-line front end: simulate synthetic scans, process volumes into
//! defect reports, and compute area metrics for external measurements.
//!
//! Exit codes: 0 success, 2 usage error, 3 data/format error, 4 degenerate
//! input.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fs;
use std::path::{Path, PathBuf};
use thzscan_core::{
    build_phantom, parse_simulation_config, process_volume, read_ground_truth_areas, read_tvol,
    report_csv, scan_phantom, write_defect_mask_pgm, write_ground_truth_csv, write_slice_csv,
    write_slice_pgm, write_tvol, CwtParams, DefectReport, Error, MethodResult, MethodTag,
    Polarity, ProcessOptions, Result, ScalePolicy, SegmentationParams, SimulationConfig,
    ThresholdPolicy, VolumeScan,
};

#[derive(Parser)]
#[command(
    name = "thzscan",
    version,
    about = "Synthetic FMCW reflection scanning with wavelet-enhanced defect measurement"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Simulate a raster scan of a configured sample and write the volume
    /// plus its ground truth.
    Simulate(SimulateArgs),
    /// Run the measurement pipeline over a volume and write slices and a
    /// combined report.
    Process(ProcessArgs),
    /// Compute area metrics for externally measured defect lists.
    Metrics(MetricsArgs),
}

#[derive(Args)]
struct SimulateArgs {
    /// Sample/run configuration file (key = value lines).
    #[arg(long)]
    spec: PathBuf,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
    /// Noise stream seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Gaussian noise level relative to the fringe intensity.
    #[arg(long = "noise-sigma", default_value_t = 0.0)]
    noise_sigma: f64,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("source").required(true).multiple(false))]
struct ProcessArgs {
    /// Input volume file (TVOL).
    #[arg(long, group = "source")]
    input: Option<PathBuf>,
    /// Simulate this configuration in memory instead of reading a volume.
    #[arg(long, group = "source")]
    spec: Option<PathBuf>,
    /// Ground-truth CSV with the reference areas. Defaults to
    /// `ground_truth.csv` next to --input.
    #[arg(long)]
    truth: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
    /// Methods to run.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "all")]
    wavelet: Vec<MethodArg>,
    /// Comma-separated scale grid override.
    #[arg(long)]
    scales: Option<String>,
    /// Scale policy for the enhancement.
    #[arg(long = "scale-policy", value_enum, default_value = "fixed")]
    scale_policy: PolicyArg,
    /// Fixed wavelet scale; without it the fixed policy matches the scale
    /// to the volume's mean profile.
    #[arg(long)]
    scale: Option<f64>,
    /// Fixed slice depth bin (skips the automatic interface search).
    #[arg(long = "z-index")]
    z_index: Option<usize>,
    /// Interface search window as `lo,hi` (half-open).
    #[arg(long = "z-window")]
    z_window: Option<String>,
    /// Threshold policy: `otsu` or a fixed value.
    #[arg(long, default_value = "otsu")]
    threshold: String,
    /// Segmentation polarity.
    #[arg(long, value_enum, default_value = "bright")]
    polarity: PolarityArg,
    /// Discard components smaller than this many pixels.
    #[arg(long = "min-component", default_value_t = 2)]
    min_component: usize,
    /// Noise stream seed (with --spec).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Gaussian noise level (with --spec).
    #[arg(long = "noise-sigma", default_value_t = 0.0)]
    noise_sigma: f64,
    /// Slice image formats to write.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "pgm,csv")]
    format: Vec<FormatArg>,
}

#[derive(Args)]
struct MetricsArgs {
    /// CSV of measured rows: `label,area1,...,areaN` per line.
    #[arg(long)]
    measured: PathBuf,
    /// CSV with the reference areas: one `label,area1,...,areaN` row.
    #[arg(long)]
    actual: PathBuf,
    /// Output report CSV path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Raw,
    Morlet,
    Gaussian,
    #[value(name = "mexican-hat")]
    MexicanHat,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolicyArg {
    Fixed,
    Max,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolarityArg {
    Bright,
    Dark,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Pgm,
    Csv,
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Simulate(args) => cmd_simulate(&args),
        Command::Process(args) => cmd_process(&args),
        Command::Metrics(args) => cmd_metrics(&args),
    };
    if let Err(e) = outcome {
        eprintln!("error: {e}");
        std::process::exit(exit_code(&e));
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Degenerate(_) => 4,
        _ => 3,
    }
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

fn load_config(path: &Path) -> Result<SimulationConfig> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Format(format!("cannot read spec {}: {e}", path.display())))?;
    parse_simulation_config(&text)
}

fn cmd_simulate(args: &SimulateArgs) -> Result<()> {
    // Everything is computed before any output exists, so a failing run
    // leaves no partial files behind.
    let config = load_config(&args.spec)?;
    let phantom = build_phantom(&config.phantom)?;
    let volume = scan_phantom(
        &phantom,
        &config.sweep,
        &config.demod,
        &config.interference,
        args.noise_sigma,
        args.seed,
    )?;

    fs::create_dir_all(&args.out)?;
    let volume_path = args.out.join("volume.tvol");
    write_tvol(&volume, &mut fs::File::create(&volume_path)?)?;
    let truth_path = args.out.join("ground_truth.csv");
    write_ground_truth_csv(&phantom.ground_truth, &mut fs::File::create(&truth_path)?)?;
    let mask_path = args.out.join("ground_truth_mask.pgm");
    write_defect_mask_pgm(&phantom.ground_truth, &mut fs::File::create(&mask_path)?)?;

    let (nx, ny, nz) = volume.dims();
    println!(
        "simulated {nx}x{ny}x{nz} volume ({} defects) -> {}",
        phantom.ground_truth.defect_count(),
        args.out.display()
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// process
// ---------------------------------------------------------------------------

fn expand_methods(args: &[MethodArg]) -> Vec<MethodTag> {
    let mut methods = Vec::new();
    let mut push = |tag: MethodTag| {
        if !methods.contains(&tag) {
            methods.push(tag);
        }
    };
    for arg in args {
        match arg {
            MethodArg::Raw => push(MethodTag::Raw),
            MethodArg::Morlet => push(MethodTag::Morlet),
            MethodArg::Gaussian => push(MethodTag::Gaussian),
            MethodArg::MexicanHat => push(MethodTag::MexicanHat),
            MethodArg::All => {
                for tag in MethodTag::all() {
                    push(tag);
                }
            }
        }
    }
    methods
}

fn parse_scales(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::Format(format!("bad scale `{s}`")))
        })
        .collect()
}

fn parse_z_window(text: &str) -> Result<(usize, usize)> {
    let (lo, hi) = text
        .split_once(',')
        .ok_or_else(|| Error::Format(format!("z-window must be `lo,hi`, got `{text}`")))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| Error::Format(format!("bad z-window bound `{s}`")))
    };
    Ok((parse(lo)?, parse(hi)?))
}

fn parse_threshold(text: &str) -> Result<ThresholdPolicy> {
    if text.eq_ignore_ascii_case("otsu") {
        return Ok(ThresholdPolicy::Otsu);
    }
    text.parse::<f64>()
        .map(ThresholdPolicy::Fixed)
        .map_err(|_| Error::Format(format!("threshold must be `otsu` or a number, got `{text}`")))
}

fn build_options(args: &ProcessArgs) -> Result<ProcessOptions> {
    let mut cwt_params = CwtParams::default();
    if let Some(scales) = &args.scales {
        cwt_params.scales = parse_scales(scales)?;
    }
    let scale_policy = match (args.scale_policy, args.scale) {
        (PolicyArg::Max, None) => ScalePolicy::MaxOverScales,
        (PolicyArg::Max, Some(_)) => {
            return Err(Error::Format(
                "--scale only applies to --scale-policy fixed".into(),
            ))
        }
        (PolicyArg::Fixed, Some(scale)) => ScalePolicy::FixedScale(scale),
        (PolicyArg::Fixed, None) => ScalePolicy::FixedScaleAuto,
    };
    Ok(ProcessOptions {
        methods: expand_methods(&args.wavelet),
        cwt_params,
        scale_policy,
        z_index: args.z_index,
        z_window: args.z_window.as_deref().map(parse_z_window).transpose()?,
        segmentation: SegmentationParams {
            threshold: parse_threshold(&args.threshold)?,
            polarity: match args.polarity {
                PolarityArg::Bright => Polarity::BrightDefects,
                PolarityArg::Dark => Polarity::DarkDefects,
            },
            min_component_px: args.min_component,
        },
    })
}

fn load_volume_and_truth(args: &ProcessArgs) -> Result<(VolumeScan, Vec<f64>)> {
    if let Some(input) = &args.input {
        let mut file = fs::File::open(input)
            .map_err(|e| Error::Format(format!("cannot open volume {}: {e}", input.display())))?;
        let volume = read_tvol(&mut file)?;
        let truth_path = args
            .truth
            .clone()
            .unwrap_or_else(|| input.with_file_name("ground_truth.csv"));
        let mut truth_file = fs::File::open(&truth_path).map_err(|e| {
            Error::Format(format!(
                "cannot open ground truth {}: {e}",
                truth_path.display()
            ))
        })?;
        let actual = read_ground_truth_areas(&mut truth_file)?;
        Ok((volume, actual))
    } else {
        let config = load_config(args.spec.as_ref().expect("clap group"))?;
        let phantom = build_phantom(&config.phantom)?;
        let volume = scan_phantom(
            &phantom,
            &config.sweep,
            &config.demod,
            &config.interference,
            args.noise_sigma,
            args.seed,
        )?;
        Ok((volume, phantom.ground_truth.per_defect_area_mm2_pi314))
    }
}

fn write_slices(result: &MethodResult, formats: &[FormatArg], out: &Path) -> Result<()> {
    let stem = format!("slice_{}", result.method.name());
    if formats.contains(&FormatArg::Pgm) {
        let path = out.join(format!("{stem}.pgm"));
        write_slice_pgm(&result.slice, &mut fs::File::create(path)?)?;
    }
    if formats.contains(&FormatArg::Csv) {
        let path = out.join(format!("{stem}.csv"));
        write_slice_csv(&result.slice, &mut fs::File::create(path)?)?;
    }
    Ok(())
}

fn cmd_process(args: &ProcessArgs) -> Result<()> {
    let options = build_options(args)?;
    let (volume, actual) = load_volume_and_truth(args)?;
    let results = process_volume(&volume, &actual, &options)?;

    fs::create_dir_all(&args.out)?;
    for result in &results {
        match result.scale_used {
            Some(scale) => eprintln!(
                "method {}: cwt scale={scale:.3} z={} components={} total={:.2} percent={:.2}",
                result.method.name(),
                result.z_index,
                result.label_map.component_count(),
                result.report.total_difference_mm2,
                result.report.percent_difference,
            ),
            None => eprintln!(
                "method {}: z={} components={} total={:.2} percent={:.2}",
                result.method.name(),
                result.z_index,
                result.label_map.component_count(),
                result.report.total_difference_mm2,
                result.report.percent_difference,
            ),
        }
        write_slices(result, &args.format, &args.out)?;
    }

    let reports: Vec<DefectReport> = results.iter().map(|r| r.report.clone()).collect();
    let report_path = args.out.join("report.csv");
    fs::write(&report_path, report_csv(&actual, &reports))?;
    println!("wrote {}", report_path.display());
    Ok(())
}

// ---------------------------------------------------------------------------
// metrics
// ---------------------------------------------------------------------------

fn parse_metric_rows(text: &str) -> Result<Vec<(MethodTag, Vec<f64>)>> {
    let mut rows = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split(',');
        let label = fields
            .next()
            .ok_or_else(|| Error::Format("empty metrics row".into()))?
            .trim();
        let tag = match label.to_ascii_lowercase().as_str() {
            "raw" | "raw data" => MethodTag::Raw,
            "morlet" => MethodTag::Morlet,
            "gaussian" => MethodTag::Gaussian,
            "mexican-hat" | "mexican_hat" | "mexican hat" => MethodTag::MexicanHat,
            "actual" | "actual size" => MethodTag::Raw, // reference rows reuse the raw tag
            other => {
                return Err(Error::Format(format!(
                    "unknown method label `{other}` (expected raw, morlet, gaussian, or mexican-hat)"
                )))
            }
        };
        let values = fields
            .map(|f| {
                f.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Format(format!("bad area value `{f}`")))
            })
            .collect::<Result<Vec<f64>>>()?;
        if values.is_empty() {
            return Err(Error::Format(format!("row `{label}` has no areas")));
        }
        rows.push((tag, values));
    }
    if rows.is_empty() {
        return Err(Error::Format("no metric rows found".into()));
    }
    Ok(rows)
}

fn cmd_metrics(args: &MetricsArgs) -> Result<()> {
    let measured_text = fs::read_to_string(&args.measured)
        .map_err(|e| Error::Format(format!("cannot read {}: {e}", args.measured.display())))?;
    let actual_text = fs::read_to_string(&args.actual)
        .map_err(|e| Error::Format(format!("cannot read {}: {e}", args.actual.display())))?;

    let measured_rows = parse_metric_rows(&measured_text)?;
    let actual_rows = parse_metric_rows(&actual_text)?;
    if actual_rows.len() != 1 {
        return Err(Error::Format(format!(
            "the actual file must hold exactly one row, found {}",
            actual_rows.len()
        )));
    }
    let actual = &actual_rows[0].1;

    let reports = measured_rows
        .iter()
        .map(|(tag, values)| thzscan_core::compute_metrics(values, actual, *tag))
        .collect::<Result<Vec<DefectReport>>>()?;

    if let Some(parent) = args.out.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    fs::write(&args.out, report_csv(actual, &reports))?;
    println!("wrote {}", args.out.display());
    Ok(())
}
