//! Command-line surface of the `polsar` binary.
//!
//! Every subcommand writes machine-readable output (JSON, or CSV for
//! `mc-error` without `--out`) to stdout and diagnostics to stderr. Exit
//! codes: 0 success, 2 usage or input error, 3 estimation failure,
//! 4 detection failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use crate::contour::{detect_boundary, DetectParams, EdgePlacement, RegionSpec, SeriesScale};
use crate::error::{Error, Result};
use crate::estimation::{estimate_omega_combined, Channel, CombineMethod, WindowParams};
use crate::evaluation::{curves_to_csv, run_error_study, twelve_situations, StudyParams};
use crate::raster::{read_raster, write_raster};
use crate::scene::{LabelMask, SceneSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ESTIMATION: i32 = 3;
pub const EXIT_DETECTION: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "polsar",
    version,
    about = "Harmonic polarimetric SAR simulation, fitting and boundary detection"
)]
pub struct Cli {
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Output path.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate a scene into a `.psr` raster plus a run-length label mask.
    Simulate(SimulateArgs),
    /// Fit roughness and covariance to a raster (or one labelled region).
    Fit(FitArgs),
    /// Detect region boundaries and fit closed B-splines.
    Segment(SegmentArgs),
    /// Monte Carlo edge-localization error study on two-texture phantoms.
    McError(McErrorArgs),
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Scene description (JSON).
    #[arg(long)]
    pub scene: PathBuf,
    /// Label-mask path (default: raster path with `.mask.json`).
    #[arg(long)]
    pub mask: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MethodArg {
    Mean,
    Epsilon,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    pub input: PathBuf,
    /// Label mask (as written by `simulate`) restricting the fit.
    #[arg(long, requires = "label")]
    pub mask: Option<PathBuf>,
    /// Label to fit within the mask.
    #[arg(long, requires = "mask")]
    pub label: Option<u32>,
    #[arg(long, value_enum, default_value = "mean")]
    pub method: MethodArg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ChannelArg {
    Hh,
    Hv,
    Vv,
    Combined,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PlacementArg {
    SmoothSide,
    WindowCentre,
}

#[derive(Debug, Args)]
pub struct SegmentArgs {
    pub input: PathBuf,
    /// Region spec JSON: one `{"manual":…}`/`{"auto":…}` object or an array.
    #[arg(long)]
    pub regions: PathBuf,
    #[arg(long, default_value_t = 3)]
    pub degree: usize,
    #[arg(long, default_value_t = 16)]
    pub rays: usize,
    #[arg(long, default_value_t = 1.8)]
    pub reach: f64,
    #[arg(long, default_value_t = 5)]
    pub mask_half: usize,
    #[arg(long, default_value_t = WindowParams::default().win_len)]
    pub win_len: usize,
    #[arg(long, default_value_t = WindowParams::default().half_width)]
    pub half_width: usize,
    #[arg(long, value_enum, default_value = "combined")]
    pub channel: ChannelArg,
    #[arg(long, value_enum, default_value = "smooth-side")]
    pub placement: PlacementArg,
    /// Detect on raw ω̂ instead of ln ω̂.
    #[arg(long)]
    pub linear: bool,
}

#[derive(Debug, Args)]
pub struct McErrorArgs {
    /// `all` or a comma-separated list of labels I–XII.
    #[arg(long, default_value = "all")]
    pub situations: String,
    #[arg(long, default_value_t = 200)]
    pub reps: usize,
    #[arg(long, default_value_t = 1)]
    pub looks: u32,
}

/// Parse `args` (including the program name) and run. Returns the exit code.
pub fn run_with<I, T>(
    args: I,
    stdout: &mut (dyn Write + Send),
    stderr: &mut (dyn Write + Send),
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "polsar: {e}");
            exit_code(&e)
        }
    }
}

/// Exit code for an error that aborted a subcommand.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Estimation(_) | Error::Domain(_) | Error::Singular(_) | Error::Support(_) => {
            EXIT_ESTIMATION
        }
        Error::Detection(_) => EXIT_DETECTION,
        Error::Parameter(_) | Error::Format { .. } | Error::Io(_) | Error::Json(_) => EXIT_USAGE,
    }
}

fn execute(
    cli: &Cli,
    stdout: &mut (dyn Write + Send),
    stderr: &mut (dyn Write + Send),
) -> Result<i32> {
    let mut run = || -> Result<i32> {
        match &cli.command {
            Command::Simulate(a) => simulate(cli, a, stdout),
            Command::Fit(a) => fit(a, stdout),
            Command::Segment(a) => segment(a, stdout, stderr),
            Command::McError(a) => mc_error(cli, a, stdout, stderr),
        }
    };
    match cli.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Parameter(format!("cannot start {n} threads: {e}")))?
            .install(run),
        None => run(),
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

fn emit(stdout: &mut (dyn Write + Send), value: &serde_json::Value) -> Result<()> {
    serde_json::to_writer_pretty(&mut *stdout, value)?;
    writeln!(stdout)?;
    Ok(())
}

fn simulate(cli: &Cli, a: &SimulateArgs, stdout: &mut (dyn Write + Send)) -> Result<i32> {
    let out = cli
        .out
        .clone()
        .ok_or_else(|| Error::Parameter("simulate needs --out <raster.psr>".into()))?;
    let spec = SceneSpec::from_json(&std::fs::read_to_string(&a.scene)?)?;
    let (img, mask) = spec.simulate(cli.seed)?;
    let mask_path = a
        .mask
        .clone()
        .unwrap_or_else(|| out.with_extension("mask.json"));
    write_raster(&img, &out)?;
    std::fs::write(&mask_path, serde_json::to_vec(&mask)?)?;
    emit(
        stdout,
        &json!({
            "raster": out,
            "mask": mask_path,
            "width": img.width(),
            "height": img.height(),
            "looks": img.looks(),
            "seed": cli.seed,
        }),
    )?;
    Ok(EXIT_OK)
}

fn fit(a: &FitArgs, stdout: &mut (dyn Write + Send)) -> Result<i32> {
    let img = read_raster(&a.input)?;
    let pixels = match (&a.mask, a.label) {
        (Some(path), Some(label)) => {
            let mask: LabelMask = read_json(path)?;
            if (mask.width, mask.height) != (img.width(), img.height()) {
                return Err(Error::Parameter("mask and raster dimensions differ".into()));
            }
            img.pixels()
                .iter()
                .zip(mask.labels())
                .filter(|(_, l)| *l == label)
                .map(|(p, _)| *p)
                .collect()
        }
        _ => img.pixels().to_vec(),
    };
    let method = match a.method {
        MethodArg::Mean => CombineMethod::MeanOfChannels,
        MethodArg::Epsilon => CombineMethod::EpsilonMinimization,
    };
    let fit = estimate_omega_combined(&pixels, img.looks(), method)?;
    emit(stdout, &fit.to_json())?;
    Ok(EXIT_OK)
}

fn detect_params(a: &SegmentArgs) -> DetectParams {
    DetectParams {
        degree: a.degree,
        n_rays: a.rays,
        reach: a.reach,
        mask_half: a.mask_half,
        window: WindowParams {
            half_width: a.half_width,
            win_len: a.win_len,
            stride: 1,
        },
        channel: match a.channel {
            ChannelArg::Hh => Channel::HH,
            ChannelArg::Hv => Channel::HV,
            ChannelArg::Vv => Channel::VV,
            ChannelArg::Combined => Channel::Combined,
        },
        scale: if a.linear {
            SeriesScale::Linear
        } else {
            SeriesScale::Log
        },
        placement: match a.placement {
            PlacementArg::SmoothSide => EdgePlacement::SmoothSide,
            PlacementArg::WindowCentre => EdgePlacement::WindowCentre,
        },
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RegionInput {
    One(RegionSpec),
    Many(Vec<RegionSpec>),
}

fn segment(
    a: &SegmentArgs,
    stdout: &mut (dyn Write + Send),
    stderr: &mut (dyn Write + Send),
) -> Result<i32> {
    let specs = match read_json::<RegionInput>(&a.regions)? {
        RegionInput::One(s) => vec![s],
        RegionInput::Many(v) => v,
    };
    for s in &specs {
        s.validate()?;
    }
    let img = read_raster(&a.input)?;
    let params = detect_params(a);
    let mut results = Vec::new();
    let mut failed = false;
    for (i, spec) in specs.iter().enumerate() {
        match detect_boundary(&img, spec, &params) {
            Ok(contours) => results.extend(contours.iter().map(|c| {
                let mut v = c.to_json();
                v["spec"] = json!(i);
                v
            })),
            Err(e @ Error::Detection(_)) => {
                failed = true;
                let _ = writeln!(stderr, "polsar: region spec {i}: {e}");
                results.push(json!({"spec": i, "error": e.to_string()}));
            }
            Err(e) => return Err(e),
        }
    }
    emit(stdout, &serde_json::Value::Array(results))?;
    Ok(if failed { EXIT_DETECTION } else { EXIT_OK })
}

fn mc_error(
    cli: &Cli,
    a: &McErrorArgs,
    stdout: &mut (dyn Write + Send),
    stderr: &mut (dyn Write + Send),
) -> Result<i32> {
    let all = twelve_situations();
    let chosen: Vec<_> = if a.situations.trim().eq_ignore_ascii_case("all") {
        all
    } else {
        a.situations
            .split(',')
            .map(|label| {
                let label = label.trim();
                all.iter()
                    .find(|s| s.label.eq_ignore_ascii_case(label))
                    .cloned()
                    .ok_or_else(|| {
                        Error::Parameter(format!(
                            "unknown situation {label:?}; expected I–XII or all"
                        ))
                    })
            })
            .collect::<Result<_>>()?
    };
    if a.reps == 0 {
        return Err(Error::Parameter("--reps must be positive".into()));
    }
    let params = StudyParams {
        replications: a.reps,
        looks: a.looks,
        ..StudyParams::default()
    };
    let started = Instant::now();
    let results = chosen
        .iter()
        .map(|s| run_error_study(s, &params, cli.seed))
        .collect::<Result<Vec<_>>>()?;
    let runtime = started.elapsed().as_secs_f64();
    let csv = curves_to_csv(&results);
    let f5: serde_json::Map<String, serde_json::Value> = results
        .iter()
        .map(|r| {
            let row: serde_json::Map<_, _> = r
                .curves
                .iter()
                .map(|c| (c.channel.as_str().to_string(), json!(c.at(5))))
                .collect();
            (r.situation.label.clone(), serde_json::Value::Object(row))
        })
        .collect();
    let _ = writeln!(
        stderr,
        "polsar: {} situation(s) × {} reps in {runtime:.2} s",
        results.len(),
        a.reps
    );
    match &cli.out {
        Some(path) => {
            std::fs::write(path, &csv)?;
            let meta = json!({
                "csv": path,
                "seed": cli.seed,
                "situations": results.iter().map(|r| &r.situation).collect::<Vec<_>>(),
                "params": params,
                "f5": f5,
                "runtime_seconds": runtime,
            });
            let meta_path = path.with_extension("json");
            std::fs::write(&meta_path, serde_json::to_vec_pretty(&meta)?)?;
            emit(stdout, &meta)?;
        }
        None => stdout.write_all(csv.as_bytes())?,
    }
    Ok(EXIT_OK)
}
