use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::{info, warn};
use rayon::prelude::*;
use serde::Serialize;

use duskify::evaluate::{evaluate_image, summarize, SkippedInput};
use duskify::optimize::{PerturbBounds, SaConfig, Weights};
use duskify::palette::{BackgroundSpec, DEFAULT_BG_TOLERANCE};
use duskify::pipeline::{transform_with_progress, TransformOptions, DEFAULT_K, TRACE_STRIDE};
use duskify::{compose_preview, extract_palette, invert_image, mask_background, Error, PixelImage, RenderMode, Rgb8};

mod io;

#[derive(Parser, Debug)]
#[command(name = "duskify", version, about = "Adapt light-mode chart bitmaps to dark mode")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Optimize a dark palette and write the recolored image.
    Transform(TransformArgs),
    /// Subtract every channel from 255.
    Invert {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Print the extracted palette, pixel counts and adjacency as JSON.
    Extract(ExtractArgs),
    /// Compare light, inverse and dark conditions over an image or a directory.
    Evaluate(EvaluateArgs),
}

fn parse_hex(s: &str) -> Result<Rgb8, String> {
    s.parse::<Rgb8>().map_err(|e| e.to_string())
}

#[derive(Args, Debug, Clone)]
struct BackgroundArgs {
    /// Background color of the light-mode input.
    #[arg(long, value_parser = parse_hex, default_value = "#FFFFFF")]
    light_bg: Rgb8,
    /// ΔE2000 radius around the light background treated as background.
    #[arg(long, default_value_t = DEFAULT_BG_TOLERANCE)]
    tolerance: f64,
    /// Number of palette colors to extract.
    #[arg(short = 'k', default_value_t = DEFAULT_K)]
    k: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args, Debug, Clone)]
struct OptimizeArgs {
    #[command(flatten)]
    background: BackgroundArgs,
    /// Target dark background (#121212 is a common softer alternative).
    #[arg(long, value_parser = parse_hex, default_value = "#000000")]
    dark_bg: Rgb8,
    /// Luminance contrast consistency weight.
    #[arg(long, default_value_t = 1.0)]
    w_lc: f64,
    /// Color consistency weight: ~0.5 for continuous colormaps, 1.0-1.5 for categorical data.
    #[arg(long, default_value_t = 1.0)]
    w_cc: f64,
    /// Adjacent color difference weight.
    #[arg(long, default_value_t = 1.0)]
    w_ac: f64,
    #[arg(long, default_value_t = 20_000)]
    iterations: usize,
    #[arg(long, default_value_t = 10_000.0)]
    t0: f64,
    #[arg(long, default_value_t = 0.99)]
    alpha: f64,
    #[arg(long, value_parser = parse_mode, default_value = "quantize")]
    mode: RenderMode,
}

fn parse_mode(s: &str) -> Result<RenderMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl OptimizeArgs {
    fn options(&self) -> TransformOptions {
        let bg = &self.background;
        TransformOptions {
            background: BackgroundSpec::new(bg.light_bg, self.dark_bg).with_tolerance(bg.tolerance),
            k: bg.k,
            weights: Weights::new(self.w_lc, self.w_cc, self.w_ac),
            annealing: SaConfig {
                t0: self.t0,
                alpha: self.alpha,
                iterations: self.iterations,
                seed: bg.seed,
                bounds: PerturbBounds::default(),
                ..SaConfig::default()
            },
            mode: self.mode,
        }
    }
}

#[derive(Args, Debug)]
struct TransformArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
    #[command(flatten)]
    optimize: OptimizeArgs,
    /// Write a JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Write a light|dark side-by-side PNG here.
    #[arg(long)]
    preview: Option<PathBuf>,
    /// Log the annealing energy every 1,000 iterations.
    #[arg(long)]
    progress: bool,
}

#[derive(Args, Debug)]
struct ExtractArgs {
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    background: BackgroundArgs,
}

#[derive(Args, Debug)]
struct EvaluateArgs {
    /// An image or a directory of images.
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    optimize: OptimizeArgs,
    /// Report path; standard output when omitted.
    #[arg(long)]
    report: Option<PathBuf>,
}

/// Failure classes mapped onto process exit codes.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(String),
    Processing(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Io(_) => 2,
            Failure::Processing(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Io(m) | Failure::Processing(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidHex(_) | Error::InvalidK | Error::InvalidConfig(_) => Failure::Usage(e.to_string()),
            _ => Failure::Processing(e.to_string()),
        }
    }
}

impl From<io::IoError> for Failure {
    fn from(e: io::IoError) -> Self {
        Failure::Io(format!("{e:#}"))
    }
}

fn write_json<T: Serialize>(value: &T, path: Option<&Path>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("serializable") + "\n";
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Io(format!("writing {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_transform(args: &TransformArgs) -> Result<(), Failure> {
    let options = args.optimize.options();
    options.validate()?;
    let image = io::load(&args.input, options.background.light_bg)?;
    let result = transform_with_progress(&image, &options, if args.progress { TRACE_STRIDE } else { 0 }, |p| {
        info!(
            "iteration {:>6}  T={:.4e}  current={:.4}  best={:.4}",
            p.iteration, p.temperature, p.current_energy, p.best_energy
        )
    })?;
    if result.palette.was_clamped() {
        warn!(
            "only {} distinct foreground colors; k clamped from {}",
            result.palette.k(),
            result.palette.requested_k
        );
    }
    io::save_png(&args.output, &result.image)?;
    if let Some(path) = &args.preview {
        io::save_png(path, &compose_preview(&image, &result.image))?;
    }
    if let Some(path) = &args.report {
        write_json(&result.report(&options), Some(path))?;
    }
    info!(
        "energy {:.4} -> {:.4}; wrote {}",
        result.outcome.initial_energy,
        result.outcome.best.energy,
        args.output.display()
    );
    Ok(())
}

fn run_invert(input: &Path, output: &Path) -> Result<(), Failure> {
    let image = io::load(input, Rgb8::WHITE)?;
    io::save_png(output, &invert_image(&image))?;
    Ok(())
}

#[derive(Serialize)]
struct PaletteEntry {
    index: usize,
    hex: Rgb8,
    count: u64,
}

#[derive(Serialize)]
struct PaletteListing {
    requested_k: usize,
    k: usize,
    foreground_pixels: u64,
    colors: Vec<PaletteEntry>,
    adjacency: Vec<[usize; 2]>,
}

fn run_extract(args: &ExtractArgs) -> Result<(), Failure> {
    let bg_args = &args.background;
    let bg = BackgroundSpec::new(bg_args.light_bg, Rgb8::BLACK).with_tolerance(bg_args.tolerance);
    bg.validate()?;
    if bg_args.k == 0 {
        return Err(Error::InvalidK.into());
    }
    let image = io::load(&args.input, bg.light_bg)?;
    let mask = mask_background(&image, &bg)?;
    let palette = extract_palette(&image, &mask, bg_args.k, bg_args.seed)?;
    if palette.was_clamped() {
        warn!(
            "only {} distinct foreground colors; k clamped from {}",
            palette.k(),
            palette.requested_k
        );
    }
    let listing = PaletteListing {
        requested_k: palette.requested_k,
        k: palette.k(),
        foreground_pixels: palette.foreground_pixels(),
        colors: palette
            .centroids
            .iter()
            .zip(&palette.counts)
            .enumerate()
            .map(|(index, (&hex, &count))| PaletteEntry { index, hex, count })
            .collect(),
        adjacency: palette.adjacency.iter().map(|&(i, j)| [i, j]).collect(),
    };
    write_json(&listing, None)
}

fn run_evaluate(args: &EvaluateArgs) -> Result<(), Failure> {
    let options = args.optimize.options();
    options.validate()?;
    let files = io::list_images(&args.input)?;
    let outcomes: Vec<(String, Result<_, String>)> = files
        .par_iter()
        .map(|path| {
            let name = path
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_else(|| path.display().to_string());
            let evaluated = io::load(path, options.background.light_bg)
                .map_err(|e| format!("{e:#}"))
                .and_then(|img: PixelImage| evaluate_image(&name, &img, &options).map_err(|e| e.to_string()));
            (name, evaluated)
        })
        .collect();

    let mut per_image = Vec::new();
    let mut skipped = Vec::new();
    for (name, outcome) in outcomes {
        match outcome {
            Ok(eval) => per_image.push(eval),
            Err(reason) => {
                warn!("skipping {name}: {reason}");
                skipped.push(SkippedInput { name, reason });
            }
        }
    }
    let report = summarize(per_image, skipped)?;
    write_json(&report, args.report.as_deref())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let verbose = matches!(&cli.command, Command::Transform(t) if t.progress);
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(if verbose { "info" } else { "warn" }))
        .format_timestamp(None)
        .init();

    let result = match &cli.command {
        Command::Transform(args) => run_transform(args),
        Command::Invert { input, output } => run_invert(input, output),
        Command::Extract(args) => run_extract(args),
        Command::Evaluate(args) => run_evaluate(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
