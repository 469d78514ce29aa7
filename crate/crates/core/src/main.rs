use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use log::{info, warn};

use mosaic_enhance::image::{load_image, save_image};
use mosaic_enhance::metrics::{BlockGrid, DEFAULT_EPSILON};
use mosaic_enhance::mosaic::{MosaicKind, MosaicModel};
use mosaic_enhance::pipeline::{AlphaSetting, Method, PreparedRun, RunConfig, SweepRange};
use mosaic_enhance::report::RunRecord;
use mosaic_enhance::spectral::{center_shift, dft2, spectrum_image, AlphaMode};
use mosaic_enhance::{ColorModel, Error};

#[derive(Parser, Debug)]
#[command(author, version, about = "Color image enhancement through grayscale mosaics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enhance one image and optionally write a JSON report
    Enhance(EnhanceArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModelArg {
    #[value(name = "2x2")]
    TwoByTwo,
    #[value(name = "2x3")]
    TwoByThree,
    Row,
    Col,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Alpha,
    Histeq,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Raw,
    Dcnorm,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SpaceArg {
    Rgb,
    Xyz,
    Cmy,
    Yuv,
}

#[derive(clap::Args, Debug)]
struct EnhanceArgs {
    /// Input raster (PNG, TIFF, JPEG or BMP)
    input: PathBuf,

    /// Output raster; format follows the extension
    #[arg(short, long)]
    output: PathBuf,

    #[arg(long, value_enum, default_value = "2x2")]
    model: ModelArg,

    /// Leave the luminance plane out of row/col mosaics
    #[arg(long)]
    no_luminance: bool,

    #[arg(long, value_enum, default_value = "alpha")]
    method: MethodArg,

    /// Fixed alpha for alpha-rooting
    #[arg(long, conflicts_with = "sweep")]
    alpha: Option<f64>,

    /// Alpha grid LO:HI:STEP; the CEME-maximizing alpha is kept [default: 0.8:1.0:0.01]
    #[arg(long)]
    sweep: Option<String>,

    #[arg(long, value_enum, default_value = "dcnorm")]
    alpha_mode: ModeArg,

    #[arg(long, value_enum, default_value = "rgb")]
    colorspace: SpaceArg,

    /// EME/CEME block size L1xL2
    #[arg(long, default_value = "8x8")]
    block: String,

    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,

    /// Write the mosaic (or the Y plane for yuv) as a grayscale raster
    #[arg(long)]
    dump_mosaic: Option<PathBuf>,

    /// Write the log-magnitude spectrum of the mosaic
    #[arg(long)]
    dump_spectrum: Option<PathBuf>,

    /// Same, with DC moved to the center
    #[arg(long)]
    dump_spectrum_centered: Option<PathBuf>,

    /// Write the JSON run record here
    #[arg(long)]
    report: Option<PathBuf>,
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Decode { .. } | Error::Encode { .. } | Error::Io { .. } => 2,
        Error::Shape(_) => 3,
        Error::ColorModel { .. } | Error::UnsupportedConversion { .. } | Error::InvalidParameter(_) => 1,
    }
}

fn parse_sweep(s: &str) -> Result<SweepRange, Error> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, step] = parts.as_slice() else {
        return Err(Error::InvalidParameter(format!("sweep must be LO:HI:STEP, got {s:?}")));
    };
    let num = |v: &str| {
        v.trim()
            .parse::<f64>()
            .map_err(|_| Error::InvalidParameter(format!("bad number {v:?} in sweep {s:?}")))
    };
    SweepRange::new(num(lo)?, num(hi)?, num(step)?)
}

fn parse_block(s: &str) -> Result<BlockGrid, Error> {
    let bad = || Error::InvalidParameter(format!("block must be L1xL2, got {s:?}"));
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    let l1 = a.trim().parse().map_err(|_| bad())?;
    let l2 = b.trim().parse().map_err(|_| bad())?;
    BlockGrid::new(l1, l2)
}

fn config(args: &EnhanceArgs) -> Result<RunConfig, Error> {
    let kind = match args.model {
        ModelArg::TwoByTwo => MosaicKind::TwoByTwo,
        ModelArg::TwoByThree => MosaicKind::TwoByThree,
        ModelArg::Row => MosaicKind::Row,
        ModelArg::Col => MosaicKind::Column,
    };
    if args.no_luminance && matches!(kind, MosaicKind::TwoByTwo | MosaicKind::TwoByThree) {
        warn!("--no-luminance only affects row and col mosaics");
    }
    let method = match args.method {
        MethodArg::Alpha => Method::AlphaRooting,
        MethodArg::Histeq => Method::HistEq,
    };
    if method == Method::HistEq && (args.alpha.is_some() || args.sweep.is_some()) {
        warn!("alpha settings are ignored for histogram equalization");
    }
    let alpha = match (args.alpha, &args.sweep) {
        (Some(a), _) => AlphaSetting::Fixed(a),
        (None, Some(s)) => AlphaSetting::Sweep(parse_sweep(s)?),
        (None, None) => AlphaSetting::Sweep(SweepRange::default()),
    };
    let cfg = RunConfig {
        mosaic_model: MosaicModel::new(kind, !args.no_luminance),
        method,
        color_model: match args.colorspace {
            SpaceArg::Rgb => ColorModel::Rgb,
            SpaceArg::Xyz => ColorModel::Xyz,
            SpaceArg::Cmy => ColorModel::Cmy,
            SpaceArg::Yuv => ColorModel::Yuv,
        },
        alpha,
        alpha_mode: match args.alpha_mode {
            ModeArg::Raw => AlphaMode::Raw,
            ModeArg::Dcnorm => AlphaMode::DcNormalized,
        },
        block: parse_block(&args.block)?,
        epsilon: args.epsilon,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn enhance(args: &EnhanceArgs) -> Result<(), Error> {
    let cfg = config(args)?;
    let started = Instant::now();

    let img = load_image(&args.input)?;
    info!("loaded {} ({}x{})", args.input.display(), img.height(), img.width());
    let prepared = PreparedRun::new(&img, &cfg)?;

    if let Some(path) = &args.dump_mosaic {
        save_image(prepared.plane(), path)?;
    }
    if args.dump_spectrum.is_some() || args.dump_spectrum_centered.is_some() {
        let spectrum = prepared.spectrum().cloned().unwrap_or_else(|| dft2(prepared.plane()));
        if let Some(path) = &args.dump_spectrum {
            save_image(&spectrum_image(&spectrum), path)?;
        }
        if let Some(path) = &args.dump_spectrum_centered {
            save_image(&spectrum_image(&center_shift(&spectrum)), path)?;
        }
    }

    let (image, report) = match (cfg.method, cfg.alpha) {
        (Method::AlphaRooting, AlphaSetting::Sweep(range)) => {
            let out = prepared.sweep(range)?;
            info!("best alpha {} of {} candidates", out.best_alpha, out.curve.len());
            (out.image, out.report)
        }
        (Method::AlphaRooting, AlphaSetting::Fixed(a)) => {
            let eval = prepared.evaluate(Some(a))?;
            (eval.image, eval.report)
        }
        (Method::HistEq, _) => {
            let eval = prepared.evaluate(None)?;
            (eval.image, eval.report)
        }
    };
    save_image(&image, &args.output)?;

    let elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
    let record = RunRecord::new(&args.input, &args.output, &report, elapsed_ms);
    match &args.report {
        Some(path) => record.write(path)?,
        None => println!("{}", record.to_json()),
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match &cli.command {
        Command::Enhance(args) => enhance(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
