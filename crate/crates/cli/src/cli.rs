use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use pcnn::model::{ParamName, Variant};

pub const DEFAULTS_HELP: &str = "\
Defaults:
  intensities        input samples map to v/maxval, clamped to [0.001, 1] (epsilon = 0.001)
  alpha_f            ln(1/sigma) of the input image when not given (natural log);
                     falls back to 0.1 on a uniform image
  alpha_l            alpha_f * --alpha-l-ratio (0.5) when not given
  alpha_e            0.02, or C / mean intensity with --auto-alpha-e (C = 10, an arbitrary pick)
  tau                2 (denoise: fire-time deviation that marks an impulse)
  boundary           kernels reflect at the image border
  precedence         explicit flags > --preset > command defaults

Exit codes: 0 ok, 2 bad flags or parameters, 3 parse or I/O error, 4 numeric error.
Set PCNN_THREADS to cap worker threads (0 or unset = all cores).";

#[derive(Parser, Debug)]
#[command(name = "pcnn", version, about = "Pulse-coupled neural network image tools", after_help = DEFAULTS_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Simulate and write every binary pulse frame plus signature.csv.
    #[command(after_help = DEFAULTS_HELP)]
    Run(RunArgs),
    /// Two-class segmentation chosen by minimum cross-entropy.
    #[command(after_help = DEFAULTS_HELP)]
    Segment(SegmentArgs),
    /// Edge map from differences in neighboring fire times.
    #[command(after_help = DEFAULTS_HELP)]
    Edges(RunArgs),
    /// Impulse-noise removal guided by fire times.
    #[command(after_help = DEFAULTS_HELP)]
    Denoise(DenoiseArgs),
    /// Write only the per-iteration fired counts.
    #[command(after_help = DEFAULTS_HELP)]
    Signature(RunArgs),
    /// Run one configuration per evenly spaced parameter value.
    #[command(after_help = DEFAULTS_HELP)]
    Sweep(SweepArgs),
    /// Print the catalog of recommended parameter settings.
    #[command(after_help = DEFAULTS_HELP)]
    Presets(PresetArgs),
}

#[derive(Args, Debug, Clone)]
pub struct IoArgs {
    /// Input image (binary PGM, P5, 8-bit).
    #[arg(long)]
    pub input: PathBuf,
    /// Output directory; created if absent, must be empty.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug, Clone, Default)]
pub struct ParamArgs {
    /// Start from a catalog entry (see `pcnn presets`).
    #[arg(long)]
    pub preset: Option<String>,
    /// Number of iterations [default: 240].
    #[arg(long)]
    pub iters: Option<usize>,
    /// Feeding decay rate [default: ln(1/sigma) of the input].
    #[arg(long)]
    pub alpha_f: Option<f64>,
    /// Linking decay rate [default: alpha_f * alpha-l-ratio].
    #[arg(long)]
    pub alpha_l: Option<f64>,
    /// Ratio alpha_l / alpha_f used when --alpha-l is absent.
    #[arg(long, default_value_t = 0.5)]
    pub alpha_l_ratio: f64,
    /// Threshold decay rate [default: 0.02].
    #[arg(long)]
    pub alpha_e: Option<f64>,
    /// Derive alpha_e as C / mean intensity.
    #[arg(long)]
    pub auto_alpha_e: bool,
    /// Constant C for --auto-alpha-e.
    #[arg(long, default_value_t = 10.0)]
    pub c: f64,
    /// Linking strength [default: 0.4 for segment, 0.1 otherwise].
    #[arg(long)]
    pub beta: Option<f64>,
    /// Threshold amplitude [default: 20].
    #[arg(long)]
    pub ve: Option<f64>,
    /// Linking amplitude [default: 1].
    #[arg(long)]
    pub vl: Option<f64>,
    /// Feeding amplitude, full model only [default: 0.5].
    #[arg(long)]
    pub vf: Option<f64>,
    /// Kernel radius [default: 1].
    #[arg(long)]
    pub radius: Option<usize>,
    /// Seed for the randomized baseline (k-means reseeding).
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e: pcnn::Error| e.to_string())
}

fn parse_param(s: &str) -> Result<ParamName, String> {
    s.parse().map_err(|e: pcnn::Error| e.to_string())
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    #[command(flatten)]
    pub io: IoArgs,
    /// Update rule: full, simplified, sf-fed or srg.
    #[arg(long, default_value = "full", value_parser = parse_variant)]
    pub variant: Variant,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Args, Debug, Clone)]
pub struct SegmentArgs {
    #[command(flatten)]
    pub io: IoArgs,
    /// Update rule: full, simplified, sf-fed or srg.
    #[arg(long, default_value = "simplified", value_parser = parse_variant)]
    pub variant: Variant,
    /// Ground-truth mask PGM (nonzero = foreground); prints error rates.
    #[arg(long)]
    pub truth: Option<PathBuf>,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Args, Debug, Clone)]
pub struct DenoiseArgs {
    #[command(flatten)]
    pub io: IoArgs,
    /// Fire-time deviation above which a pixel is treated as an impulse.
    #[arg(long, default_value_t = pcnn::apps::DEFAULT_TAU)]
    pub tau: usize,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Args, Debug, Clone)]
pub struct SweepArgs {
    #[command(flatten)]
    pub io: IoArgs,
    /// Update rule: full, simplified, sf-fed or srg.
    #[arg(long, default_value = "full", value_parser = parse_variant)]
    pub variant: Variant,
    /// Parameter to vary (alpha_f, alpha_l, alpha_e, vf, vl, ve, beta, radius, iters).
    #[arg(long, value_parser = parse_param)]
    pub param: ParamName,
    #[arg(long, allow_negative_numbers = true)]
    pub from: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub to: f64,
    /// Number of values, at least 2.
    #[arg(long)]
    pub steps: usize,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Args, Debug, Clone)]
pub struct PresetArgs {
    /// Show one entry and its resolved parameters.
    #[arg(long)]
    pub name: Option<String>,
}
