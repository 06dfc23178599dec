use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "alwc",
    version,
    about = "Almost-lossless weak coding on countable alphabets: two-stage codec, \
             rate-distortion curves, and minimax-redundancy bounds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Encode a symbol file into a coded-block container
    Encode(EncodeArgs),
    /// Decode a container back into (quantized) symbols
    Decode(DecodeArgs),
    /// Rate-distortion curve of a source on a distortion grid
    Rd(RdArgs),
    /// Monte Carlo rate/distortion/redundancy trials of the two-stage codec
    Experiment(ExperimentArgs),
    /// Minimax-redundancy bounds and regime classification for an envelope
    Radius(RadiusArgs),
    /// Entropy estimation from universal code lengths on doubling blocks
    #[command(name = "entropy-est")]
    EntropyEst(EntropyEstArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CoderArg {
    /// Fixed model from known source statistics
    Static,
    /// Adaptive Krichevsky-Trofimov model (universal)
    Kt,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    /// Newline-separated decimal positive integers
    Text,
    /// Little-endian 32-bit unsigned symbols
    Bin32,
}

#[derive(Args)]
pub struct EncodeArgs {
    /// Input symbol file
    #[arg(long)]
    pub input: String,
    /// Output container file
    #[arg(long)]
    pub out: String,
    /// Truncation size of the tail quantizer (k >= 2)
    #[arg(long)]
    pub k: u32,
    /// Second-stage model
    #[arg(long, value_enum, default_value = "kt")]
    pub coder: CoderArg,
    /// Source spec (required for the static coder), e.g. geometric:p=0.5
    #[arg(long)]
    pub source: Option<String>,
    /// Symbol file format
    #[arg(long, value_enum, default_value = "text")]
    pub format: FormatArg,
    /// Block length: longer inputs split into independent blocks
    #[arg(long, default_value_t = 65536)]
    pub n: u32,
}

#[derive(Args)]
pub struct DecodeArgs {
    /// Input container file
    #[arg(long)]
    pub input: String,
    /// Output symbol file
    #[arg(long)]
    pub out: String,
    /// Source spec (required to decode static-coded blocks)
    #[arg(long)]
    pub source: Option<String>,
    /// Symbol file format
    #[arg(long, value_enum, default_value = "text")]
    pub format: FormatArg,
}

#[derive(Args)]
pub struct RdArgs {
    /// Source spec, e.g. geometric:p=0.5 or zeta:alpha=2.0
    #[arg(long)]
    pub source: String,
    /// Comma-separated distortion grid, e.g. 0.1,0.01,0.001
    #[arg(long)]
    pub d_grid: String,
    /// Output CSV path
    #[arg(long)]
    pub out: String,
}

#[derive(Args)]
pub struct ExperimentArgs {
    /// Source spec
    #[arg(long)]
    pub source: String,
    /// Comma-separated ascending block lengths, e.g. 256,1024,4096
    #[arg(long)]
    pub n_grid: String,
    /// Truncation schedule exponent: k_n = max(2, ceil(n^tau))
    #[arg(long)]
    pub tau: Option<f64>,
    /// Fixed truncation size (alternative to --tau)
    #[arg(long)]
    pub k: Option<u32>,
    /// Trials per block length
    #[arg(long, default_value_t = 10)]
    pub trials: u32,
    /// Base seed; trial t at block length n runs on mix(seed, n, t)
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Second-stage model
    #[arg(long, value_enum, default_value = "kt")]
    pub coder: CoderArg,
    /// Worker threads (output is identical for any worker count)
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Output CSV path
    #[arg(long)]
    pub out: String,
}

#[derive(Args)]
pub struct RadiusArgs {
    /// Envelope spec, e.g. envelope-geom:c=1.0,r=0.5
    #[arg(long)]
    pub envelope: String,
    /// Comma-separated ascending block lengths
    #[arg(long)]
    pub n_grid: String,
    /// Truncation schedule: tau:<f>, u-star, sqrt-u-star,
    /// u-star-plus:<int>, or fixed:<int>
    #[arg(long)]
    pub k_schedule: String,
    /// Output CSV path
    #[arg(long)]
    pub out: String,
}

#[derive(Args)]
pub struct EntropyEstArgs {
    /// Source spec for a synthetic stream (alternative to --input)
    #[arg(long)]
    pub source: Option<String>,
    /// Symbol file to estimate from (alternative to --source)
    #[arg(long)]
    pub input: Option<String>,
    /// Symbol file format (with --input)
    #[arg(long, value_enum, default_value = "text")]
    pub format: FormatArg,
    /// Truncation schedule exponent
    #[arg(long)]
    pub tau: f64,
    /// First block length; blocks double up to --n-max
    #[arg(long, default_value_t = 256)]
    pub n_start: usize,
    /// Largest block length
    #[arg(long)]
    pub n_max: usize,
    /// Seed for the synthetic stream
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output CSV path
    #[arg(long)]
    pub out: String,
}
