use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::DEFAULT_SEED;

#[derive(Debug, Parser)]
#[command(name = "compcode", version, about = "Computation codes over the BPSK coherent-state multiple access channel")]
#[command(after_help = concat!(
    "Settings are taken from command-line flags first, then from the --config file ",
    "(flat key=value lines, keys named like the flags without dashes), then defaults."
))]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rate curves over a photon-number grid, as CSV.
    Rates(Flags),
    /// Photon numbers where each COMP rate overtakes simultaneous decoding.
    Thresholds(Flags),
    /// Monte-Carlo block error rate of the COMP code.
    SimulateComp(Flags),
    /// Two-server symmetric private information retrieval.
    Spir(Flags),
    /// Two-way relaying: compute-and-forward against decode-and-forward.
    Relay(Flags),
    /// Butterfly network with COMP hops.
    Butterfly(Flags),
}

/// Every flag is optional so that config-file values can fill the gaps.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// First grid point |alpha|^2 [default: 0.01]
    #[arg(long)]
    pub alpha2_start: Option<f64>,
    /// Last grid point |alpha|^2 [default: 6]
    #[arg(long)]
    pub alpha2_stop: Option<f64>,
    /// Number of grid points [default: 200]
    #[arg(long)]
    pub alpha2_count: Option<usize>,
    /// Log-spaced grid (`--log-grid false` for linear) [default: true]
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub log_grid: Option<bool>,
    /// Mean photon number |alpha|^2 for single-point commands [default: 1.5, relay: 1]
    #[arg(long)]
    pub alpha2: Option<f64>,
    /// collective, onoff or homodyne [default: onoff, relay: collective]
    #[arg(long)]
    pub detection: Option<String>,
    /// Sum delivery for spir and butterfly: noiseless or comp [default: noiseless]
    #[arg(long)]
    pub transport: Option<String>,
    /// Block length in channel uses [default: 64, or 2 * message length]
    #[arg(long)]
    pub n: Option<usize>,
    /// Message length in bits [default: n / 2]
    #[arg(long)]
    pub ell: Option<usize>,
    /// Monte-Carlo trials or protocol runs [default: 1000, spir: 8192]
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long, help = format!("Random seed [default: {DEFAULT_SEED}]"))]
    pub seed: Option<u64>,
    /// Number of files K [default: 3]
    #[arg(long)]
    pub k_files: Option<usize>,
    /// Requested file index, 1-based [default: 1]
    #[arg(long)]
    pub theta: Option<usize>,
    /// File length in bits [default: 8]
    #[arg(long)]
    pub file_len: Option<usize>,
    /// Output file [default: standard output]
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Flat key=value settings file
    #[arg(long)]
    pub config: Option<PathBuf>,
}
