use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Parser)]
#[command(name = "pythaproof", version, about = "Verify, audit and numerically sweep the trigonometric proof catalog")]
pub struct Cli {
    /// Directory of `.trig` files. Overrides `TRIG_PROOFS_DIR`; without
    /// either, the catalog compiled into the binary is used.
    #[arg(long, global = true, value_name = "DIR")]
    pub proofs_dir: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Check scripts symbolically.
    Verify {
        /// Lemma id, or `all`.
        #[arg(long, default_value = "all")]
        proof: String,
    },
    /// Check that forbidden lemmas are not ancestors of targets.
    Audit {
        /// Defaults to the four Pythagoras proofs.
        #[arg(long)]
        target: Vec<String>,
        #[arg(long, default_value = "pythagorean_identity")]
        forbidden: String,
    },
    /// Sweep figure postconditions at seeded random parameters.
    Sample {
        #[command(flatten)]
        sweep: SweepArgs,
        /// Restrict to one figure, e.g. `fig8`.
        #[arg(long)]
        figure: Option<String>,
    },
    /// Full report: verification, audits, sweeps, cross-layer checks and coverage.
    Report {
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// List the lemmas of the catalog.
    List,
    /// Construct one figure and dump its points and quantities.
    Figure {
        id: String,
        /// Parameter assignment such as `theta=0.4`.
        #[arg(long = "param", value_name = "NAME=VALUE")]
        params: Vec<String>,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("samples must be at least 1")]
    NoSamples,
    #[error("tol must be a positive finite number, got {0}")]
    BadTolerance(f64),
    #[error("malformed parameter `{0}`, expected NAME=VALUE")]
    BadParam(String),
}

impl SweepArgs {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.samples == 0 {
            return Err(ConfigError::NoSamples);
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(ConfigError::BadTolerance(self.tol));
        }
        Ok(())
    }
}
