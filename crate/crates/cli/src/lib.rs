//! Command-line front end for `recipdim`.
//!
//! Every subcommand produces an [`Outcome`]: an exit code, a versioned JSON
//! report and a short text rendering. The binary only prints them.

pub mod commands;
pub mod corpus;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use report::{Outcome, Report};

/// Exit codes.
pub mod exit {
    pub const EXACT: i32 = 0;
    pub const CORPUS_MISMATCH: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const UNSUPPORTED: i32 = 3;
    pub const INTERNAL: i32 = 4;
    pub const NOT_EXACT: i32 = 10;
}

#[derive(Debug, Parser)]
#[command(name = "recipdim", version, about = "Krull dimension of reciprocal complements, with certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Coefficient field: Q, GF(p), Q(t) or GF(p)(t).
    #[arg(long, default_value = "Q")]
    pub field: String,
    /// Take irreducibility of the input on trust when no proof is found.
    #[arg(long)]
    pub assume_irreducible: bool,
    /// Write the JSON report here ("-" for stdout).
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Record wall-clock time in the report.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimension of R(K[X,Y,Z]/(f)).
    AnalyzeSurface {
        /// Surface equation in X, Y, Z.
        #[arg(long)]
        poly: String,
        #[command(flatten)]
        common: Common,
    },
    /// Dimension for a plane curve f(X,Y) or a space curve f = g = 0.
    AnalyzeCurve {
        /// One polynomial in X, Y, or two in X, Y, Z.
        #[arg(long, required = true, num_args = 1)]
        poly: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Points at infinity and their regularity.
    PointsAtInfinity {
        #[arg(long, required = true, num_args = 1)]
        poly: Vec<String>,
        /// Comma-separated variable names; inferred from the input otherwise.
        #[arg(long)]
        vars: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// The transform by a witness function and its points at infinity.
    Transform {
        /// Surface equation in X, Y, Z; omit for the plane.
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        witness: String,
        #[command(flatten)]
        common: Common,
    },
    /// Classify an irreducible quadric surface.
    ClassifyQuadric {
        /// Quadric in X, Y, Z.
        #[arg(long)]
        poly: String,
        #[command(flatten)]
        common: Common,
    },
    /// Localization of R(K[X,Y]) at the prime attached to f.
    PlaneLocalization {
        /// Plane curve equation in X, Y.
        #[arg(long, required_unless_present = "witness_degree", conflicts_with = "witness_degree")]
        poly: Option<String>,
        /// Emit the non-integral-closure certificate for X^d + Y^(d-1) + 1.
        #[arg(long)]
        witness_degree: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Run the golden corpus.
    Corpus {
        /// Directory of `<name>.args` / `<name>.expected` pairs.
        #[arg(long)]
        dir: Option<PathBuf>,
        /// Rewrite the expectations instead of comparing.
        #[arg(long)]
        bless: bool,
    },
}

/// Parse arguments (including the program name) and run.
pub fn run_args<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => commands::run(&cli.command),
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => exit::EXACT,
                _ => exit::PARSE,
            };
            Outcome::message(code, e.to_string())
        }
    }
}
