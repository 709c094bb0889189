//! Command-line front end for `twistlab`.
//!
//! Every command returns an [`Outcome`] so the binary stays a thin wrapper and
//! tests can drive commands in-process.

pub mod commands;
pub mod fixtures;
pub mod schema;

use clap::{Parser, Subcommand};
use thiserror::Error;

pub use commands::{run, Outcome};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_FAILED: u8 = 2;
pub const EXIT_CONTRADICTION: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
    #[error("no file or fixture named `{0}`")]
    UnknownFixture(String),
    #[error("expected {expected} input, got {found}")]
    WrongKind { expected: &'static str, found: &'static str },
    #[error("bad character `{0}`: give comma-separated bits such as 0,1,0,0")]
    BadCharacter(String),
    #[error(transparent)]
    Schema(#[from] schema::SchemaError),
    #[error(transparent)]
    Presentation(#[from] twistlab::presentation::PresentationError),
    #[error(transparent)]
    Curves(#[from] twistlab::curves::CurveError),
    #[error(transparent)]
    Fibration(#[from] twistlab::fibration::FibrationError),
    #[error(transparent)]
    Meta(#[from] twistlab::metaplectic::MetaError),
}

const AFTER_HELP: &str = "\
Inputs are paths to JSON files or names of bundled fixtures (see `twistlab fixtures`).
Exit codes: 0 pass, 1 input error, 2 verification failure, 3 certificate contradiction.";

const METAPLECTIC_HELP: &str = "\
Evaluates a word in the twists t_a, t_b of the once-holed torus in the metaplectic group.

Syntax: letters `a` and `b`, integer powers `x^k`, grouping `(a b)^6`, and conjugation
`[w] x [w]^-1` where both brackets hold the same word. Whitespace is optional.
Examples: `(a b)^6`, `a^3 b^-1`, `[a b] a [a b]^-1`.";

#[derive(Debug, Parser)]
#[command(name = "twistlab", version, about = "Dehn twist factorizations and Lefschetz fibration invariants", after_help = AFTER_HELP)]
pub struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a factorization homologically, or a presentation against its expected abelianization.
    Verify { input: String },
    /// Invariants of the total space of a factorization.
    Invariants {
        input: String,
        /// Signature supplied from outside, used where it cannot be computed.
        #[arg(long, allow_hyphen_values = true)]
        signature: Option<i64>,
    },
    /// Build and check a geometric presentation for relators on a closed surface group.
    Geompres {
        input: String,
        /// Add a handle carrying non-separating curves.
        #[arg(long)]
        extra_handle: bool,
    },
    #[command(long_about = METAPLECTIC_HELP)]
    /// Evaluate a torus twist word in the metaplectic group.
    Metaplectic { word: String },
    /// Double cover of a closed surface group and lifts of loops.
    Cover {
        #[arg(long)]
        genus: usize,
        /// Character on a1, b1, ..., ag, bg as comma-separated bits.
        #[arg(long)]
        chi: String,
        /// Loop to lift, as whitespace-separated tokens such as `a1 b1^-1`.
        #[arg(long = "loop")]
        loops: Vec<String>,
    },
    /// Abelianization of a presentation, or of the fundamental group of a factorization.
    Abelianize { input: String },
    /// List bundled fixtures, or print one.
    Fixtures { name: Option<String> },
}
