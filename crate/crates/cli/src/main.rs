//! `eohk`: command-line front end for the signature calculus.
//!
//! Results go to stdout as one line of JSON, diagnostics to stderr.
//! Exit codes: 0 success, 2 input or format error, 3 hard verdict,
//! 4 internal invariant failure.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "eohk", version, about = "Exact signature calculus for weighted Eulerian-orientation counting")]
pub struct Cli {
    /// Print scalars as 12-digit decimals instead of exact ring elements.
    #[arg(long, global = true)]
    pub float: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Affine evaluator, then product-type evaluator, then brute force.
    Auto,
    Brute,
    Affine,
    Product,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Value of a closed grid, times its optional scale.
    Eval {
        grid: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        mode: Mode,
    },
    /// Tractability verdict for a signature set (exit 3 when hard).
    Classify { sigset: PathBuf },
    /// Verdict for a single arity-4 EO signature with ARS (exit 3 when hard).
    Classify4 { signature: PathBuf },
    /// Unique prime factorization.
    Factor {
        signature: PathBuf,
        /// Rescale factors so each has arrow reversal symmetry.
        #[arg(long)]
        ars: bool,
        /// Add membership and Δ-property diagnostics.
        #[arg(long)]
        diagnose: bool,
    },
    /// Join variables `i` and `j` through a binary disequality.
    Merge { signature: PathBuf, i: usize, j: usize },
    /// Mate two copies of a signature on all variables but `i` and `j`.
    Mate { signature: PathBuf, i: usize, j: usize },
    /// Fix variable `i` to bit `b`.
    Pin { signature: PathBuf, i: usize, b: u8 },
    /// Apply the Z basis change to every variable.
    TransformZ {
        signature: PathBuf,
        #[arg(long)]
        inverse: bool,
        /// Multiply as a row vector (`f Z^{⊗n}`) instead of a column vector.
        #[arg(long)]
        row: bool,
    },
    /// Embed `g` as the EO signature on `(x, x̄)`.
    Tilde { signature: PathBuf },
    /// Encode a CSP instance as an EO grid.
    Csp2eo { csp: PathBuf },
    /// Decode an EO grid of tilde signatures as a CSP instance.
    Eo2csp { grid: PathBuf },
    /// Bipartite Holant grid for a CSP over norm squares of the base signatures.
    ReduceSquare { csp: PathBuf, base: PathBuf },
    /// Bipartite Holant grid for a CSP with pairwise opposite supports.
    ReduceOpposite { csp: PathBuf },
    /// Opposite pairing of a signature's support.
    Pairing { signature: PathBuf },
    /// Check every property of the arity-8 merging-form signature.
    VerifyF8 {
        #[arg(long)]
        json: bool,
    },
    /// Run the property suites at reduced sizes.
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Use the full acceptance sizes.
        #[arg(long)]
        full: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(outcome) => {
            if let Some(text) = outcome.stdout {
                println!("{text}");
            }
            for line in outcome.notes {
                eprintln!("{line}");
            }
            ExitCode::from(outcome.code)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
