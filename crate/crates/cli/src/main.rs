//! `actdim`: command-line front end writing one JSON report per invocation.

mod commands;
mod input;

use std::io::{self, Write};
use std::panic;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot parse {path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Complex(#[from] actdim_core::scomplex::ComplexError),
    #[error(transparent)]
    Polyjoin(#[from] actdim_core::polyjoin::PolyjoinError),
    #[error(transparent)]
    Vk(#[from] actdim_core::vk::VkError),
    #[error(transparent)]
    Arrangement(#[from] actdim_core::arrangement::ArrangementError),
    #[error(transparent)]
    Coxeter(#[from] actdim_core::coxart::CoxeterError),
}

#[derive(Parser)]
#[command(name = "actdim", version, about = "Combinatorial invariants and action-dimension bounds")]
pub struct Cli {
    /// Print only the result payload.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// Input file, positionally or as `--complex`.
#[derive(Args, Clone, Debug)]
pub struct InputFile {
    #[arg(value_name = "FILE")]
    pub file: Option<PathBuf>,
    #[arg(long = "complex", value_name = "FILE")]
    pub complex: Option<PathBuf>,
}

#[derive(Subcommand)]
pub enum Command {
    /// Simplicial complexes.
    #[command(subcommand)]
    Complex(ComplexCmd),
    /// Polyhedral joins of spheres.
    #[command(subcommand)]
    Octa(OctaCmd),
    /// Van Kampen obstructions.
    #[command(subcommand)]
    Vk(VkCmd),
    /// Hyperplane arrangements.
    #[command(subcommand)]
    Arr(ArrCmd),
    /// Coxeter systems and Artin groups.
    #[command(subcommand)]
    Cox(CoxCmd),
    /// Graph products.
    #[command(subcommand)]
    Gp(GpCmd),
}

#[derive(Subcommand)]
pub enum ComplexCmd {
    /// Betti numbers and integral homology.
    Homology(InputFile),
    /// Homological EDCE criterion.
    Edce(InputFile),
    /// Flag test and clique completion.
    Flag(InputFile),
    /// Barycentric subdivision.
    Subdivide(InputFile),
}

#[derive(Subcommand)]
pub enum OctaCmd {
    /// `O_m L`, written as a complex file with an `octahedralization` section.
    Build {
        #[command(flatten)]
        input: InputFile,
        #[arg(long)]
        m: usize,
    },
    /// The doubled complex for a cycle and one of its simplices.
    Doubled {
        #[command(flatten)]
        input: InputFile,
        #[arg(long)]
        m: usize,
        /// Cycle support as `a,b;b,c;...` (default: first top cycle).
        #[arg(long)]
        cycle: Option<String>,
        /// Simplex of the cycle as `a,b` (default: first simplex).
        #[arg(long)]
        simplex: Option<String>,
    },
}

#[derive(Subcommand)]
pub enum VkCmd {
    /// The van Kampen cocycle for an ordering.
    Compute {
        #[command(flatten)]
        input: InputFile,
        #[arg(long)]
        degree: usize,
        /// JSON list of vertex names.
        #[arg(long)]
        ordering: Option<PathBuf>,
    },
    /// Decides whether the van Kampen class vanishes.
    Nontrivial {
        #[command(flatten)]
        input: InputFile,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        ordering: Option<PathBuf>,
    },
    /// The Ω cycle of `O_m L` and its pairing with the cocycle.
    Omega {
        #[command(flatten)]
        input: InputFile,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        cycle: Option<String>,
        #[arg(long)]
        simplex: Option<String>,
    },
    /// The intersection condition on a cycle and simplex.
    Star {
        #[command(flatten)]
        input: InputFile,
        #[arg(long)]
        cycle: Option<String>,
        #[arg(long)]
        simplex: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum BuildingChoice {
    Irreducibles,
    All,
}

#[derive(Subcommand)]
pub enum ArrCmd {
    /// Intersection poset.
    Poset(InputFile),
    /// Rank, essential, central.
    Props(InputFile),
    /// Irreducibles and the irreducible decomposition.
    Irr(InputFile),
    /// Nested-set complex of a building set.
    Nested {
        #[command(flatten)]
        input: InputFile,
        #[arg(long, value_enum, default_value = "irreducibles")]
        building: BuildingChoice,
        /// Flag-complete the result.
        #[arg(long)]
        flag: bool,
    },
    /// Möbius function, Poincaré polynomial, β.
    Poincare(InputFile),
    /// A complete chain of irreducibles.
    Chain(InputFile),
    /// `H_1` images of the central elements of a simplex.
    H1 {
        #[command(flatten)]
        input: InputFile,
        /// Flats as hyperplane-name lists, `A,B,C;A`.
        #[arg(long)]
        simplex: String,
    },
    /// Action-dimension report.
    Actdim {
        #[command(flatten)]
        input: InputFile,
        #[arg(long)]
        aspherical: bool,
    },
}

#[derive(Subcommand)]
pub enum CoxCmd {
    Nerve(InputFile),
    Lodot(InputFile),
    Actdim {
        #[command(flatten)]
        input: InputFile,
        #[arg(long = "assume-kpi1")]
        assume_kpi1: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum EdceMode {
    Yes,
    No,
    Auto,
}

#[derive(Subcommand)]
pub enum GpCmd {
    Actdim {
        #[command(flatten)]
        input: InputFile,
        #[arg(long, value_enum, default_value = "auto")]
        edce: EdceMode,
    },
}

const EXIT_INTERNAL: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_USAGE: u8 = 64;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match panic::catch_unwind(|| commands::run(&cli)) {
        Ok(Ok(text)) => {
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(io::stdout().lock(), "{text}");
            ExitCode::SUCCESS
        }
        Ok(Err(CliError::Usage(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INVALID)
        }
        Err(_) => {
            eprintln!("error: internal assertion failed");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}
