use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use contact_core::Error;

mod commands;
mod output;

#[derive(Debug, Parser)]
#[command(name = "contact", version, about = "Exact degrees of contact, multiplicities and threshold certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// TOML input file
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,

    /// Largest graded degree sampled
    #[arg(long, global = true, default_value_t = 5)]
    pub m_max: usize,

    /// Coordinate bound for parameter enumeration
    #[arg(long, global = true, default_value_t = 4)]
    pub height_bound: u64,

    /// Entry bound for candidate weight vectors
    #[arg(long, global = true, default_value_t = 1)]
    pub weight_bound: u64,

    /// Write JSON here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads (defaults to the rayon default)
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Filtration profile and asymptotic invariants of a weighted flag
    Contact,
    /// Chow semistability test for one weight vector
    Semistable,
    /// Search small weight vectors for a destabilizing one
    Destabilize,
    /// Colength and multiplicity of an ideal or Rees ideal of a chain
    Multiplicity,
    /// Evaluate a threshold certificate
    Certify {
        /// One of FW-general, local-point, local-chain, local-chain-normalized,
        /// steiner, ruled, bundle-unstable, blowup, cone, elliptic
        theorem: String,
    },
    /// Height of a point and, when places are given, whether it solves the system
    Heights,
    /// Enumerate parameter points whose images solve the system
    Search,
}

pub enum Outcome {
    Ok,
    CertificateFailed,
    NotStabilized,
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::NotStabilized(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match cli.jobs {
        Some(0) => {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    };
    let pool = match pool {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let result = pool.install(|| commands::run(&cli));
    match result {
        Ok((doc, outcome)) => {
            if let Err(e) = output::emit(&doc, cli.out.as_deref()) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            match outcome {
                Outcome::Ok => ExitCode::SUCCESS,
                Outcome::CertificateFailed => ExitCode::from(1),
                Outcome::NotStabilized => ExitCode::from(3),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
