mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hypertoric::Error;

#[derive(Parser, Debug)]
#[command(name = "hv", version, about = "Hyperplane arrangement workbench: circuits, regions, core flow and cohomology ring presentations")]
pub struct Cli {
    /// Emit a machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RingArgs {
    /// td, h (ordinary), tds1, s1, os2, z2os or lawrence.
    #[arg(long)]
    pub which: String,
    /// q or f2; defaults to q, except f2 for os2 and z2os.
    #[arg(long)]
    pub field: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check simplicity and smoothness.
    Validate { file: PathBuf },
    /// List circuits and, with --split, their splittings and relations.
    Circuits {
        file: PathBuf,
        #[arg(long)]
        split: bool,
    },
    /// List feasible regions.
    Regions {
        file: PathBuf,
        /// Only bounded regions.
        #[arg(long)]
        bounded: bool,
        /// Also list vertices.
        #[arg(long)]
        vertices: bool,
    },
    /// Core components of bounded regions and their fixed components.
    Core { file: PathBuf },
    /// Fixed components of the circle action.
    Fixed { file: PathBuf },
    /// Print a ring presentation.
    Ring {
        file: PathBuf,
        #[command(flatten)]
        ring: RingArgs,
        /// native, cas or json.
        #[arg(long, default_value = "native")]
        format: String,
    },
    /// Hilbert series of a presentation.
    Hilbert {
        file: PathBuf,
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, default_value_t = 8)]
        maxdeg: usize,
    },
    /// Annihilator of an element.
    Ann {
        file: PathBuf,
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        element: String,
    },
    /// Annihilator profiles of every nonzero degree-1 class (F2 only).
    ScanAnn {
        file: PathBuf,
        #[command(flatten)]
        ring: RingArgs,
    },
    /// Check that a substitution induces an isomorphism.
    Iso {
        file_a: PathBuf,
        file_b: PathBuf,
        #[command(flatten)]
        ring: RingArgs,
        /// Comma-separated `var->linear form`; unmentioned variables are fixed.
        #[arg(long)]
        map: String,
    },
    /// Reverse the coorientation of one hyperplane (1-based).
    Flip {
        file: PathBuf,
        #[arg(long)]
        index: usize,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Translate the arrangement by a vector.
    Translate {
        file: PathBuf,
        /// Comma-separated rationals, e.g. "5,-7" or "1/2,0".
        #[arg(long, allow_hyphen_values = true)]
        by: String,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Compare fingerprints of two rings (field defaults to f2, where the class scan runs).
    Distinguish {
        file_a: PathBuf,
        file_b: PathBuf,
        #[command(flatten)]
        ring: RingArgs,
    },
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Input(_) | Error::Parse { .. } => 1,
            Error::NonSimple { .. } => 2,
            Error::Resource(_) => 3,
            Error::Contract(_) => 4,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("HV_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::usage(format!("HV_THREADS must be a positive integer, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure {
            code: 4,
            message: e.to_string(),
        })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = configure_threads().and_then(|()| commands::run(&cli));
    match outcome {
        Ok(out) => {
            print!("{}", out.stdout);
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("hv: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
