//! Command-line front end. Exit codes: 0 pass, 1 semantic failure,
//! 2 I/O or parse failure.

pub mod commands;
pub mod format;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::generators::DEFAULT_CAP;
use format::CliError;

/// Environment variable overriding the default size cap.
pub const CAP_ENV: &str = "INFALG_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "infalg", version, about = "Finite information algebras and their duals")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: OutputFormat,
    /// Size cap for closures and generators.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the axioms of an algebra file.
    Verify {
        path: PathBuf,
        /// Skip the closure check.
        #[arg(long)]
        lenient: bool,
    },
    /// Close the extractors under composition.
    Close {
        path: PathBuf,
        #[arg(long)]
        with_identity: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Emit the dual Q-space of a distributive algebra.
    Dualize {
        path: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Emit the algebra of up-sets of a Q-space.
    Reconstruct {
        path: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run both duality round trips from an algebra or a Q-space file.
    Roundtrip { path: PathBuf },
    /// List the atoms.
    Atoms { path: PathBuf },
    /// Classify as atomic, atomistic or completely atomistic.
    Classify { path: PathBuf },
    /// Generate an example algebra.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Check a homomorphism given by a map file.
    CheckHom { a: PathBuf, b: PathBuf, map: PathBuf },
    /// Count small objects up to isomorphism.
    Enumerate {
        max_n: usize,
        #[arg(long, value_enum, default_value = "algebras")]
        what: EnumerateKind,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// Strings of length at most N over K letters.
    String { k: usize, n: usize },
    /// Subsets of a product of domains.
    Multivariate {
        #[arg(required = true)]
        domains: Vec<usize>,
    },
    /// Lattice-valued functions on a product of domains; LATTICE is
    /// `chain:N` or `boolean:K`.
    LatticeValued {
        lattice: String,
        #[arg(required = true)]
        domains: Vec<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnumerateKind {
    Posets,
    Lattices,
    Algebras,
    Qspaces,
}

/// The size cap: `--cap`, then `INFALG_CAP`, then the default.
pub fn resolve_cap(flag: Option<usize>) -> Result<usize, CliError> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var(CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Parse(format!("{CAP_ENV} is not a number: {v}"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

/// Parses arguments, runs the command and returns the exit code.
pub fn run<I: IntoIterator<Item = OsString>>(args: I) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, O, E>(args: I, out: &mut O, err: &mut E) -> i32
where
    I: IntoIterator<Item = OsString>,
    O: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match commands::execute(&cli) {
        Ok(outcome) => {
            let _ = out.write_all(outcome.stdout.as_bytes());
            if !outcome.stderr.is_empty() {
                let _ = err.write_all(outcome.stderr.as_bytes());
            }
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
