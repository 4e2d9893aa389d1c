//! `novikov`: batch front end for the vanishing-locus engine.
//!
//! Exit status: 0 success, 1 usage or I/O error, 2 parse error,
//! 3 validation error, 4 resource limit exceeded.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use novikov_core::document::{execute_command, parse_document, Command, CommandOptions};
use novikov_core::VanishingOptions;

const EXIT_USAGE: u8 = 1;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    /// Print the vanishing locus as a sorted list of cones.
    Vanish,
    /// Compare cone membership with the pointwise test at query points.
    Check,
    /// Print the Betti numbers over the fraction field.
    Betti,
    /// Print the Euler characteristic.
    Euler,
    /// Decide vanishing on the cone where every meridian is positive.
    Positive,
    /// Print the chain complex of a presentation as a document.
    Fox,
    /// Print the chain complex of a mapping torus as a document.
    Torus,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Vanish => Command::Vanish,
            Cmd::Check => Command::Check,
            Cmd::Betti => Command::Betti,
            Cmd::Euler => Command::Euler,
            Cmd::Positive => Command::Positive,
            Cmd::Fox => Command::Fox,
            Cmd::Torus => Command::Torus,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "novikov",
    version,
    about = "Exact Novikov-homology vanishing loci of chain complexes over Laurent polynomial rings"
)]
struct Cli {
    #[arg(value_enum)]
    command: Cmd,
    /// Problem document (JSON; see docs/FORMAT.md).
    #[arg(long)]
    input: PathBuf,
    /// Query point for `check`, e.g. "1/2,-3"; overrides the document's query points.
    #[arg(long, allow_hyphen_values = true)]
    xi: Option<String>,
    /// Maximum number of tau-chains before giving up with a resource error.
    #[arg(long, default_value_t = novikov_core::complexes::DEFAULT_TAU_CAP)]
    tau_cap: u128,
    /// Worker threads; 0 uses every available core. Output does not depend on it.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let text = match std::fs::read_to_string(&cli.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", cli.input.display());
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let jobs = if cli.jobs == 0 { std::thread::available_parallelism().map_or(1, |n| n.get()) } else { cli.jobs };
    let options = CommandOptions { vanishing: VanishingOptions { tau_cap: cli.tau_cap, jobs }, xi: cli.xi };
    let result = parse_document(&text).and_then(|doc| execute_command(cli.command.into(), &doc, &options));
    match result {
        Ok(report) => {
            print!("{report}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}: {e}", cli.input.display());
            ExitCode::from(e.kind.exit_code() as u8)
        }
    }
}
