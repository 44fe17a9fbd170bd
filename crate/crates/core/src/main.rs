use std::fs;
use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use stochstab::cli::{self, AnalyzeOptions};
use stochstab::oracle::BRUTE_FORCE_CAP;

#[derive(Parser)]
#[command(
    name = "stochstab",
    version,
    about = "Decide which states of an infinitesimally perturbed Markov chain are stochastically stable"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a perturbation document and report stable and vanishing states.
    Analyze {
        /// Input file, JSON or terse line format.
        file: PathBuf,
        /// Print the per-level trace.
        #[arg(long)]
        trace: bool,
        /// Write one DOT file per level into DIR.
        #[arg(long, value_name = "DIR")]
        dot: Option<PathBuf>,
        /// Cross-check the result with brute-force and numerical oracles.
        #[arg(long)]
        verify: bool,
        /// Comma-separated strictly decreasing epsilons for --verify.
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "1e-1,1e-2,1e-3,1e-4,1e-5"
        )]
        epsilons: Vec<f64>,
        /// Stability threshold for --verify.
        #[arg(long, default_value_t = 0.01)]
        threshold: f64,
        /// Emit machine-readable JSON.
        #[arg(long)]
        json: bool,
        /// Vertex cap for the brute-force oracle.
        #[arg(long, default_value_t = BRUTE_FORCE_CAP, value_name = "N")]
        cap: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => cli::EXIT_OK,
                _ => cli::EXIT_INPUT,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let Command::Analyze {
        file,
        trace,
        dot,
        verify,
        epsilons,
        threshold,
        json,
        cap,
    } = cli.command;

    let bytes = match fs::read(&file) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", file.display());
            return ExitCode::from(cli::EXIT_INPUT);
        }
    };
    let doc = match cli::parse(&bytes) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(cli::EXIT_INPUT);
        }
    };

    let opts = AnalyzeOptions {
        trace,
        dot,
        verify,
        epsilons,
        threshold,
        json,
        cap,
    };
    let mut out = io::stdout().lock();
    let mut err = io::stderr().lock();
    match cli::run(&doc, &opts, &mut out, &mut err) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::EXIT_INPUT)
        }
    }
}
