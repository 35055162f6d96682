use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use knr_cli::{run, CliError, Command, Job};
use knr_core::tol;

#[derive(Parser)]
#[command(name = "knr", version, about = "Indefinite numerical ranges of small complex matrices")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Certify a hyperbolic boundary for a tridiagonal spec (orders 3 to 6).
    Certify(JobArgs),
    /// Classify the range of a tridiagonal or dense input.
    Classify(JobArgs),
    /// Sweep the boundary points and write them as CSV.
    Boundary(JobArgs),
    /// Sample both sign classes of the range and write them as CSV.
    Sample(JobArgs),
}

#[derive(Args)]
struct JobArgs {
    /// JSON input file.
    #[arg(long)]
    input: PathBuf,
    /// Output file for the JSON report or CSV; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Optional SVG plot.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Number of angles in the sweep grid.
    #[arg(long, default_value_t = tol::DEFAULT_GRID)]
    grid: usize,
    /// Samples per sign class.
    #[arg(long, default_value_t = tol::DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = tol::DEFAULT_SEED)]
    seed: u64,
    /// Containment tolerance of the sampling cross-check.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = match cli.command {
        Cmd::Certify(a) => (Command::Certify, a),
        Cmd::Classify(a) => (Command::Classify, a),
        Cmd::Boundary(a) => (Command::Boundary, a),
        Cmd::Sample(a) => (Command::Sample, a),
    };
    let job = Job {
        command,
        input: args.input,
        out: args.out,
        svg: args.svg,
        grid: args.grid,
        samples: args.samples,
        seed: args.seed,
        tol: args.tol,
    };
    match run(&job) {
        Ok(outcome) => {
            for m in &outcome.messages {
                eprintln!("{m}");
            }
            if let Some(text) = outcome.stdout {
                let mut stdout = std::io::stdout().lock();
                if stdout.write_all(text.as_bytes()).is_err() {
                    return ExitCode::from(CliError::EXIT_CODE);
                }
            }
            ExitCode::from(outcome.exit_code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(CliError::EXIT_CODE)
        }
    }
}
