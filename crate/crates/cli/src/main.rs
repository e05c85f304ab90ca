mod commands;
mod report;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use slopelab::{ProductQuotientParams, RuledCoverParams};

use commands::CliResult;
use sweep::SweepArgs;

/// Exact slope bounds for hyperelliptic fibrations.
///
/// Exit status: 0 success, 1 invalid input, 2 a mathematical check failed.
#[derive(Debug, Parser)]
#[command(name = "slopelab", version)]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Require s_{g+2} = 0 (no multiplicity g+2 points) for even g.
    #[arg(long, global = true)]
    strict: bool,
    /// Include the dual certificate in `optimize` output.
    #[arg(long, global = true)]
    certificate: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// The bound λ_{g,q_f}, the conjectured bound and the proof coefficients.
    Bound {
        #[arg(long, allow_negative_numbers = true)]
        g: i64,
        #[arg(long = "qf", allow_negative_numbers = true)]
        q_f: i64,
    },
    /// Relative invariants of a singularity index vector file.
    Invariants { path: PathBuf },
    /// Minimize the slope over the index cone and check it against the bound.
    Optimize {
        #[arg(long, allow_negative_numbers = true)]
        g: i64,
        #[arg(long = "qf", allow_negative_numbers = true)]
        q_f: i64,
    },
    /// Resolve a singularity forest file both ways and compare.
    Resolve { path: PathBuf },
    /// Families attaining the bound.
    #[command(subcommand)]
    Example(ExampleCommand),
    /// Run a mode over a grid of (g, q_f) cells.
    Sweep(SweepArgs),
}

#[derive(Debug, Subcommand)]
enum ExampleCommand {
    /// Double cover of a pencil on the Hirzebruch surface F_e.
    Ruled {
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
        #[arg(long, allow_negative_numbers = true)]
        e: i64,
        #[arg(long, allow_negative_numbers = true)]
        b0: i64,
        #[arg(long = "qf", allow_negative_numbers = true)]
        q_f: i64,
    },
    /// Quotient of a product of curves by a diagonal involution.
    Product {
        #[arg(long, allow_negative_numbers = true)]
        g: i64,
        /// Number of branch points |Σ| (even, positive).
        #[arg(long, allow_negative_numbers = true)]
        branch: i64,
    },
}

fn run(cli: &Cli, echo: &str) -> CliResult {
    match &cli.command {
        Command::Bound { g, q_f } => commands::bound(echo, *g, *q_f),
        Command::Invariants { path } => commands::invariants(echo, path, cli.strict),
        Command::Optimize { g, q_f } => commands::optimize(echo, *g, *q_f, cli.certificate),
        Command::Resolve { path } => commands::resolve(echo, path, cli.strict),
        Command::Example(ExampleCommand::Ruled { m, e, b0, q_f }) => {
            commands::ruled(echo, RuledCoverParams { m: *m, e: *e, b0: *b0, q_f: *q_f })
        }
        Command::Example(ExampleCommand::Product { g, branch }) => {
            commands::product(echo, ProductQuotientParams { g: *g, branch_count: *branch })
        }
        Command::Sweep(args) => sweep::sweep(echo, args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let start = Instant::now();
    let result = run(&cli, &echo);
    eprintln!("elapsed_us: {}", start.elapsed().as_micros());
    match result {
        Ok(rep) => {
            if cli.json {
                println!("{}", rep.to_json());
            } else {
                print!("{}", rep.to_text());
            }
            ExitCode::from(if rep.passed() { 0 } else { 2 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
