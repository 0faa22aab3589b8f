//! `gma`: command-line driver for the cone algebra, the torus solver, the
//! toric criterion checker and the psh utilities.
//!
//! Exit codes: 0 success, 1 computational failure, 2 invalid input,
//! 3 toric criterion fails.

mod config;
mod error;
mod kernel_cmd;
mod output;
mod psh_cmd;
mod solve_cmd;
mod toric_cmd;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use config::load;
use error::{invalid, CliError};
use output::{report_text, write_all, Output};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "gma", version, about = "Generalised Monge-Ampère numerics")]
struct Cli {
    /// JSON config for the command.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory for report.json, timings.json and artifacts.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized drivers.
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Format of the report printed on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Pointwise cone algebra.
    #[command(subcommand)]
    Kernel(KernelCmd),
    /// Continuity-method solver on flat tori.
    #[command(subcommand)]
    Solve(SolveCmd),
    /// Intersection-number criterion on toric surfaces and threefolds.
    #[command(subcommand)]
    Toric(ToricCmd),
    /// Mollification, Lelong numbers, c_n and gluing.
    #[command(subcommand)]
    Psh(PshCmd),
}

#[derive(Debug, Subcommand)]
enum KernelCmd {
    /// Per-index loads and margin for given eigenvalues.
    Cone,
    /// The lower bound f_m and its terms.
    Fm,
    /// Seeded identity and cone-property suites.
    Identities,
}

#[derive(Debug, Subcommand)]
enum SolveCmd {
    /// Solve along the continuity path.
    Run,
    /// Build the source term of a prescribed potential.
    Manufacture,
    /// Probe solvability along scaled classes.
    Classpath,
}

#[derive(Debug, Subcommand)]
enum ToricCmd {
    /// Evaluate the criterion on every proper face.
    Check,
}

#[derive(Debug, Subcommand)]
enum PshCmd {
    Mollify,
    Lelong,
    Cn,
    Glue,
}

fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    let cfg = cli.config.as_deref();
    match &cli.command {
        Command::Kernel(KernelCmd::Cone) => kernel_cmd::cone(&load(cfg)?),
        Command::Kernel(KernelCmd::Fm) => kernel_cmd::fm(&load(cfg)?),
        Command::Kernel(KernelCmd::Identities) => match cfg {
            Some(_) => kernel_cmd::identities(Some(&load(cfg)?), cli.seed),
            None => kernel_cmd::identities(None, cli.seed),
        },
        Command::Solve(SolveCmd::Run) => solve_cmd::run(&load(cfg)?),
        Command::Solve(SolveCmd::Manufacture) => solve_cmd::manufacture_case(&load(cfg)?),
        Command::Solve(SolveCmd::Classpath) => solve_cmd::classpath(&load(cfg)?),
        Command::Toric(ToricCmd::Check) => toric_cmd::check(&load(cfg)?),
        Command::Psh(PshCmd::Mollify) => psh_cmd::mollify(&load(cfg)?),
        Command::Psh(PshCmd::Lelong) => psh_cmd::lelong(&load(cfg)?),
        Command::Psh(PshCmd::Cn) => psh_cmd::cn(&load(cfg)?),
        Command::Psh(PshCmd::Glue) => psh_cmd::glue(&load(cfg)?),
    }
}

fn command_name(c: &Command) -> String {
    let s = format!("{c:?}").to_lowercase();
    s.replace(['(', ')'], " ").split_whitespace().collect::<Vec<_>>().join(" ")
}

fn execute(cli: &Cli) -> Result<i32, CliError> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(invalid("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Compute(format!("cannot start thread pool: {e}")))?;
    }
    let start = Instant::now();
    let out = dispatch(cli)?;
    let elapsed = start.elapsed().as_secs_f64();
    let text = match cli.format {
        Format::Json => report_text(&out.report),
        Format::Csv => out.csv.clone().ok_or_else(|| invalid("this command has no CSV output"))?,
    };
    if let Some(dir) = &cli.out {
        let timings = json!({
            "command": command_name(&cli.command),
            "elapsedSeconds": elapsed,
            "threads": rayon::current_num_threads(),
        });
        write_all(dir, &out, &timings)?;
    }
    print!("{text}");
    Ok(out.code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
