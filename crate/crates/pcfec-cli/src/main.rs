//! Command-line front end: code construction via presets or explicit
//! parameters, floor-bound evaluation, exhaustive stall search, Monte
//! Carlo sweeps, and frame file encode/decode.
//!
//! Exit codes: 0 on success, 1 when `decode` reports a residual
//! decoding failure, 2 on usage or configuration errors.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::SimulateArgs;
use config::{CodeArgs, FileConfig, GridArgs};

#[derive(Parser)]
#[command(
    name = "pcfec",
    version,
    about = "Product-code FEC: bounds, stall search, simulation, framing"
)]
struct Cli {
    /// Optional TOML configuration file; command-line flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate error-floor lower bounds over a p grid (CSV).
    Bounds {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Output CSV path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive uncorrectable-stall-pattern search (CSV of n_e,m).
    StallSearch {
        /// Correction radius (1..=3).
        #[arg(long)]
        t: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo BER/FER sweep over the binary symmetric channel (CSV).
    Simulate {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Full decoding iterations per frame.
        #[arg(long)]
        iters: Option<u32>,
        /// Enable stall post-processing.
        #[arg(long)]
        pp: bool,
        /// Frames per p point.
        #[arg(long)]
        trials: Option<u64>,
        /// Channel seed; the sweep is reproducible bit for bit.
        #[arg(long)]
        seed: Option<u64>,
        /// Stop a point early after this many frame errors (0 disables).
        #[arg(long)]
        stop_frame_errors: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Encode a packed information file into a frame file.
    Encode {
        #[command(flatten)]
        code: CodeArgs,
        /// Input information file (k2*k1 symbols, b bits each, LSB-first).
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
        /// Output frame file.
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Decode a frame file back into an information file.
    Decode {
        #[command(flatten)]
        code: CodeArgs,
        /// Input frame file.
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
        /// Output information file.
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        #[arg(long)]
        iters: Option<u32>,
        #[arg(long)]
        pp: bool,
    },
}

fn main() -> ExitCode {
    // Worker-count override; results are identical for any value.
    if let Ok(workers) = std::env::var("PCFEC_WORKERS") {
        match workers.parse::<usize>() {
            Ok(n) if n >= 1 => {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global()
                    .ok();
            }
            _ => {
                eprintln!("error: PCFEC_WORKERS must be a positive integer");
                return ExitCode::from(2);
            }
        }
    }

    let cli = Cli::parse();
    let file = match &cli.config {
        Some(path) => match FileConfig::load(path) {
            Ok(f) => f,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        },
        None => FileConfig::default(),
    };

    let result: Result<ExitCode, String> = match cli.command {
        Command::Bounds { code, grid, out } => (|| {
            let spec = code.resolve(&file)?;
            let ps = grid.resolve(&file)?;
            let out = out.or_else(|| file.out.clone());
            commands::cmd_bounds(&spec, &ps, out.as_ref())?;
            Ok(ExitCode::SUCCESS)
        })(),
        Command::StallSearch { t, out } => (|| {
            let out = out.or_else(|| file.out.clone());
            commands::cmd_stall_search(t, out.as_ref())?;
            Ok(ExitCode::SUCCESS)
        })(),
        Command::Simulate {
            code,
            grid,
            iters,
            pp,
            trials,
            seed,
            stop_frame_errors,
            out,
        } => (|| {
            let spec = code.resolve(&file)?;
            let guard = code.guard(&file)?;
            let args = SimulateArgs {
                grid: grid.resolve(&file)?,
                iterations: iters.or(file.iters).unwrap_or(2),
                post_processing: pp || file.pp.unwrap_or(false),
                trials: trials.or(file.trials).unwrap_or(10_000),
                seed: seed.or(file.seed).unwrap_or(1),
                stop_frame_errors: stop_frame_errors
                    .or(file.stop_frame_errors)
                    .or(Some(100))
                    .filter(|&n| n > 0),
                out: out.or_else(|| file.out.clone()),
            };
            commands::cmd_simulate(&spec, guard, &args)?;
            Ok(ExitCode::SUCCESS)
        })(),
        Command::Encode { code, input, out } => (|| {
            let spec = code.resolve(&file)?;
            let guard = code.guard(&file)?;
            commands::cmd_encode(&spec, guard, &input, &out)?;
            Ok(ExitCode::SUCCESS)
        })(),
        Command::Decode {
            code,
            input,
            out,
            iters,
            pp,
        } => (|| {
            let spec = code.resolve(&file)?;
            let guard = code.guard(&file)?;
            let converged = commands::cmd_decode(
                &spec,
                guard,
                &input,
                &out,
                iters.or(file.iters).unwrap_or(2),
                pp || file.pp.unwrap_or(false),
            )?;
            Ok(if converged {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        })(),
    };

    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
