mod cli;
mod commands;
mod config;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser};
use pcnn::Error;

use crate::cli::{Cli, Command};

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidArgument(_) | Error::NotFound(_) => 2,
        Error::Parse { .. } | Error::Io(_) => 3,
        Error::Numeric { .. } | Error::DegenerateInput(_) => 4,
    }
}

/// Sizes the global pool from `PCNN_THREADS` (0 or unset = automatic).
fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("PCNN_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().map_err(|_| format!("PCNN_THREADS must be a non-negative integer, got '{raw}'"))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => {
            let msg = e.render().to_string();
            eprint!("{msg}");
            if !msg.contains("Usage:") {
                eprintln!("\n{}", Cli::command().render_usage());
            }
            return ExitCode::from(2);
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let result = match &cli.command {
        Command::Run(a) => commands::cmd_run(a),
        Command::Segment(a) => commands::cmd_segment(a),
        Command::Edges(a) => commands::cmd_edges(a),
        Command::Denoise(a) => commands::cmd_denoise(a),
        Command::Signature(a) => commands::cmd_signature(a),
        Command::Sweep(a) => commands::cmd_sweep(a),
        Command::Presets(a) => commands::cmd_presets(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
