//! `tietz`: bound-state spectra, radial wavefunctions and finite-difference
//! validation for the improved Tietz diatomic-molecule potential, driven by
//! flat key = value configuration files.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use output::Format;

#[derive(Parser)]
#[command(name = "tietz", version, about = "Bound states of the improved Tietz potential")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write the bound-state table for the configured molecule.
    Spectrum {
        /// Flat key = value configuration file.
        config: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample one normalized radial wavefunction on the default window.
    Wavefunction {
        /// Flat key = value configuration file.
        config: PathBuf,
        /// Radial quantum number of the state.
        #[arg(long)]
        nr: u32,
        /// Orbital quantum number of the state.
        #[arg(long)]
        l: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare every analytic level against the finite-difference solver.
    Validate {
        /// Flat key = value configuration file.
        config: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // exit 2 is reserved for "no bound states / no such state";
            // usage problems are plain failures
            let clean = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return ExitCode::from(if clean { 0 } else { 1 });
        }
    };
    let result = match cli.cmd {
        Cmd::Spectrum { config, format, out } => config::load_config(&config)
            .and_then(|cfg| commands::cmd_spectrum(&cfg, format, out.as_deref())),
        Cmd::Wavefunction { config, nr, l, format, out } => config::load_config(&config)
            .and_then(|cfg| commands::cmd_wavefunction(&cfg, nr, l, format, out.as_deref())),
        Cmd::Validate { config, format, out } => config::load_config(&config)
            .and_then(|cfg| commands::cmd_validate(&cfg, format, out.as_deref())),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
