//! `distdist`: experiment harness for exact distinct-distance counting.
//!
//! Subcommands: `analyze`, `line`, `circle`, `sweep`, `check`. See the
//! README for the file formats, the seed discipline, and worked examples.
//!
//! Exit codes: 0 success; 1 input error; 2 invariant violation (an exact
//! cross-check such as `q2 = incidences` failed); 3 size-guard refusal
//! (lift with `--force`).

mod args;
mod check;
mod commands;
mod config;
mod report;
mod sweep;

use clap::Parser;

use args::{Cli, Command};
use config::EXIT_INPUT;

/// Honor `DISTDIST_THREADS` by capping the global thread pool. The
/// sequential build (without the `parallel` feature) ignores it.
#[cfg(feature = "parallel")]
fn configure_threads() {
    if let Ok(raw) = std::env::var("DISTDIST_THREADS") {
        match raw.trim().parse::<usize>() {
            Ok(n) if n > 0 => {
                // Errors only if a global pool already exists; harmless.
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("warning: ignoring DISTDIST_THREADS={raw:?} (want a positive integer)");
            }
        }
    }
}

#[cfg(not(feature = "parallel"))]
fn configure_threads() {}

fn main() {
    configure_threads();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successes; everything else is an
            // input error under this tool's exit-code contract.
            if e.use_stderr() {
                let _ = e.print();
                std::process::exit(EXIT_INPUT);
            }
            let _ = e.print();
            std::process::exit(0);
        }
    };

    let result = match &cli.command {
        Command::Analyze(a) => commands::run_analyze(a),
        Command::Line(a) => commands::run_line(a),
        Command::Circle(a) => commands::run_circle(a),
        Command::Sweep(a) => sweep::run_sweep(a),
        Command::Check(a) => check::run_check(a),
    };

    match result {
        Ok(()) => {}
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            std::process::exit(failure.code);
        }
    }
}
