//! `qcuntz`: one entry point for the rewriting, Fock, deformation, structure and K-theory checks.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for invalid
//! input, 3 when a budget or validity guard stops the computation.

mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.report_name();
    let path = cli
        .output
        .out
        .clone()
        .unwrap_or_else(|| cli.output.report_dir.join(format!("{name}.{}", cli.output.format.extension())));

    let (code, result) = match commands::run(&cli.command) {
        Ok(outcome) => {
            for line in &outcome.lines {
                println!("{line}");
            }
            for c in &outcome.checks {
                println!("{}", c.summary_line());
            }
            (if outcome.all_pass() { 0 } else { 1 }, Ok(outcome))
        }
        Err(e) => match e.guard_name() {
            Some(guard) => {
                eprintln!("guard {guard}: {e}");
                (3, Err(format!("guard {guard}: {e}")))
            }
            None => {
                eprintln!("error: {e}");
                (2, Err(e.to_string()))
            }
        },
    };

    if let Err(e) = output::write_report(&path, cli.output.format, name, &result) {
        eprintln!("cannot write report {}: {e}", path.display());
        return ExitCode::from(2);
    }
    eprintln!("report: {}", path.display());
    ExitCode::from(code)
}
