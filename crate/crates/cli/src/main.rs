mod args;
mod commands;
mod emit;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use commands::{Failure, Output};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let outcome = match commands::run(&cli.command, cli.output.format) {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            return ExitCode::from(2);
        }
    };
    let text = match &outcome.output {
        Output::Report(r) => r.render(cli.output.format, cli.output.rounding),
        Output::Raw(s) => s.clone(),
    };
    let written = match &cli.output.output {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("internal error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    if let Some(d) = outcome.diagnostic {
        eprintln!("{d}");
    }
    ExitCode::from(outcome.status)
}
