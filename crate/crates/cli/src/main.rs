//! The `sievekit` command-line tool.
//!
//! Exit codes: 0 success, 1 verification failure or failed identity,
//! 2 bad arguments or config, 3 budget exceeded.

mod args;
mod commands;
mod config;
mod table;

use std::fs::File;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use sievekit::SieveError;

use args::{Cli, Command, Format};
use table::Table;

enum Failure {
    Config(String),
    Budget(String),
    Failed(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Failed(_) => 1,
            Failure::Config(_) => 2,
            Failure::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Config(m) | Failure::Budget(m) | Failure::Failed(m) => m,
        }
    }
}

impl From<SieveError> for Failure {
    fn from(e: SieveError) -> Self {
        match e {
            SieveError::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            SieveError::IdentityFailed(_) => Failure::Failed(e.to_string()),
            _ => Failure::Config(e.to_string()),
        }
    }
}

fn emit(table: &Table, cli: &Cli) -> Result<(), Failure> {
    let mut out: Box<dyn Write> = match &cli.output {
        Some(path) => {
            Box::new(File::create(path).map_err(|e| Failure::Config(format!("cannot write {}: {e}", path.display())))?)
        }
        None => Box::new(io::stdout().lock()),
    };
    let written = match cli.format {
        Format::Csv => table.write_csv(&mut out).map_err(|e| e.to_string()),
        Format::Json => serde_json::to_writer_pretty(&mut out, &table.to_json())
            .map_err(|e| e.to_string())
            .and_then(|()| writeln!(out).map_err(|e| e.to_string())),
    };
    written.map_err(|e| Failure::Failed(format!("write failed: {e}")))
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let table = match &cli.command {
        Command::Sift(a) => commands::sift(a)?,
        Command::Bound(a) => commands::bound(a)?,
        Command::Lsieve(a) => commands::lsieve(a, cli.seed)?,
        Command::Sievefun(a) => commands::sievefun(a)?,
        Command::Chen(a) => commands::chen(a)?,
        Command::Verify(a) => {
            let (table, report) = commands::verify(a, cli.seed)?;
            emit(&table, cli)?;
            if report.passed() {
                return Ok(());
            }
            let mut manifest = String::from("failure manifest:");
            for f in report.failures() {
                manifest.push_str(&format!("\n  [{}] {}: {}", f.suite, f.name, f.detail));
            }
            return Err(Failure::Failed(manifest));
        }
    };
    emit(&table, cli)
}

fn main() -> ExitCode {
    let argv = match config::expand(std::env::args_os().collect()) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
