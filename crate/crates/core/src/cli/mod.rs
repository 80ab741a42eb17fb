//! Command-line front end: JSON configs in, JSON reports out.

pub mod commands;
pub mod config;
pub mod export;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use config::JobConfig;

#[derive(Debug, Parser)]
#[command(name = "knalg", about = "Exact computations in multipoint Krichever-Novikov algebras")]
pub struct Cli {
    /// JSON job configuration; defaults apply when absent.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write the JSON output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Basis elements of the configured weight with their order tables.
    Basis,
    /// Pairing of two forms, or the duality table.
    Pair,
    /// Product of two functions, or the product table.
    Mult,
    /// Bracket of two vector fields, or the bracket table.
    Bracket,
    /// Values of a geometric cocycle on basis pairs.
    Cocycle,
    /// A current or vector field acting on a wedge vector.
    WedgeAct,
    /// A Sugawara operator applied to a wedge vector.
    Sugawara,
    /// Kernel of the mixing-cocycle system.
    Casimir,
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Export a table.
    Export { what: String },
}

/// Process exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Config(_) => 2,
        Error::Io(_) => 3,
        _ => 1,
    }
}

fn execute(cli: &Cli) -> Result<(Value, bool)> {
    let cfg = JobConfig::load(cli.config.as_deref())?;
    let v = match &cli.command {
        Command::Basis => commands::basis(&cfg)?,
        Command::Pair => commands::pair(&cfg)?,
        Command::Mult => commands::mult(&cfg)?,
        Command::Bracket => commands::bracket(&cfg)?,
        Command::Cocycle => commands::cocycle_table(&cfg)?,
        Command::WedgeAct => commands::wedge_act(&cfg)?,
        Command::Sugawara => commands::sugawara(&cfg)?,
        Command::Casimir => commands::casimir(&cfg)?,
        Command::Verify { suite } => {
            let records = verify::run_suite(&cfg, suite)?;
            let ok = records.iter().all(|r| r.passed());
            return Ok((json!({ "suite": suite, "passed": ok, "checks": records }), ok));
        }
        Command::Export { what } => export::export(&cfg, what)?,
    };
    Ok((v, true))
}

fn emit(v: &Value, out: Option<&std::path::Path>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(v).map_err(|e| Error::Invariant(e.to_string()))?;
    text.push('\n');
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

pub fn run(cli: &Cli) -> i32 {
    let result = execute(cli).and_then(|(v, ok)| emit(&v, cli.out.as_deref()).map(|_| ok));
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Parses arguments and runs; usage errors give exit code 2.
pub fn run_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            code
        }
    }
}
