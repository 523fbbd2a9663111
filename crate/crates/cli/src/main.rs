//! `chebotarev`: splitting tables, theorem verification and abstract-model
//! trials from the command line.
//!
//! Exit codes: 0 when every assertion holds, 1 when a mathematical
//! assertion fails, 2 for configuration errors. Errors are reported on
//! stderr as one JSON object with a machine-readable `error` field.

mod commands;
mod config;

use std::fs;
use std::process::ExitCode;

use chebotarev::Error;
use clap::{Parser, Subcommand};

use commands::Output;
use config::{CommonArgs, Format};

#[derive(Parser)]
#[command(
    name = "chebotarev",
    version,
    about = "Frobenius data and fiber counts for abelian covers of P^1 over finite fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List places of the base with decomposition, inertia and Frobenius data.
    Places {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Check the twisted fiber count identity and the Hasse-Weil window.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Element of F N as an exponent vector, or "all".
        #[arg(long, default_value = "all", allow_hyphen_values = true)]
        gamma: String,
    },
    /// Random trials over abstract normal extensions of a library group.
    Abstract {
        /// Group name: Zn, Z2xZ2, S3, D4, Q8, A4, S4.
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<String>,
    },
}

fn fail(code: u8, reason: &str, message: &str) -> ExitCode {
    let payload = serde_json::json!({ "error": reason, "message": message });
    eprintln!("{payload}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, out) = match &cli.command {
        Command::Places { common } => (commands::places(common), common.out.clone()),
        Command::Verify { common, gamma } => {
            (commands::verify_cmd(common, gamma), common.out.clone())
        }
        Command::Abstract {
            group,
            trials,
            seed,
            format,
            out,
        } => (
            commands::abstract_cmd(group, *trials, *seed, *format),
            out.clone(),
        ),
    };
    let Output { text, failures } = match result {
        Ok(o) => o,
        Err(e) => {
            let code = if e.is_assertion_failure() { 1 } else { 2 };
            return fail(code, e.reason(), &e.to_string());
        }
    };
    match out {
        Some(path) => {
            if let Err(e) = fs::write(&path, &text) {
                let e = Error::Config(format!("cannot write {path}: {e}"));
                return fail(2, e.reason(), &e.to_string());
            }
        }
        None => print!("{text}"),
    }
    if failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        for f in &failures {
            eprintln!(
                "{}",
                serde_json::json!({ "error": "AssertionFailure", "message": f })
            );
        }
        ExitCode::from(1)
    }
}
