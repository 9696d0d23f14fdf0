mod eval;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fueter_core::Error;

/// Evaluate factorized Fueter-Sce kernels and check them against a jet oracle.
#[derive(Parser, Debug)]
#[command(name = "fueter", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one kernel at a point.
    Eval(eval::EvalArgs),
    /// Run a verification suite and emit a report.
    Verify(verify::VerifyArgs),
}

/// A failure together with the process exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn config(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::config(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Eval(args) => eval::run(&args),
        Command::Verify(args) => verify::run(&args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("{}", f.message);
            ExitCode::from(f.code)
        }
    }
}
