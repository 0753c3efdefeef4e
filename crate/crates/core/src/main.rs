use std::process::ExitCode;

use clap::Parser;
use homres::cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let out = execute(&cli);
    if let Some(dot) = cli.dot.as_ref().zip(out.dot.as_ref()) {
        if let Err(e) = std::fs::write(dot.0, dot.1) {
            eprintln!("cannot write {}: {e}", dot.0.display());
            return ExitCode::from(2);
        }
    }
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &out.report) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", out.report),
    }
    ExitCode::from(out.code)
}
