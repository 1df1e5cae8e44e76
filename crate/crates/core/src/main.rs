use std::process::ExitCode;

use clap::Parser;
use gbsolve::cli::{self, Args};

fn main() -> ExitCode {
    let args = Args::parse();
    let stdout = std::io::stdout();
    match cli::run_cli(&args, &mut stdout.lock()) {
        Ok(status) => ExitCode::from(cli::exit_code(status)),
        Err(e) => {
            eprintln!("gbsolve: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
