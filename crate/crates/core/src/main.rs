use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = pants_calculus::cli::Cli::parse();
    ExitCode::from(pants_calculus::cli::run(&cli, &mut std::io::stdout().lock()))
}
