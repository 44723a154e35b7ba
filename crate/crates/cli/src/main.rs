use std::process::ExitCode;

use clap::Parser;
use contextia_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code.as_u8()),
        Err(e) => {
            eprintln!("contextia: {e}");
            ExitCode::from(e.exit_code().as_u8())
        }
    }
}
