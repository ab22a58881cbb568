use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use gosper_cli::{run, Cli, Context};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli, &Context::from_env()) {
        Ok(out) => {
            let _ = std::io::stdout().write_all(out.stdout.as_bytes());
            let _ = std::io::stderr().write_all(out.stderr.as_bytes());
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
