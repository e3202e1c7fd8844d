use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use racg_hecke::{ball_cap_from, execute, Cli, CliError, MAX_BALL_ENV};

fn run(cli: &Cli) -> Result<i32, CliError> {
    let cap = ball_cap_from(std::env::var(MAX_BALL_ENV).ok().as_deref())?;
    let outcome = execute(cli, cap)?;
    let body = outcome.report.render(cli.format);
    match &cli.output {
        Some(path) => std::fs::write(path, body).map_err(CliError::Io)?,
        None => std::io::stdout().write_all(body.as_bytes()).map_err(CliError::Io)?,
    }
    Ok(outcome.status)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
