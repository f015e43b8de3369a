mod args;
mod commands;
mod complex;
mod error;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use error::CliResult;

fn run(cli: &Cli) -> CliResult<()> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match &cli.command {
        Command::Wright(c) => commands::wright(c, &mut out),
        Command::PhiTable(c) => commands::phi_table_cmd(c, &mut out),
        Command::Bounds(c) => commands::bounds(c, &mut out),
        Command::Radius(c) => commands::radius(c, &mut out),
        Command::Member(c) => commands::member(c, &mut out),
        Command::Generate(c) => commands::generate(c, &mut out),
        Command::VerifyIdentities(c) => commands::verify_identities(c, &mut out),
    }?;
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
