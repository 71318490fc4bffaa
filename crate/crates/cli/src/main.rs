use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use gpsprimes_cli::args::Cli;
use gpsprimes_cli::{run, CliError};

fn fail(err: &CliError) -> ExitCode {
    eprintln!("{}", err.json_line());
    ExitCode::from(err.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let reason = e.render().to_string();
            let first = reason.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ");
            return fail(&CliError::Validation(first.to_string()));
        }
    };
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => return fail(&e),
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &outcome.body),
        None => std::io::stdout().write_all(outcome.body.as_bytes()),
    };
    if let Err(e) = written {
        return fail(&CliError::Io(e));
    }
    if !outcome.ambiguous.is_empty() {
        let err = CliError::Ambiguous(outcome.ambiguous);
        if cli.strict {
            return fail(&err);
        }
        eprintln!("{}", err.json_line());
    }
    ExitCode::SUCCESS
}
