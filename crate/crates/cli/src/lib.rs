//! Command-line driver: argument definitions, the sieve cache and one module
//! per subcommand. The binary in `main.rs` only parses, dispatches and maps
//! errors to exit codes.

pub mod args;
pub mod cache;
pub mod commands;
pub mod error;

pub use error::CliError;

use args::{Cli, Command, Format};

/// Rendered output of a subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub body: String,
    /// Values whose membership could not be decided.
    pub ambiguous: Vec<u64>,
}

impl Outcome {
    pub fn new(body: String) -> Self {
        Self { body, ambiguous: Vec::new() }
    }
}

/// Runs a parsed command inside a pool of `cli.threads` workers.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    pool.install(|| dispatch(cli))
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let fmt = |default: Format| cli.format.unwrap_or(default);
    match &cli.command {
        Command::Count(a) => commands::count::run(a, fmt(Format::Csv)),
        Command::Seq(a) => commands::seq::run(a, fmt(Format::Csv)),
        Command::VerifyVaaler(a) => commands::verify::vaaler(a, cli.seed, fmt(Format::Json)),
        Command::VerifyHb(a) => commands::verify::heath_brown(a, fmt(Format::Json)),
        Command::Expsum(a) => commands::expsum::run(a, cli.seed, fmt(Format::Csv)),
        Command::OptimizeH(a) => commands::optimize::run(a, cli.seed, fmt(Format::Json)),
        Command::Carmichael(a) => commands::carmichael::run(a, fmt(Format::Json)),
        Command::Smooth(a) => commands::smooth::run(a, fmt(Format::Csv)),
        Command::Thresholds(a) => commands::thresholds::run(a, fmt(Format::Json)),
    }
}
