//! The `symbell` command line: operator construction, exact checks, spectra,
//! local bounds and the extremal-eigenvalue table, each rendered as json,
//! csv or text.

pub mod args;
pub mod cache;
mod commands;
pub mod output;
pub mod reference;

use thiserror::Error;

pub use args::Cli;
pub use commands::{resolve_operator, Operator};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] symbell_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

/// Rendered output and process exit code. A failed check still renders its
/// report and exits with 1.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub output: String,
    pub exit_code: i32,
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    run_at(cli, output::now())
}

/// [`run`] with a fixed report timestamp.
pub fn run_at(cli: &Cli, timestamp: u64) -> Result<Outcome, CliError> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cli.global.workers {
        if w == 0 {
            return Err(CliError::Usage("--workers must be at least 1".into()));
        }
        pool = pool.num_threads(w);
    }
    let pool = pool.build()?;
    let (report, ok) = pool.install(|| commands::execute(cli))?;
    Ok(Outcome {
        output: report.render(cli.global.format, timestamp)?,
        exit_code: if ok { 0 } else { 1 },
    })
}
