mod args;
mod commands;
mod config;

use std::process::ExitCode;

use clap::Parser;

/// Failure classes, each with its own exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Validation(String),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Domain(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl From<extcat::Error> for CliError {
    fn from(e: extcat::Error) -> Self {
        match e {
            extcat::Error::Usage(m) => CliError::Validation(m),
            extcat::Error::Domain(m) => CliError::Domain(format!("domain error: {m}")),
        }
    }
}

impl From<extcat::io::IoError> for CliError {
    fn from(e: extcat::io::IoError) -> Self {
        use extcat::io::IoError;
        match e {
            IoError::Io(err) => CliError::Io(format!("I/O error: {err}")),
            IoError::Parse { .. } => CliError::Validation(e.to_string()),
            IoError::Math(m) => m.into(),
            IoError::Json(err) => CliError::Io(format!("JSON error: {err}")),
        }
    }
}

fn main() -> ExitCode {
    let cli = match args::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("extcat: {e}");
            ExitCode::from(e.code())
        }
    }
}
