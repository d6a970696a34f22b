//! Error categories with distinct process exit codes.

use std::fmt;

/// Exit codes: 0 success, 2 usage/config, 3 data, 4 numerical, 5 io.
#[derive(Debug)]
pub enum CliError {
    /// Bad command line or config file.
    Usage(String),
    /// Config validated but inconsistent with presets or itself.
    Config(String),
    /// Input data missing, malformed or failing checks.
    Data(String),
    /// Numerical failure inside the pipeline.
    Numeric(String),
    /// Filesystem failure writing or reading artifacts.
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => 2,
            CliError::Data(_) => 3,
            CliError::Numeric(_) => 4,
            CliError::Io(_) => 5,
        }
    }

    pub fn io(context: &str, e: std::io::Error) -> Self {
        CliError::Io(format!("{context}: {e}"))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Data(m) => write!(f, "data error: {m}"),
            CliError::Numeric(m) => write!(f, "numerical error: {m}"),
            CliError::Io(m) => write!(f, "io error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<rmm_core::eval::EvalError> for CliError {
    fn from(e: rmm_core::eval::EvalError) -> Self {
        CliError::Numeric(e.to_string())
    }
}

impl From<rmm_core::forecast::ForecastError> for CliError {
    fn from(e: rmm_core::forecast::ForecastError) -> Self {
        CliError::Numeric(e.to_string())
    }
}

impl From<rmm_core::motif::MotifError> for CliError {
    fn from(e: rmm_core::motif::MotifError) -> Self {
        CliError::Numeric(e.to_string())
    }
}

impl From<rmm_core::scr::ScrError> for CliError {
    fn from(e: rmm_core::scr::ScrError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<rmm_core::series::SeriesError> for CliError {
    fn from(e: rmm_core::series::SeriesError) -> Self {
        CliError::Data(e.to_string())
    }
}
