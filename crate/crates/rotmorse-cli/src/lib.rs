//! Library half of the CLI: config ingestion, subcommand bodies, and the
//! WGR1 grid format, kept out of main.rs so integration tests can call the
//! reader and config parser directly.

pub mod commands;
pub mod config;
pub mod wgr;

/// Errors mapped onto process exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Bad config or flags → exit 2.
    Config(String),
    /// Channel/eigensystem/scan failure → exit 3.
    Solver(String),
    /// Radial grid cannot support the Wigner correlation window → exit 4.
    Coverage(String),
    /// One or more validation checks failed → exit 5.
    Validation(String),
    /// Filesystem trouble → exit 1.
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Config(_) => 2,
            CliError::Solver(_) => 3,
            CliError::Coverage(_) => 4,
            CliError::Validation(_) => 5,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Solver(m) => write!(f, "solver error: {m}"),
            CliError::Coverage(m) => write!(f, "coverage error: {m}"),
            CliError::Validation(m) => write!(f, "validation failed: {m}"),
            CliError::Io(m) => write!(f, "io error: {m}"),
        }
    }
}
