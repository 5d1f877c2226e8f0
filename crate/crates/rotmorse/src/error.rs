use thiserror::Error;

/// Errors produced by the rotating-Morse library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid molecular parameters: {0}")]
    InvalidParams(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("no bound state for j={j}: lambda_bar={lambda_bar} <= 1/2")]
    NoBoundState { j: u32, lambda_bar: f64 },

    #[error("root bracketing failed for j={j}: no sign change of dV/dr in [{lo}, {hi}]")]
    BracketFailure { j: u32, lo: f64, hi: f64 },

    #[error("vibrational index n={n} out of range (n_max={n_max})")]
    LevelOutOfRange { n: u32, n_max: u32 },

    #[error("ladder top n'={n_prime} exceeds n_max={n_max}")]
    LadderTooHigh { n_prime: u32, n_max: u32 },

    #[error("coherent-state parameter alpha must be nonzero")]
    ZeroAlpha,

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error(
        "state grid [{have_lo}, {have_hi}] cannot support the r' window; \
         widen to at least [{need_lo}, {need_hi}]"
    )]
    Coverage {
        have_lo: f64,
        have_hi: f64,
        need_lo: f64,
        need_hi: f64,
    },

    #[error("requested slice at p={p} lies outside the grid [{p_min}, {p_max}]")]
    SliceOutsideGrid { p: f64, p_min: f64, p_max: f64 },

    #[error("tridiagonal eigensolver failed to converge: {0}")]
    EigensolverFailure(String),
}
