use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid lattice state: {0}")]
    InvalidState(String),

    #[error("{what} = {value} is out of range (allowed {allowed})")]
    OutOfRange {
        what: &'static str,
        value: String,
        allowed: String,
    },

    #[error(
        "Λ_{m} on N = {n_points} exceeds the budget (N ≤ {max_points}); \
         rerun with N ≤ {max_points} or enable the large-budget override"
    )]
    Budget {
        m: usize,
        n_points: usize,
        max_points: usize,
    },

    #[error("numerical failure at t = {time}: {reason}")]
    Numerical { time: f64, reason: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
