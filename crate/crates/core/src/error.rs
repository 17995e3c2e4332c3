use thiserror::Error;

/// Errors raised by the toolkit.
///
/// The variants split into two families: input problems (bad files, bad
/// parameters, malformed graphs) and violated preconditions of a
/// combinatorial operation. The CLI maps both to exit code 2.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("structural error: {0}")]
    Structural(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("flip of ({a}, {c}) forbidden: replacement edge ({b}, {d}) already present")]
    FlipForbidden {
        a: usize,
        c: usize,
        b: usize,
        d: usize,
    },

    #[error("n = {n} exceeds the configured ceiling {ceiling}{}", estimate.map(|e| format!(" (about {e} isomorphism classes expected)")).unwrap_or_default())]
    CeilingExceeded {
        n: usize,
        ceiling: usize,
        estimate: Option<u64>,
    },

    /// A checked mathematical property failed on concrete data.
    #[error("verification failed: {0}")]
    Verification(String),

    #[error("tied similarity weights under strict tie policy: {}", format_ties(.0))]
    Ties(Vec<(String, String, f64)>),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

fn format_ties(ties: &[(String, String, f64)]) -> String {
    ties.iter()
        .map(|(u, v, w)| format!("({u}, {v}) = {w}"))
        .collect::<Vec<_>>()
        .join(", ")
}

pub type Result<T> = std::result::Result<T, Error>;
