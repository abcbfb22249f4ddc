use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("not an automorphism: inverse check fails at generator {generator} ({detail})")]
    NotInverse { generator: String, detail: String },

    #[error("relation not preserved: {0}")]
    Relation(String),

    #[error("group kind mismatch: {0} vs {1}")]
    KindMismatch(String, String),

    #[error("matrix error: {0}")]
    Matrix(String),

    #[error("budget exceeded at n = {n}: length {length} > {budget}")]
    Budget { n: i64, length: usize, budget: usize },

    #[error("t-shuffle exceeded length budget {budget} after {applications} relator applications")]
    ShuffleBudget {
        budget: usize,
        applications: u64,
        /// Ledger lines completed before the budget ran out.
        ledger: Vec<String>,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("witness rejected: {0}")]
    WitnessRejected(String),

    #[error("missing inverse images for automorphism {0}")]
    MissingInverse(String),

    #[error("inconclusive growth estimate: {0}")]
    Inconclusive(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
