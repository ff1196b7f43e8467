use chrono::NaiveDate;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    MalformedRow { line: u64, message: String },

    #[error("missing or unexpected CSV header: expected `{expected}`, found `{found}`")]
    BadHeader { expected: String, found: String },

    #[error("duplicate date {0}")]
    DuplicateDate(NaiveDate),

    #[error("line {line}: non-finite value")]
    NonFinite { line: u64 },

    #[error("series too short: need at least {needed} observations, got {got}")]
    TooShort { needed: usize, got: usize },

    #[error("calendar gap between {prev} and {next}")]
    CalendarGap { prev: NaiveDate, next: NaiveDate },

    #[error("line {line}: negative count {value}")]
    NegativeCount { line: u64, value: i64 },

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("lag {lag} for `{label}` exceeds the {available} available rows")]
    LagTooLong { label: String, lag: usize, available: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parameter constraint violated: {name} ({detail})")]
    InvalidParams { name: &'static str, detail: String },

    #[error("degenerate data: {0}")]
    Degenerate(String),

    #[error("optimizer did not converge after {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("rank-deficient design: column `{0}` is collinear with earlier columns")]
    RankDeficient(String),

    #[error("not enough observations: {0}")]
    InsufficientData(String),
}
