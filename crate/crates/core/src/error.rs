use thiserror::Error;

/// Errors produced while parsing, compiling or analysing a network.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("line {line}: undeclared identifier `{name}`")]
    UndeclaredIdentifier { line: usize, name: String },

    #[error("no update given for state `{0}`")]
    MissingUpdate(String),

    #[error("line {line}: duplicate update for state `{name}`")]
    DuplicateUpdate { line: usize, name: String },

    #[error("duplicate name `{0}`")]
    DuplicateName(String),

    #[error("network has {inputs} inputs but only {states} states (inputs may not exceed states)")]
    TooManyInputs { states: usize, inputs: usize },

    #[error("network must declare at least one state")]
    NoStates,

    #[error("variable `{0}` is not assigned")]
    MissingVariable(String),

    #[error("size cap exceeded: {what} needs {needed}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: u64,
        cap: u64,
    },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("power iteration did not converge after {0} iterations")]
    NoConvergence(usize),

    /// An internal consistency check failed. Always a bug.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
