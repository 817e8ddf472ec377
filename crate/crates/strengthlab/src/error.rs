//! Crate-wide error type.
//!
//! All fallible operations share one enum so that errors propagate cleanly
//! across the arithmetic, Gröbner and search layers. `exit_code` maps each
//! variant onto the CLI contract: 1 for mathematical-input errors, 2 when a
//! resource budget was exhausted.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("zero input: {0}")]
    ZeroInput(String),

    #[error("unsupported field: {0}")]
    UnsupportedField(String),

    #[error("characteristic 2 is not supported")]
    Char2Unsupported,

    #[error("{0} is not an odd prime")]
    NotPrime(u64),

    #[error("variable index {index} out of range for ring with {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },

    #[error("resource budget exceeded: {0}")]
    ResourceBudgetExceeded(String),

    #[error("unit ideal: {0}")]
    UnitIdeal(String),

    #[error("invalid minor size c={c}: need 1 <= c <= min(r={r}, n={n})")]
    InvalidMinorSize { c: usize, r: usize, n: usize },

    #[error("not a quadric: {0}")]
    NotQuadric(String),

    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("search space too large: {size} candidates exceed the cap of {cap}")]
    SearchSpaceTooLarge { size: u128, cap: u128 },

    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("non-homogeneous polynomial at line {line}")]
    NonHomogeneousLine { line: usize },

    #[error("unknown variable `{name}` at line {line}")]
    UnknownVariable { name: String, line: usize },

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code for the CLI: 2 for exhausted budgets, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ResourceBudgetExceeded(_) | Error::SearchSpaceTooLarge { .. } => 2,
            _ => 1,
        }
    }

    /// Stable machine-readable tag used in JSON error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::FieldMismatch(_) => "FieldMismatch",
            Error::RingMismatch(_) => "RingMismatch",
            Error::ZeroInput(_) => "ZeroInput",
            Error::UnsupportedField(_) => "UnsupportedField",
            Error::Char2Unsupported => "Char2Unsupported",
            Error::NotPrime(_) => "NotPrime",
            Error::VariableOutOfRange { .. } => "VariableOutOfRange",
            Error::ResourceBudgetExceeded(_) => "ResourceBudgetExceeded",
            Error::UnitIdeal(_) => "UnitIdeal",
            Error::InvalidMinorSize { .. } => "InvalidMinorSize",
            Error::NotQuadric(_) => "NotQuadric",
            Error::NotHomogeneous(_) => "NotHomogeneous",
            Error::SearchSpaceTooLarge { .. } => "SearchSpaceTooLarge",
            Error::ParamOutOfRange(_) => "ParamOutOfRange",
            Error::Syntax { .. } => "SyntaxError",
            Error::NonHomogeneousLine { .. } => "NonHomogeneous",
            Error::UnknownVariable { .. } => "UnknownVariable",
            Error::Io(_) => "Io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
