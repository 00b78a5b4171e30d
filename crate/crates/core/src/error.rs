use thiserror::Error;

/// Failures reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("partial quotients must be positive integers")]
    NonPositiveQuotient,
    #[error("operation requires a nonempty quotient sequence")]
    EmptySequence,
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("invalid transformation: {0}")]
    InvalidTransform(String),
    #[error("infeasible instance: {0}")]
    Infeasible(String),
    #[error("search space exceeds the cap of {cap}")]
    CapExceeded { cap: u64 },
    #[error("machine integer overflow")]
    Overflow,
    #[error("radicands {0} and {1} are incompatible for this operation")]
    IncompatibleRadicands(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("internal identity violated: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(what: &'static str, input: &str) -> Error {
    Error::Parse { what, input: input.to_string() }
}
