use thiserror::Error;

/// Errors raised by the analysis routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),
    #[error("letter index {index} out of range for an alphabet of {letters} letters")]
    InvalidWord { index: usize, letters: usize },
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("automaton is not synchronizing")]
    NotSynchronizing,
    #[error("{what} exceeded the configured cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("degenerate pair: both states are {0}")]
    DegeneratePair(usize),
    #[error("operation needs at least two states")]
    TrivialAutomaton,
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("partition is not a congruence of the automaton")]
    NotACongruence,
    #[error("not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("empty ideal")]
    EmptyIdeal,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("automaton is not semisimple")]
    NotSemisimple,
    #[error("wrong class: expected {expected}, found {found}")]
    WrongClass { expected: String, found: String },
    #[error("the zero ideal is the whole monoid; the Rees quotient is trivial")]
    NoQuotient,
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
