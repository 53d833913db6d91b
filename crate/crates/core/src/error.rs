use thiserror::Error;

/// Errors raised by constructions and decision procedures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("reflexive independence pair ({0}, {0})")]
    ReflexivePair(char),
    #[error("unknown letter '{0}'")]
    UnknownLetter(char),
    #[error("letter '{0}' declared twice")]
    DuplicateLetter(char),
    #[error("traces have no common upper bound")]
    NoUpperBound,
    #[error("operands are over different dependence alphabets")]
    AlphabetMismatch,
    #[error("automaton is not weak: an SCC mixes accepting and rejecting states")]
    NotWeak,
    #[error("language is not trace-closed")]
    NotTraceClosed,
    #[error("automaton is not I-diamond at state {state} for letters ({a}, {b})")]
    NotIDiamond { state: usize, a: char, b: char },
    #[error("trace closure did not stabilize within {rounds} rounds")]
    NotStabilized { rounds: usize },
    #[error("size limit exceeded: {what} exceeds {limit}")]
    SizeLimit { what: &'static str, limit: usize },
    #[error("generators of independent letters '{a}' and '{b}' do not commute")]
    MorphismNotOnTraces { a: char, b: char },
    #[error("({s}, {e}) is not a linked pair")]
    NotLinked { s: usize, e: usize },
    #[error("letter '{letter}' has no local state {state}")]
    UnknownLocalState { letter: char, state: usize },
    #[error("word length {len} exceeds the oracle bound {bound}")]
    BoundExceeded { len: usize, bound: usize },
    #[error("formula nesting depth exceeds {limit}")]
    FormulaTooDeep { limit: usize },
    #[error("wrong acceptance condition: expected {expected}")]
    WrongAcceptance { expected: &'static str },
    #[error("invalid automaton: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
