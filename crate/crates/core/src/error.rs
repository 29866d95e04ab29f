use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("invalid symbol name {0:?}")]
    InvalidName(String),
    #[error("duplicate symbol {0}")]
    DuplicateSymbol(String),
    #[error("too many symbols ({0})")]
    TooManySymbols(usize),
    #[error("unknown symbol {0}")]
    UnknownSymbol(String),
    #[error("symbol index {0} is not in the signature")]
    ForeignSymbol(u16),
}

/// A presentation or term could not be parsed. Line and column are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("duplicate generator {0}")]
    DuplicateGenerator(String),
    #[error("invalid generator name {0:?}")]
    InvalidGenerator(String),
    #[error("generator {0} clashes with an operation symbol")]
    GeneratorShadowsSymbol(String),
    #[error("relation {relation} refers to undeclared generator index {generator}")]
    UnknownGenerator { relation: usize, generator: u32 },
    #[error("relation {relation}: {source}")]
    BadWord { relation: usize, source: WordError },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("signature mismatch: {left:?} vs {right:?}")]
pub struct SignatureMismatch {
    pub left: Vec<String>,
    pub right: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyclicError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("the free algebra P/1 has no cycle")]
    FreeAlgebraHasNoCycle,
    #[error("element representative is not canonical")]
    NotCanonical,
    #[error("witness does not factor the cycle words (need beta alpha = source, alpha beta = target)")]
    InvalidWitness,
    #[error("{q} does not divide {p}")]
    NotDivisor { p: usize, q: usize },
    #[error("graph depth {depth} is smaller than the cycle length {cycle}")]
    DepthTooSmall { depth: usize, cycle: usize },
    #[error(transparent)]
    Signature(#[from] SignatureMismatch),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("term of length {len} does not fit in a ball of bound {bound}")]
    BoundExceeded { len: usize, bound: usize },
    #[error("ball of bound {bound} has too many terms")]
    BallTooLarge { bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairingError {
    #[error("pairing arguments must be positive, got ({0}, {1})")]
    NonPositive(u64, u64),
    #[error("pairing of ({0}, {1}) overflows u64")]
    Overflow(u64, u64),
    #[error("unpair needs a positive argument")]
    Zero,
}
