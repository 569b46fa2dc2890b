use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("operation requires p = 2, context has p = {0}")]
    UnsupportedPrime(u64),
    #[error("malformed sequence: {0}")]
    MalformedSequence(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("context error: {0}")]
    Context(String),
    #[error("no Steenrod action declared for `{generator}` (table bound {bound:?})")]
    MissingSteenrod {
        generator: String,
        bound: Option<u32>,
    },
    #[error("no coproduct declared for `{0}`")]
    MissingCoproduct(String),
    #[error("no image declared for `{0}`")]
    MissingImage(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error("engine inconsistency: {0}")]
    Inconsistency(String),
    #[error("search bound {0} exceeded")]
    SearchBound(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("presentation file, line {line}: {message}")]
    Presentation { line: usize, message: String },
    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
