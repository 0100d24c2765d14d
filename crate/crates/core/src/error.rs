use thiserror::Error;

/// Errors raised by the word, eraser, automaton and catalog layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet must not be empty")]
    EmptyAlphabet,
    #[error("duplicate symbol `{0}` in alphabet")]
    DuplicateSymbol(String),
    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(String),
    #[error("alphabet mismatch: expected {{{expected}}}, found {{{found}}}")]
    AlphabetMismatch { expected: String, found: String },
    #[error("cannot parse `{text}` as a word: {reason}")]
    WordSyntax { text: String, reason: String },
    #[error("lasso period must be nonempty")]
    EmptyPeriod,
    #[error("eraser `{0}` is also a base symbol")]
    EraserInBase(String),
    #[error("operation needs exactly one eraser, alphabet has {0}")]
    NotSingleEraser(usize),
    #[error("eraser evaluation undefined at position {0}")]
    Undefined(usize),
    #[error("word is not in T: prefix of length {0} has more 2s than 1s")]
    NotInT(usize),
    #[error("malformed eraser code at position {0}")]
    Decode(usize),
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),
    #[error("cannot import automaton: {0}")]
    Import(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unknown language `{0}`")]
    UnknownLanguage(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
