use std::fmt;

use thiserror::Error;

/// Location of a token in source text. Lines and columns are 1-based and
/// counted in characters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Span {
    pub line: usize,
    pub column: usize,
    pub length: usize,
}

impl Span {
    pub fn new(line: usize, column: usize, length: usize) -> Self {
        Span { line, column, length }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{span}: syntax error: {message}")]
    Syntax { span: Span, message: String },

    #[error("{span}: chained product `a.b.c` is ambiguous in a non-associative algebra; add parentheses")]
    ChainedDot { span: Span },

    #[error("{span}: `{name}` takes {expected} argument(s), found {found}")]
    Arity {
        span: Span,
        name: String,
        expected: usize,
        found: usize,
    },

    #[error("type error: {0}")]
    Type(String),

    #[error("{span}: unknown symbol `{name}`")]
    UnknownSymbol { name: String, span: Span },

    #[error("{span}: undefined name `{name}`")]
    UndefinedName { name: String, span: Span },

    #[error("unknown rule set `{0}`")]
    RuleSetUnknown(String),

    #[error("invalid rule `{name}`: {message}")]
    InvalidRule { name: String, message: String },

    #[error("rule set `{rule_set}` did not reach a fixpoint within {cap} passes")]
    NonTermination { rule_set: String, cap: usize },

    #[error("no value assigned to symbol `{0}`")]
    MissingSymbol(String),

    #[error("{0}")]
    Io(String),

    #[error("unknown session `{0}`")]
    UnknownSession(String),

    #[error("golden `{file}`: {message}")]
    Golden { file: String, message: String },

    #[error("`{name}` is declared as a {existing} symbol")]
    Redeclared { name: String, existing: String },

    #[error("step {index}: {source}")]
    Step {
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn span(&self) -> Option<Span> {
        match self {
            Error::Syntax { span, .. }
            | Error::ChainedDot { span }
            | Error::Arity { span, .. }
            | Error::UnknownSymbol { span, .. }
            | Error::UndefinedName { span, .. } => Some(*span),
            Error::Step { source, .. } => source.span(),
            _ => None,
        }
    }

    pub(crate) fn type_error(msg: impl Into<String>) -> Self {
        Error::Type(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
