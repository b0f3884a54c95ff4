use thiserror::Error;

/// Errors produced by the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    #[error("{line}:{col}: sort violation: {msg}")]
    Sort { line: usize, col: usize, msg: String },

    #[error("sort mismatch: {0}")]
    SortMismatch(String),

    #[error("invalid identifier `{0}`")]
    BadIdent(String),

    #[error("not a code: {0}")]
    NotACode(String),

    #[error("expected {expected} free number variable(s), found {found}")]
    Arity { expected: usize, found: usize },

    #[error("term is not closed: variable `{0}` has no value")]
    OpenTerm(String),

    #[error("formula is not closed: free {0}")]
    NotClosed(String),

    #[error("empty {0}: at least one element is required")]
    Empty(&'static str),

    #[error("unbounded quantifier over `{0}` outside the bounded fragment")]
    Unbounded(String),

    #[error("no binding for variable `{0}`")]
    Unbound(String),

    #[error("unsupported in this context: {0}")]
    Unsupported(String),

    #[error("node budget exceeded: {size} nodes > budget {budget}")]
    Budget { size: u64, budget: u64 },

    #[error(
        "numeral of value {value} exceeds the tower limit of {limit} nodes; use a smaller pool or binary numerals"
    )]
    NumeralTooLarge { value: String, limit: u64 },

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn syntax_at(text: &str, offset: usize, msg: impl Into<String>) -> Self {
        let (line, col) = line_col(text, offset);
        Error::Syntax { line, col, msg: msg.into() }
    }

    pub(crate) fn sort_at(text: &str, offset: usize, msg: impl Into<String>) -> Self {
        let (line, col) = line_col(text, offset);
        Error::Sort { line, col, msg: msg.into() }
    }
}

/// 1-based line and column of a byte offset.
pub(crate) fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(text.len());
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let col = before.rfind('\n').map_or(offset, |i| offset - i - 1) + 1;
    (line, col)
}
