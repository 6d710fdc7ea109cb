use thiserror::Error;

/// Errors raised by the combinatorial layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("invalid block: {0}")]
    InvalidBlock(String),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("diagram is not oriented: {0}")]
    NotOriented(String),

    #[error("invalid window: p = {p} exceeds q = {q}")]
    InvalidWindow { p: i64, q: i64 },

    #[error("weight {0} lies outside the window")]
    OutsideWindow(String),

    #[error("expected a vector in the {expected} basis, found the {found} basis")]
    WrongBasis { expected: char, found: char },

    #[error("basis change did not terminate after {0} steps")]
    NonTerminating(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
