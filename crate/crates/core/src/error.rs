use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("unknown root system {0:?}")]
    UnknownRootSystem(String),
    #[error("non-primitive normal ({0}, {1})")]
    NonPrimitive(i64, i64),
    #[error("facet normal ({0}, {1}) is not on the dominant side")]
    NotDominant(i64, i64),
    #[error("unbounded")]
    Unbounded,
    #[error("redundant facet {0}")]
    RedundantFacet(usize),
    #[error("degenerate cell: {0}")]
    DegenerateCell(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("integrability error: {0}")]
    Integrability(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
}

impl Error {
    /// Whether the error is the caller's fault (bad input, out-of-range request)
    /// rather than an internal failure.
    pub fn is_user_error(&self) -> bool {
        !matches!(self, Error::Quadrature(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
