use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid dimension {0}: need n >= 2")]
    InvalidDimension(usize),
    #[error("unbound symbol `{0}`")]
    UnboundSymbol(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid algebra definition: {0}")]
    InvalidAlgebra(String),
    #[error("sym_product needs at least one factor")]
    EmptyProduct,
    #[error("not expressible over the generating set: {0}")]
    Inexpressible(String),
    #[error("incompatible realization: {0}")]
    IncompatibleRealization(String),
    #[error("no realization: relations {0:?} admit no nondegenerate solution")]
    NoRealization(Vec<String>),
}

pub type Result<T> = std::result::Result<T, Error>;
