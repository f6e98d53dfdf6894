use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("singular input: {0}")]
    Singular(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error at token {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("{what} needs about {bytes} bytes, over the {limit} byte budget")]
    Infeasible { what: String, bytes: u128, limit: u128 },
    #[error("opened tangle is not proportional to the identity (residual {residual:.3e})")]
    NotScalar { residual: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
