use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("double cover is not normal (branch form has a repeated factor)")]
    NonNormal,
    #[error("kernel basis: degree bound {bound} exhausted with {found} of {expected} generators")]
    KernelBound { bound: i64, found: usize, expected: usize },
    #[error("no rational Weierstrass point over {0}; use a field where the branch form has a root")]
    NoRationalRoot(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
