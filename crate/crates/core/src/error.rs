// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("radix must be at least 2 (got {0})")]
    InvalidRadix(u32),
    #[error("table length {got} does not match k^n = {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("value {value} is out of range for radix {k}")]
    ValueOutOfRange { value: u32, k: u8 },
    #[error("variable x{index} is out of range for arity {n}")]
    VariableOutOfRange { index: usize, n: usize },
    #[error("point has {got} coordinates, expected {expected}")]
    PointLength { expected: usize, got: usize },
    #[error("table with k^n = {k}^{n} cells exceeds the limit of {limit} cells")]
    TooLarge { k: u8, n: usize, limit: u64 },
    #[error("invalid variable ordering: {0}")]
    InvalidOrdering(String),
    #[error("variable set {set} is not contained in Ess(f) = {ess}")]
    NotEssential { set: String, ess: String },
    #[error("empty variable set is not allowed here")]
    EmptySet,
    #[error("set {0} is separable")]
    Separable(String),
    #[error("function is not a subfunction of the target")]
    NotSubfunction,
    #[error("diagram must be reduced")]
    NotReduced,
    #[error("functions have different shapes: ({0}) vs ({1})")]
    ShapeMismatch(String, String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("matrix is singular over Z_{0}")]
    SingularMatrix(u8),
    #[error("radix {0} is not prime; linear and affine groups need a field")]
    NonPrimeRadix(u8),
    #[error("invalid transformation: {0}")]
    InvalidTransformation(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid format: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
