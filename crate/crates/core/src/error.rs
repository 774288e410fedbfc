use thiserror::Error;

use crate::stirling::Kind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("could not parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("log_coeff is defined for n >= 1, got n = 0")]
    LogCoeffIndex,

    #[error("series order must be at least 1")]
    ZeroOrder,

    #[error("series orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("{op} requires a series with zero constant term")]
    NonzeroConstantTerm { op: &'static str },

    #[error("coefficient index {index} is outside a series of order {order}")]
    CoefficientOutOfRange { index: usize, order: usize },

    #[error("r must be a positive integer")]
    ZeroR,

    #[error("table holds rows up to n = {nmax}, requested n = {n}")]
    RowOutOfRange { n: usize, nmax: usize },

    #[error("table mismatch: expected {expected}, found {found}")]
    TableMismatch { expected: String, found: String },

    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("{kind} kind entry (n={n}, k={k}, r={r}) is not an integer at λ = 0")]
    NotIntegral {
        kind: Kind,
        n: usize,
        k: usize,
        r: usize,
    },

    #[error("{what} exceeds enumeration budget ({value} > {limit})")]
    BudgetExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
