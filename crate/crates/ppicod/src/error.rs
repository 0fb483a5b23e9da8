use thiserror::Error;

use crate::instance::Violation;

/// Everything that can go wrong across the crate.
///
/// Receiver and message indices inside error messages are 1-based, matching
/// the file formats; the structured fields stay 0-based like the rest of the
/// API.
#[derive(Debug, Error)]
pub enum Error {
    #[error("field order {0} is not prime")]
    NotPrime(u64),

    #[error("cannot invert zero in GF({q})")]
    ZeroInverse { q: u64 },

    #[error("element {value} is not a canonical residue mod {q}")]
    ElementOutOfRange { value: u64, q: u64 },

    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    #[error("column index {col} out of range for a matrix with {cols} columns")]
    ColumnOutOfRange { col: usize, cols: usize },

    #[error("receiver {} out of range: instance has {n} receivers", .index + 1)]
    ReceiverOutOfRange { index: usize, n: usize },

    #[error("message {} out of range: instance has {m} messages", .index + 1)]
    MessageOutOfRange { index: usize, m: usize },

    #[error("invalid instance: {}", format_violations(.0))]
    InvalidInstance(Vec<Violation>),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("search space of {required} objects exceeds the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("systematic MDS construction needs a field with q >= m, got q = {q} and m = {m}")]
    MdsFieldTooSmall { q: u64, m: usize },

    #[error("decoding choice sends receiver {} to message {}, which it already holds", .receiver + 1, .message + 1)]
    DecodingIntoSideInfo { receiver: usize, message: usize },

    #[error("no threshold-feasible edge for receiver(s) {}", format_indices(.0))]
    InfeasibleEta(Vec<usize>),

    #[error("invalid greedy parameters: {0}")]
    Params(String),

    #[error("audit failed: {0}")]
    Audit(String),
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

fn format_indices(indices: &[usize]) -> String {
    indices
        .iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(", ")
}
