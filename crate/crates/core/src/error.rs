use thiserror::Error;

use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("partition parts must be positive, got {0:?}")]
    NonPositivePart(Vec<u32>),
    #[error("partition parts must be weakly decreasing, got {0:?}")]
    NotDecreasing(Vec<u32>),
    #[error("partitions of different sizes: {0} and {1}")]
    SizeMismatch(u32, u32),
    #[error("{0} is not self-conjugate")]
    NotSelfConjugate(Partition),
    #[error("(n-r, r) needs 0 <= r <= n/2, got n = {n}, r = {r}")]
    TwoRowOutOfRange { n: u32, r: u32 },
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("{0} is not {1}-regular")]
    NotPRegular(Partition, u32),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithmeticError {
    #[error("cannot combine values in Q(sqrt({0})) and Q(sqrt({1}))")]
    RadicandMismatch(String, String),
    #[error("(a + b sqrt(D))/2 with a = {a}, b = {b}, D = {d} is not an algebraic integer")]
    NotAlgebraicInteger { a: String, b: String, d: String },
    #[error("radicand must be non-zero")]
    ZeroRadicand,
    #[error("value {0} is not rational")]
    NotRational(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("n = {n} is outside the supported range {min}..={max}")]
    OutOfBounds { n: u32, min: u32, max: u32 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("table is not square ({rows} rows, row {row} has {cols} entries)")]
    NotSquare { rows: usize, row: usize, cols: usize },
    #[error("table has no class sizes")]
    MissingClassSizes,
    #[error("required row {0} is not labelled")]
    MissingRow(Partition),
    #[error("invalid labels: {0}")]
    InvalidLabels(String),
    #[error(transparent)]
    Arithmetic(#[from] ArithmeticError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BrauerError {
    #[error("decomposition matrix has the wrong shape: {0}")]
    Shape(String),
    #[error("decomposition matrix failed validation: {0}")]
    Invalid(String),
    #[error("restriction to the alternating group needs odd p, got p = {0}")]
    EvenCharacteristic(u32),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelabelError {
    #[error("not a character table of the claimed kind: {reason}")]
    NotACharacterTable { reason: String, trace: Vec<String> },
    #[error("element orders are not determined by the table: column {column} gets orders {orders:?}")]
    AmbiguousOrders { column: usize, orders: Vec<u64> },
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Brauer(#[from] BrauerError),
}

impl RelabelError {
    pub(crate) fn invalid(reason: impl Into<String>, trace: &[String]) -> Self {
        RelabelError::NotACharacterTable {
            reason: reason.into(),
            trace: trace.to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutError {
    #[error("rows {0} and {1} are equal, so a row permutation does not determine a column permutation")]
    DuplicateRows(usize, usize),
    #[error("columns {0} and {1} are equal, so a column permutation does not determine a row permutation")]
    DuplicateColumns(usize, usize),
    #[error("matrix is not square")]
    NotSquare,
    #[error("permutation groups act on different numbers of points ({0} and {1})")]
    DegreeMismatch(usize, usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("malformed document: {0}")]
    Schema(String),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Arithmetic(#[from] ArithmeticError),
}
