//! Exact character tables of symmetric and alternating groups, their Brauer
//! tables, reconstruction of row and column labels from an unlabelled table,
//! and automorphism groups of tables.

pub mod aut;
pub mod brauer;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod io;
mod linalg;
pub mod partition;
pub mod relabel;
pub mod tables;

use num_bigint::BigInt;

/// Exact character value: an integer or `(a + b√D)/2`.
pub type AlgebraicValue = exact::Quadratic<BigInt>;
/// Machine-word variant, handy for tests and small computations.
pub type SmallAlgebraicValue = exact::Quadratic<i64>;

pub use error::{ArithmeticError, AutError, BrauerError, FormatError, PartitionError, RelabelError, TableError};
pub use exact::{ClassFunction, Quadratic, QuadraticSum};
pub use partition::{partitions_of, CycleCounts, Partition};
pub use tables::{build_an_table, build_sn_table, CharLabel, CharTable, ClassLabel, GroupKind, Label, Sign};
