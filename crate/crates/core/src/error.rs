use alloc::string::String;

/// Failures of the exact kernel and the algebra operations built on it.
///
/// Verdicts such as "not flat" or "not H-solvable" are reported in result
/// types, never through this enum; these variants mean the inputs were
/// malformed or a stated precondition does not hold.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
  #[error("dimension mismatch: expected {expected}, found {found}")]
  DimensionMismatch { expected: usize, found: usize },

  #[error("operator {name} does not square to -Id")]
  NotAlmostComplex { name: String },

  #[error("quaternionic relations fail: {failed}")]
  NotQuaternionic { failed: String },

  #[error("operator {name} is not integrable")]
  NotIntegrable { name: String },

  #[error("matrix is not nilpotent")]
  NotNilpotent,

  #[error("matrix is not unipotent")]
  NotUnipotent,

  #[error("operator for basis vector {index} is not nilpotent")]
  GeneratorNotNilpotent { index: usize },

  #[error("subspace is not invariant: {what}")]
  NotInvariant { what: String },

  #[error("restricted connection is not flat")]
  NotFlat,

  #[error("restricted holonomy is not unipotent")]
  NotUnipotentRep,

  #[error("no non-zero parallel covector exists")]
  NoParallelCovector,

  #[error("internal inconsistency: {0}")]
  Internal(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
