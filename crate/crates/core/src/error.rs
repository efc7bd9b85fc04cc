use thiserror::Error;

use crate::field::FieldSpec;

/// Errors produced by the algebra and linear-algebra kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two operands live in different fields.
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),

    /// Inversion or division by the zero scalar.
    #[error("division by zero")]
    DivisionByZero,

    /// A prime-field modulus that is not prime.
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),

    /// Matrix dimensions incompatible with the requested operation.
    #[error("shape mismatch: {lhs_rows}x{lhs_cols} vs {rhs_rows}x{rhs_cols}")]
    ShapeMismatch {
        lhs_rows: usize,
        lhs_cols: usize,
        rhs_rows: usize,
        rhs_cols: usize,
    },

    /// An entry that was required to be an integer is not.
    #[error("entry at ({row}, {col}) is not an integer: {value}")]
    NotInteger {
        row: usize,
        col: usize,
        value: String,
    },

    /// An 8x8 map that does not lie in the 14-dimensional derivation space.
    /// The coordinates point at the first entry where reconstruction fails
    /// (1-based, as in the generic-matrix display).
    #[error("matrix is not in the derivation span: first mismatch at entry ({row}, {col})")]
    NotInSpan { row: usize, col: usize },

    /// A bracket of two basis derivations failed to reconstruct, so the
    /// candidate space is not closed under the commutator.
    #[error("bracket [x{i}, x{j}] left the candidate derivation span")]
    NotClosed { i: usize, j: usize },

    /// The pinned parameter positions are not a free coordinate set for the
    /// computed kernel.
    #[error("pinned parameter positions are not free coordinates of the solved kernel")]
    ParameterizationMismatch,

    /// Malformed textual or JSON input. The message carries the position.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
