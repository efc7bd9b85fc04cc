//! Exact construction of the 14-dimensional Lie algebra of derivations of
//! the split octonions.
//!
//! The pipeline: split octonions are represented as Zorn vector matrices
//! over an exact field (the rationals or a prime field); the Leibniz rule
//! on basis pairs becomes a 512 x 64 linear system whose nullspace is the
//! derivation algebra; exact elimination solves it, a fixed set of matrix
//! positions labels the solutions by 14 parameters, and commutators of the
//! labeled basis yield the structure constants, the Lie axiom checks, and
//! the Killing form. A reference copy of the structure table ships with
//! the crate for comparison.

pub mod derivation;
pub mod error;
pub mod field;
pub mod lie;
pub mod matrix;
pub mod smith;
pub mod zorn;

pub use derivation::{
    assemble_leibniz_system, generic_derivation, is_derivation, leibniz_residual, recon,
    solve_derivations, DerivationParams, DerivationSpace, Map8, PARAM_NAMES,
};
pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use lie::{
    adjoint_matrix, golden_table, golden_table_over, killing_form, structure_table,
    verify_antisymmetry, verify_jacobi, verify_killing_invariance, BracketTable,
};
pub use matrix::{Matrix, NullspaceBasis};
pub use smith::{rank_mod_p, smith_diagonal};
pub use zorn::{element_by_name, octonion_basis, Coord8, Vec3, ZornMatrix, ELEMENT_NAMES};
