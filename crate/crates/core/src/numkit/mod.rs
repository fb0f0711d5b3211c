//! Dense complex linear algebra with one explicit tolerance policy.

mod linalg;
mod matrix;
mod sylvester;
mod tolerance;

pub use linalg::{
    cluster_sorted, hermitian_eigen, is_negligible, normalize_phase, nullspace, nullspace_matrix, nullspace_matrix_floored, polar_unitary,
    range_basis, range_basis_floored, rank, reassemble_spectral, unitary_eigenspaces,
};
pub use matrix::{c, commutator_norm, conjugate, root_of_unity, CMatrix, C64, I, ONE, ZERO};
pub use sylvester::{solve_star_sylvester_family, solve_sylvester_family};
pub use tolerance::Tolerance;
