//! Structure extraction for irreducible covariant representations: stabilizer,
//! multiplicity, block permutations, projective factors and cocycles; the
//! cyclic canonical form; the S₃ classification.

mod cyclic;
mod projective;
mod s3;
mod structure;

pub use cyclic::{build_cyclic_irrep, cyclic_analyze, periodize, CyclicReport};
pub use projective::{scalar_ratio, ProjectiveRep};
pub use s3::{classify_s3, display_matrix, S3Case, S3Class};
pub use structure::{
    analyze, check_structure, commutant_invariance_defect, ergodic_fixed_dim, factor_tensor, homogeneous_irreducibility,
    StructureChecks, StructureReport, BLOCK_EPS, RECONSTRUCTION_EPS,
};
