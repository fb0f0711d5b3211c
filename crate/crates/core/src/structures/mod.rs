//! Finite groups, block C*-algebras, *-automorphisms, actions and character tables.

mod action;
mod algebra;
mod chartab;
mod group;

pub use action::{GeneratorAction, GroupAction};
pub use algebra::{AlgElement, MatAlg, StarAut};
pub use chartab::{character_table, CharacterTable};
pub use group::{
    coset_index, make_cyclic_group, make_symmetric_group_3, right_coset_reps, s3_permutations, subgroup_closure, FiniteGroup, Subgroup, S3_E,
    S3_ETA, S3_ETA2, S3_TAU,
};
