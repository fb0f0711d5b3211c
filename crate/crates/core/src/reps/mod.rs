//! Representation engine: intertwiners, commutants, equivalence, decomposition
//! and regular covariant representations.

mod decompose;
mod intertwine;
mod regular;
mod rep;

pub use decompose::{decompose, equivalent_by_decomposition, Component, IrrepDecomposition};
pub use intertwine::{are_equivalent, commutant_basis, commutant_dim, intertwiners, is_irreducible, Equivalence};
pub(crate) use intertwine::equivalence_of_irreducibles;
pub use regular::{regular_irreducibility_criterion, regular_representation};
pub use rep::{star_closed_pairs, ActionSpec, CovariantRep, CovariantRepSpec, Rep, UNITARY_PREFIX};
