//! Finite-dimensional C*-algebras under finite group actions.
//!
//! * [`numkit`] – dense complex linear algebra and the tolerance policy.
//! * [`structures`] – finite groups, block algebras, automorphisms, actions, character tables.
//! * [`reps`] – intertwiners, irreducibility, equivalence, decomposition, regular representations.
//! * [`crossed`] – crossed-product matrix models, twisted convolution, spectral projections.
//! * [`analyzer`] – structure reports for irreducible covariant representations.
//! * [`fixtures`] – the worked examples as ready-made inputs.

pub mod analyzer;
pub mod crossed;
pub mod error;
pub mod fixtures;
pub mod numkit;
pub mod random;
pub mod reps;
pub mod structures;

pub use error::{Error, Result};
