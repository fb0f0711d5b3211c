//! Crossed products `A ⋊ G`: the matrix model, twisted convolution, spectral
//! projections and fixed-point algebras.

mod model;
mod spectral;

pub use model::{build_crossed_model, crossed_adjoint, crossed_multiply, CrossedElement, CrossedModel};
pub use spectral::{fixed_point_algebra, projection_matrix, spectral_projection, spectral_rank, FixedPointAlgebra};
