//! Exact rational arithmetic, linear algebra and strict linear feasibility.

mod feasibility;
mod matrix;
mod rational;

pub use feasibility::{primitive_integer, satisfies, strict_feasibility};
pub use matrix::{affine_dimension, affinely_independent, nullspace, RatMatrix, RatVector};
pub use rational::Rational;
