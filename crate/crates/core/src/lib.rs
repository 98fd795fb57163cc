//! Separating hyperplanes of integral polytopes, decided exactly.
//!
//! The crate is `no_std` (it needs `alloc`). All arithmetic is over
//! arbitrary-precision rationals; nothing here uses floating point.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod birkhoff;
pub mod cube;
mod error;
pub mod exactmath;
mod limits;
pub mod orderchain;
pub mod polymodel;
pub mod poset;

pub use error::Error;
pub use exactmath::{RatMatrix, RatVector, Rational};
pub use limits::Limits;
pub use polymodel::{CutFailure, CutReport, Hyperplane, Sign, SignPattern, SkeletonModel};
pub use poset::{ElementSet, Poset};
