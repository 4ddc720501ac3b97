//! Real points of the SL(3,C)-character variety of Z and of free groups.
//!
//! The crate classifies elements up to conjugacy in the three real forms
//! SL(3,R), SU(3) and SU(2,1), enumerates the fibers of the comparison map
//! from a real quotient to the real points of the complex quotient, classifies
//! Galois 1-cocycles of the stabilizers, and lifts real characters of good
//! representations to representations into a (twisted) real form.

pub mod cohomology;
pub mod error;
pub mod lifting;
pub mod linalg3;
pub mod quotients;
pub mod real_forms;
pub mod sampling;
pub mod su21;

pub use error::{Error, Result};
