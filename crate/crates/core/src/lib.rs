#![no_std]
// Index loops mirror the formulas (c^k_{ij} and friends) more clearly than iterators.
#![allow(clippy::needless_range_loop)]
extern crate alloc;

pub mod cartan;
pub mod cdga;
pub mod complex;
pub mod error;
pub mod free;
pub mod graded;
pub mod hodge;
pub mod lie;
pub mod matrix;
pub mod minimal;
pub mod poly;
#[cfg(feature = "random")]
pub mod random;

pub use complex::{ChainMap, Complex, HomologyReport};
pub use error::{Error, Result};
pub use graded::GradedSpace;
pub use matrix::{Matrix, Rational};
pub use poly::{Generator, GeneratorSet, Monomial, Polynomial};
