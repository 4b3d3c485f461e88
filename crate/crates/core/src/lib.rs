#![no_std]
//! Exact circuit imbalance measures of rational subspaces, circuit
//! augmentation for linear programs, proximity bounds and Graver bases.

extern crate alloc;

pub mod augment;
pub mod error;
pub mod generate;
pub mod graver;
pub mod imbalance;
pub mod linalg;
pub mod lp;
pub mod matrix;
pub mod num;
pub mod proximity;
pub mod subspace;

pub use error::{Error, Result};
pub use matrix::RatMatrix;
pub use num::Rational;
pub use subspace::{ElementaryVector, Subspace};
