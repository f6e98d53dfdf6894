//! Kashaev invariants and quantum hyperbolic link invariants of braid closures.
//!
//! The crate is organised bottom-up: [`specfun`] holds the cyclotomic
//! functions, [`tensor`] the dense tensor algebra, [`qh_core`] the matrix
//! dilogarithms, braidings, walls and R-matrices, [`kashaev`] the Kashaev
//! R-matrix and its relation to the QH tensors, [`links`] braid closures and
//! puzzles, and [`asympt`] the large-`N` figure-eight experiments.
//!
//! Conventions used throughout: tensors are stored upper indices first and
//! composed as matrices (`compose(a, b) = a·b`). Relations "up to sign and
//! `N`-th roots of unity" are decided with one global witness per tensor.

pub mod asympt;
pub mod checks;
pub mod error;
pub mod kashaev;
pub mod links;
pub mod qh_core;
pub mod specfun;
pub mod tensor;

pub use error::{Error, Result};
pub use specfun::{RootSystem, C64};
pub use tensor::DenseTensor;
