//! Right-angled Coxeter groups, their Hecke algebra deformations and the
//! operator calculus on the GNS space, with exact polynomial arithmetic.
//!
//! Everything here is `no_std` with `alloc`; IO and file formats live in the
//! companion CLI crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod catalog;
pub mod check;
pub mod clique;
pub mod error;
pub mod expansion;
pub mod graph;
pub mod growth;
pub mod hecke;
pub mod khintchine;
pub mod multipliers;
pub mod poly;
pub mod suites;
mod text;
pub mod word;

pub use clique::Clique;
pub use error::{Error, Result};
pub use expansion::{ExpansionTriple, OperatorTerm};
pub use graph::{CoxeterGraph, Gen};
pub use hecke::HeckeElement;
pub use poly::{PolyScalar, Rational};
pub use word::Word;
