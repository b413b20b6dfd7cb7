//! Exact arithmetic for the splitting of Verlinde bundles on elliptic curves.
//!
//! Scalars live in cyclotomic fields ([`cyclo`]). The finite Heisenberg group
//! and its Schrödinger representation are in [`heisenberg`], traces on the
//! derived representations in [`chartab`], and the multiplicity formulas and
//! decompositions in [`verlinde`]. [`suites`] runs the closed-form versus
//! oracle sweeps and [`output`] serializes reports.

pub mod arith;
pub mod chartab;
pub mod cyclo;
pub mod error;
pub mod heisenberg;
pub mod output;
pub mod suites;
pub mod verlinde;

pub use cyclo::{CycloNum, Rat};
pub use error::{Error, Result};
pub use heisenberg::HeisElem;
pub use verlinde::{decompose, Character, DecompositionReport};
