//! Block codes built from tables of binary and ternary syntactic parameters.
//!
//! A parameter table turns into a q-ary block code: one codeword per
//! language, one letter per retained parameter column. On top of that code
//! the crate computes the classical parameters (block length n, dimension k,
//! minimum distance d, rate R, relative distance delta), positions the code
//! against the Gilbert-Varshamov, Hamming, Singleton and Plotkin bounds,
//! applies the three spoiling operations (extend, project, restrict) with a
//! law-checking harness, and samples or enumerates comparison ensembles.
//!
//! The crate is `no_std` (alloc required). Parsing, serialization and the
//! command line front end live in the companion `paramcodes` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bounds;
pub mod build;
pub mod code;
pub mod ensemble;
pub mod metrics;
pub mod spoil;
pub mod table;

pub use code::{Alphabet, Code, CodeError, Codeword, Letter};
pub use metrics::{CodeParameters, DistanceMatrix, RateBase};
pub use table::{LanguageRecord, ParamValue, ParameterTable};

/// Exact rational value, used wherever a quantity is a ratio of two small
/// integers (relative distances, delta coordinates).
pub type Rational = num_rational::Ratio<u64>;
