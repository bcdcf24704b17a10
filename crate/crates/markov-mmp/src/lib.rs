//! Exact arithmetic for the birational geometry of plane degenerations.
//!
//! Everything here runs on arbitrary-precision integers and rationals; no
//! floating point is used anywhere.  The crate provides, bottom up:
//!
//! - [`hjcf`]: Hirzebruch-Jung continued fractions, their expansions,
//!   duals, blow-ups/downs, and zero continued fractions;
//! - [`wahl`]: Wahl chains, their duals, the binary tree generating all of
//!   them, and the second-kind chains attached to Markov-like triples;
//! - [`markov`]: Markov triples, mutations, branches, weights, Cohn words,
//!   and the weight-ratio limit;
//! - [`cqs`]: cyclic quotient singularities, the extremal P-resolution
//!   finder, wormholes, the Markov c.q.s. and its reduced form, the
//!   triangle-erasing reduction, and a Dedekind-sum identity;
//! - [`mori`]: extremal neighborhoods of types k1A/k2A, the
//!   flip/divisorial classification, and Mori sequences and trains;
//! - [`mmp`]: the flip-by-flip minimal model program for the degenerations
//!   attached to Markov triples, with two independent engines (closed-form
//!   tables and a surgery engine) plus text/JSON rendering;
//! - [`conjecture`]: arithmetic uniqueness checks scanning all integers,
//!   parallelized with rayon;
//! - [`verify`]: end-to-end verification suites used by the CLI and the
//!   acceptance tests;
//! - [`cli`]: the `markov-mmp` command-line interface.

pub mod cqs;
pub mod hjcf;
pub mod markov;
pub mod mori;
pub mod wahl;

pub use cqs::{Cqs, PRes};
pub use hjcf::{evaluate, expand, seq, Frac, HjSeq};
pub use markov::{MarkovTriple, TripleWeights};
pub use mori::{divisorial_train, k2a_invariants, mori_trains, K1A, K2A, MoriTrain, MoriType};
pub use wahl::WahlSing;

/// Arbitrary-precision integer used throughout the crate.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational used throughout the crate.
pub type Rat = num_rational::BigRational;

/// Shorthand for `Int::from`.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument violated a documented precondition.
    #[error("invalid input: {0}")]
    Invalid(String),
    /// An internal invariant that should hold for all valid inputs failed;
    /// indicates either corrupted data or a bug.
    #[error("invariant violated: {0}")]
    Invariant(String),
    /// A requested object does not exist (no P-resolution, no train, ...).
    #[error("not found: {0}")]
    NotFound(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
    pub fn not_found(msg: impl Into<String>) -> Self {
        Error::NotFound(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
