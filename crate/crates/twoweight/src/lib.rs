//! Two-weight codes over finite Frobenius rings.
//!
//! This crate implements an exact, table-driven computational pipeline for
//! linear codes with two nonzero homogeneous weights over direct products of
//! finite chain rings:
//!
//! * [`rings`] — fully materialised models of the finite chain rings of order
//!   `p`, `p²`, `p³` (and Galois rings of length 2), their direct products,
//!   generating characters, Möbius functions and homogeneous weight tables.
//! * [`codes`] — module shapes, generator matrices, codeword expansion,
//!   the proper/regular/projective property checks, weight enumerators and
//!   distance matrices.
//! * [`srg`] — exact strongly-regular-graph certification of the Cayley graph
//!   of a two-weight code, and the integer algebra tying graph spectra to
//!   code invariants.
//! * [`screening`] — the elimination pipeline for candidate graph parameter
//!   sets: spectrum integrality, unit-count divisibility, the subset-sum
//!   feasibility system and candidate ring/shape generation.
//! * [`search`] — the 0/1 Diophantine system whose solutions are generator
//!   matrices of two-weight codes with prescribed invariants, solved by an
//!   exact backtracking solver.
//! * [`constructions`] — the Hjelmslev-line family over chain rings of
//!   length 2, the Gray isometry onto first-order generalized Reed–Muller
//!   codes, and field-linearity checks of Gray images.
//! * [`report`] — batch ingestion of parameter tables and machine-readable
//!   reports for the `twoweight` command line tool.
//!
//! Everything is exact: weights are rationals, graph certification is integer
//! matrix algebra, and the search is an exhaustive backtracking enumeration
//! with explicit node caps. There is no floating point on any certifying
//! path and no randomness anywhere, so repeated runs are byte-identical.
//!
//! ```
//! use twoweight::rings::{parse_ring_spec, build_ring, hom_weight_table};
//! use twoweight::Rat;
//!
//! let spec = parse_ring_spec("Z4").unwrap();
//! let ring = build_ring(&spec).unwrap();
//! let w = hom_weight_table(&ring, Rat::from_integer(1)).unwrap();
//! // Lee weights on Z4: w(0)=0, w(1)=w(3)=1, w(2)=2.
//! assert_eq!(w.weight(2), Rat::from_integer(2));
//! ```

pub mod codes;
pub mod constructions;
pub mod report;
pub mod rings;
pub mod screening;
pub mod search;
pub mod srg;

#[cfg(doctest)]
mod book;

use thiserror::Error;

/// Exact rational scalar used for weights and weight parameters γ.
pub type Rat = num_rational::Ratio<i64>;

/// Errors produced anywhere in the pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// Ring-spec or file syntax error; `pos` is a byte offset where known.
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    /// Structurally valid input naming a ring outside the supported catalog.
    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),

    /// A configured resource bound was exceeded.
    #[error("{what} exceeds configured bound {limit}")]
    BoundExceeded { what: String, limit: u64 },

    /// An internal consistency check failed; this signals a construction bug,
    /// not bad input.
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    /// Input data that parses but violates a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn syntax(pos: usize, msg: impl Into<String>) -> Self {
        Error::Syntax { pos, msg: msg.into() }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn inconsistent(msg: impl Into<String>) -> Self {
        Error::Inconsistent(msg.into())
    }
}
