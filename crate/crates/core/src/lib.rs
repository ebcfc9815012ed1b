//! Exact algebra of quadratic forms, split formations and their gluing over
//! the integers and the Laurent ring `Z[t, 1/t]`.
//!
//! Everything is built on [`Laurent`], a sparse Laurent polynomial with
//! arbitrary-precision coefficients, optionally reduced modulo an integer.
//! The integers are the exponent-zero slice of the same type, so one code
//! path serves both rings.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, reports and the
//! command line live in the companion `quadform-cli` crate.

#![no_std]

extern crate alloc;

pub mod constructions;
pub mod ell;
pub mod error;
pub mod formations;
pub mod forms;
pub mod glue;
pub mod matrix;
pub mod ring;
pub mod snf;
pub mod solve;

pub use error::Error;
pub use formations::{SplitFormation, StableIso};
pub use forms::{Eps, QuadForm};
pub use glue::{ExtendedForm, PrimEmbedding};
pub use matrix::Matrix;
pub use ring::{Laurent, Ring};

/// Exponent window used by every bounded search unless a caller overrides it.
pub const DEFAULT_DEGREE_BOUND: u32 = 8;

/// Outcome of a comparison that may be undecidable within the search bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    Equal(W),
    Distinct(alloc::string::String),
    Unknown,
}

impl<W> Verdict<W> {
    pub fn is_equal(&self) -> bool {
        matches!(self, Verdict::Equal(_))
    }

    pub fn is_distinct(&self) -> bool {
        matches!(self, Verdict::Distinct(_))
    }
}
