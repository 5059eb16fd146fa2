//! Exact Lebesgue integration for nonnegative functions on finite measure
//! spaces.
//!
//! Everything is computed over arbitrary-precision rationals extended with
//! `±∞`; there is no floating point anywhere. The crate is organised bottom
//! up:
//!
//! * [`xreal`]: extended reals, finite sums, suprema of eventually-constant
//!   sequences.
//! * [`borel`]: countability bijections and the rational interval basis of
//!   the real line.
//! * [`sigma`]: finite spaces, generated σ-algebras, measurable functions.
//! * [`measure`]: measures stored by atom weights and the classical lemmas.
//! * [`simple`]: simple functions, the canonizer and their integral.
//! * [`lintp`]: the integral of nonnegative measurable functions, adapted
//!   sequences, monotone convergence and Fatou.
//! * [`specfile`] and [`suite`]: the text format read by the command line
//!   tool and the randomized theorem suite it runs.

pub mod borel;
pub mod error;
pub mod lintp;
pub mod measure;
pub mod sigma;
pub mod simple;
pub mod specfile;
pub mod suite;
pub mod xreal;

pub use error::{Error, Result};
pub use xreal::{Rational, Tail, TaggedSeq, XReal};
