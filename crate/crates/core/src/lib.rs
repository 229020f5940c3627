//! Exact conditional distributions of the m-th longest runs of sequences
//! built from `k` letter types with fixed letter counts.
//!
//! Two orderings of run lengths are supported:
//!
//! * **per-letter**: runs are ranked separately within each letter type, so
//!   `l_m^(i)` is the `(m+1)`-th longest run of letter `i`;
//! * **whole-system**: every run is ranked together regardless of letter, so
//!   `l_m` is the `(m+1)`-th longest run of the whole sequence.
//!
//! Counting follows a two-step scheme. Each letter type is first counted on
//! its own (how many ways `n` identical elements fall into `r` runs under a
//! length restriction, see [`kernels`]); those single-letter counts are then
//! glued together by the number of ways to interleave run blocks without two
//! blocks of the same letter touching (see [`assembly`]). All arithmetic is
//! exact: counts are big integers and probabilities are reduced fractions.
//!
//! The crate is `no_std` (with `alloc`) when the default `std` feature is
//! disabled.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod assembly;
pub mod combinatorics;
mod error;
pub mod kernels;
pub mod oracle;
pub mod stats;
pub mod verify;

pub use assembly::{Composition, Counter, PerLetterSpec, RestrictionSet, WholeSpec};
pub use combinatorics::{binomial, multinomial, BinomialTable, ExactCount, ExactProbability, SignedExact};
pub use error::{Error, Result};
pub use oracle::RunProfile;
pub use stats::{Definition, DistributionTable, MomentSummary, TestResult};
