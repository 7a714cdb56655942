//! Adversarial constructions behind space lower bounds for longest increasing
//! subsequence (LIS), together with the brute-force oracles that check them.
//!
//! The crate is organised by construction:
//!
//! * [`lis`] exact LIS/LDS engines and the Erdős–Szekeres witness finder.
//! * [`ecc`] the binary and outer block codes the fooling sets are drawn from.
//! * [`order`] streaming orders, type-1/type-2 recognition and the multi-pass harness.
//! * [`gadget1`] the codeword interleaving gadget and the set-disjointness gadget.
//! * [`gadget2`] the grid matrix gadget, its valuation/serialisation and the grid path oracle.
//! * [`robp`] levelled read-once branching programs and the restriction-distinguisher machinery.
//! * [`comm`] two-party game functions and fooling-set certificates.
//!
//! Sequences and index sets are 1-indexed throughout; LIS is strictly increasing.

pub mod comm;
pub mod ecc;
mod error;
pub mod gadget1;
pub mod gadget2;
pub mod lis;
pub mod order;
pub mod robp;
pub mod rng;
pub mod suites;

pub use error::{Error, Result};
pub use lis::{IndexSet, Sequence};
