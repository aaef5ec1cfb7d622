//! Exact-arithmetic engine for verifying supercongruences.
//!
//! The crate computes, entirely in exact arithmetic, the objects that appear
//! on both sides of a family of supercongruences between truncated
//! hypergeometric sums and Fourier coefficients of eta-quotient newforms:
//!
//! - residues and rationals modulo odd prime powers ([`arith`]);
//! - generalized harmonic numbers and binomial expansion congruences
//!   ([`harmonic`]);
//! - the Apery numbers and their Apery-like companions ([`apery`]);
//! - partial-fraction identities behind the harmonic-sum machinery
//!   ([`identities`]);
//! - truncated hypergeometric sums and the X/Y/Z character-sum companions
//!   ([`hyper`]);
//! - eta-quotient q-expansions and newform coefficients ([`qseries`]);
//! - Gaussian hypergeometric series over prime fields ([`gauss`]).
//!
//! The crate is `no_std` (with `alloc`); IO, caching and the command-line
//! harness live in the companion `supercong-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod apery;
pub mod arith;
pub mod gauss;
pub mod harmonic;
pub mod hyper;
pub mod identities;
pub mod qseries;
pub mod report;

pub use arith::{PrimePowerModulus, ResidueClass};
pub use report::{CongruenceReport, Verdict};

/// Re-exported scalar types every module builds on.
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
