//! Primes in generalized Piatetski-Shapiro sequences `floor(alpha n^c + beta)`.
//!
//! The crate is organised bottom-up:
//!
//! - [`arith`]: segmented sieve tables, Möbius and von Mangoldt functions, modular powers.
//! - [`sequence`]: membership and prime counts in residue classes.
//! - [`asymptotics`]: main terms of the counting asymptotics and residual reports.
//! - [`harmonic`]: the sawtooth function and Vaaler's approximation.
//! - [`expsums`]: exponential sums, derivative tests, Type I/II sums,
//!   Heath-Brown's identity, the case classifier and the monomial optimizer.
//! - [`carmichael`]: Korselt search restricted to sequence primes and the
//!   exponent algebra behind it.

pub mod arith;
pub mod asymptotics;
pub mod carmichael;
pub mod error;
pub mod expsums;
pub mod harmonic;
pub mod sequence;
pub mod sum;

pub use error::{Error, Result};
