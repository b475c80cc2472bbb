//! Exact counting and strong asymptotics for integers whose prime factors
//! all come from the subsequence `p_{m^k}` of the primes, together with the
//! Matula coding of rooted trees that these integers realize for `m = 2`.
//!
//! The crate is split along the pipeline:
//!
//! - [`primes`] — sieve-backed prime table, factorization, and the
//!   prime-counting extension used to resolve `p_{m^k}` beyond the sieve.
//! - [`matula`] — bijective coding between rooted trees and positive
//!   integers, tree statistics, and membership in the sets `A_m`.
//! - [`counting`] — exact counters: `M_{2,m}(x)`, the step counter `N(u)`,
//!   the averaged integral of `N(t)/t`, and the partition-sum oracle.
//! - [`constants`] — high-precision special constants (γ, γ₁, ζ, Γ) and
//!   the series constants `C_{2,m}`, `D_m`, `K_m`, `D'`.
//! - [`asymptotics`] — the extended Ingham partition asymptotics, the
//!   `α = 1` corollary, the strong asymptotic formula for `M_{2,m}`, and
//!   the Laplace-side residual diagnostics.
//!
//! The crate is `no_std` + `alloc`; all IO, CLI, and file formats live in
//! the companion `primepart-cli` crate.

#![no_std]
#![deny(unsafe_code)]
// The public API mirrors the notation of the formulas it implements
// (M_{2,m}, A_m, N(u), C_{2,m}, ...), which collides with snake_case.
#![allow(non_snake_case)]

extern crate alloc;

#[cfg(test)]
extern crate std;

use alloc::string::String;
use core::fmt;

pub mod asymptotics;
pub mod constants;
pub mod counting;
pub(crate) mod math;
pub mod matula;
pub mod primes;

/// Error type shared by all modules.
///
/// Variants map one-to-one onto the distinct failure contracts: capacity
/// (a resource such as the sieve cannot cover the request), domain (an
/// argument outside a function's mathematical domain), contract (an input
/// violates a documented precondition), out-of-range (a query past the
/// stored range of an otherwise valid structure), and parse errors with a
/// byte position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A resource limit (sieve capacity, extension cap) was exceeded.
    Capacity(String),
    /// Argument outside the mathematical domain of the operation.
    Domain(String),
    /// Documented precondition violated.
    Contract(String),
    /// Query beyond the stored range of a table.
    OutOfRange(String),
    /// Text input failed to parse; `pos` is a byte offset.
    Parse { pos: usize, msg: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Capacity(m) => write!(f, "capacity error: {m}"),
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Contract(m) => write!(f, "contract error: {m}"),
            Error::OutOfRange(m) => write!(f, "out-of-range error: {m}"),
            Error::Parse { pos, msg } => write!(f, "parse error at byte {pos}: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
