//! Exact parametric geometry of numbers over the field of formal Laurent
//! series in 1/T.
//!
//! Everything here is exact: coefficients live in a runtime-selected field
//! (the rationals or a prime field), norms are kept in log scale as plain
//! integers, and truncated series carry an explicit precision floor so that
//! every comparison is either certified or reported as indeterminate.
//!
//! The crate is `no_std` (alloc only). File formats, rendering and the CLI
//! live in the companion crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod adelic;
pub mod construct;
pub mod error;
pub mod field;
pub mod linalg;
pub mod minima;
pub mod nsystem;
pub mod pade;
pub mod poly;
pub mod series;
#[cfg(test)]
pub(crate) mod testutil;
pub mod wedge;

pub use error::Error;
pub use field::{Field, PrimeField, Rationals};
pub use poly::Poly;
pub use series::{LaurentSeries, LogNorm, PowerSeries};
