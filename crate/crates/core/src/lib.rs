//! Exact arithmetic for the ramification of iterated preimage fields of
//! rational self-maps of the projective line over `Q`.
//!
//! The crate is `no_std` and only needs `alloc`. Everything is computed with
//! arbitrary-precision integers; there is no floating point anywhere in the
//! decision paths.
//!
//! * [`exactmath`]: integers, dense univariate polynomials, resultants,
//!   integer and polynomial factorization.
//! * [`dynamics`]: rational maps `P^1 -> P^1`, iteration, critical loci,
//!   reduction, post-critical finiteness certificates.
//! * [`ramify`]: preimage polynomials and ramified-prime verdicts per level.
//! * [`padic`]: valuations, Newton polygons and orbit-valuation witnesses.
//! * [`multivar`]: sparse multivariate polynomials and the two `P^2` examples.
#![no_std]

extern crate alloc;

pub mod budget;
pub mod dynamics;
pub mod error;
pub mod exactmath;
pub mod exec;
pub mod multivar;
pub mod padic;
pub mod parse;
pub mod ramify;

pub use budget::Budgets;
pub use error::{Error, Result};
pub use exactmath::{BigRat, IntFactorization, UniPoly};
