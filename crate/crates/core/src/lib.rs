//! Exact generalized twisted Bernoulli numbers and polynomials of higher order
//! attached to Dirichlet characters.
//!
//! Everything is computed in cyclotomic fields over arbitrary-precision
//! rationals. The [`identities`] module checks the symmetric identities between
//! these numbers, power sums and polynomials with zero tolerance, and
//! [`volkenborn`] measures p-adic convergence of finite Riemann sums toward them.

pub mod bernoulli;
pub mod characters;
pub mod cli;
pub mod error;
pub mod exact;
pub mod identities;
pub mod powerseries;
pub mod volkenborn;

pub use error::{Error, Result};
