//! Exact scalars: rationals, roots of unity, and cyclotomic fields.

pub mod arith;
mod cyclo;
mod poly;
mod rational;
mod root;
mod serial;

pub use cyclo::{CycloElem, CycloField, MAX_CONDUCTOR};
pub use poly::cyclotomic_polynomial;
pub use rational::{format_rational, parse_rational, rational, rational_int, Rational, Valuation};
pub use root::RootOfUnity;

pub(crate) use rational::pow_rational;
