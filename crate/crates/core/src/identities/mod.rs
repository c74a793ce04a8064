//! Exact verification of the symmetric identities for twisted Bernoulli polynomials
//! and the power-sum relation, one checker per identity, plus grid sweeps.

mod checks;
mod context;
mod poly;
mod sweep;

pub use checks::*;
pub use context::InstanceContext;
pub use poly::{BivariatePoly, UniPoly};
pub use sweep::{
    plan, run_instance, sweep, CharacterSelection, GridConfig, Instance, InstanceGroup, SweepResult, SweepSummary,
    DEFAULT_SERIES_ORDER,
};
