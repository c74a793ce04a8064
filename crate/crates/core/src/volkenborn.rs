//! Finite-level Riemann sums for the p-adic invariant integral over `X = lim Z/dp^N`
//! and empirical p-adic convergence traces.
//!
//! Integrands are `chi(x) xi^x x^n` with rational-valued `chi` and `xi` of order
//! a power of `p`, so every sum lives in `Q(zeta_{p^r})` where valuations are defined.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::bernoulli::{numbers, power_sum, TwistSpec};
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::exact::arith::{is_prime, prime_power_exponent};
use crate::exact::{CycloElem, CycloField, Rational, RootOfUnity, Valuation};

/// Integrand `chi(x) xi^x x^moment` on `X_d`, `d = chi.modulus()`.
#[derive(Debug, Clone)]
pub struct IntegrandSpec {
    chi: DirichletCharacter,
    xi: RootOfUnity,
    moment: u64,
    field: Arc<CycloField>,
}

impl IntegrandSpec {
    /// Fails unless `chi` takes values in `{0, 1, -1}`.
    pub fn new(chi: DirichletCharacter, xi: RootOfUnity, moment: u64) -> Result<Self> {
        if !chi.is_rational_valued() {
            return Err(Error::InvalidArgument(
                "Volkenborn sums need a rational-valued character".into(),
            ));
        }
        let xi = xi.normalized();
        let field = CycloField::get(xi.exact_order())?;
        Ok(IntegrandSpec { chi, xi, moment, field })
    }

    pub fn chi(&self) -> &DirichletCharacter {
        &self.chi
    }

    pub fn xi(&self) -> RootOfUnity {
        self.xi
    }

    pub fn moment(&self) -> u64 {
        self.moment
    }

    pub fn d(&self) -> u64 {
        self.chi.modulus()
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn with_moment(&self, moment: u64) -> Self {
        IntegrandSpec { moment, ..self.clone() }
    }

    /// `xi` must have order 1 or a power of `p`.
    pub fn check_prime(&self, p: u64) -> Result<()> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        let r = self.xi.exact_order();
        if r != 1 && prime_power_exponent(r, p).is_none() {
            return Err(Error::UnsupportedField { conductor: r, p });
        }
        Ok(())
    }

    fn chi_sign(&self, x: u64) -> i32 {
        match self.chi.value(x) {
            None => 0,
            Some(v) if v.is_one() => 1,
            Some(_) => -1,
        }
    }

    /// `sum_{lo <= x < hi} chi(x) xi^x x^moment` with the `x^moment` factors
    /// accumulated as integers per residue class of the exponent.
    fn raw_sum(&self, lo: u64, hi: u64) -> CycloElem {
        let r = self.xi.exact_order();
        let mut classes = vec![BigInt::zero(); r as usize];
        for x in lo..hi {
            let s = self.chi_sign(x);
            if s == 0 {
                continue;
            }
            let term = num_traits::pow(BigInt::from(x), self.moment as usize);
            let slot = &mut classes[(x % r) as usize];
            if s > 0 {
                *slot += term;
            } else {
                *slot -= term;
            }
        }
        let step = self.field.conductor() / r;
        classes
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(CycloElem::zero(&self.field), |acc, (c, v)| {
                acc + CycloElem::zeta_power(&self.field, (self.xi.exponent() * c as u64 * step) as i64).scale_int(v)
            })
    }

    /// `B_{moment, chi, xi}` in this integrand's field.
    pub fn target(&self) -> Result<CycloElem> {
        let spec = TwistSpec::with_conductor(self.chi.clone(), self.xi, self.field.conductor())?;
        Ok(numbers(&spec, 1, self.moment as usize)?.numbers()[self.moment as usize].clone())
    }
}

fn level_scale(d: u64, p: u64, level: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(d) * num_traits::pow(BigInt::from(p), level as usize))
}

/// `S_N = (1/(d p^N)) sum_{x < d p^N} chi(x) xi^x x^n`.
pub fn riemann_sum(spec: &IntegrandSpec, p: u64, level: u32) -> Result<CycloElem> {
    spec.check_prime(p)?;
    if level == 0 {
        return Err(Error::InvalidArgument("level must be at least 1".into()));
    }
    let size = spec.d() * p.pow(level);
    Ok(spec.raw_sum(0, size).scale(&level_scale(spec.d(), p, level)))
}

/// The same sum reindexed by `x = a + d y`: the average over residues `a mod d`
/// of `Z_p`-style sums `(1/p^N) sum_{y < p^N} f(a + d y)`.
pub fn residue_average(spec: &IntegrandSpec, p: u64, level: u32) -> Result<CycloElem> {
    spec.check_prime(p)?;
    let d = spec.d();
    let pn = p.pow(level);
    let r = spec.xi.exact_order();
    let step = spec.field.conductor() / r;
    let mut acc = CycloElem::zero(&spec.field);
    for a in 0..d {
        let mut inner = CycloElem::zero(&spec.field);
        for y in 0..pn {
            let x = a + d * y;
            let s = spec.chi_sign(x);
            if s == 0 {
                continue;
            }
            let term = num_traits::pow(BigInt::from(x), spec.moment as usize) * BigInt::from(s);
            let z = CycloElem::zeta_power(&spec.field, (spec.xi.exponent() * (x % r) * step) as i64);
            inner = inner + z.scale_int(&term);
        }
        acc = acc + inner.scale(&Rational::new(BigInt::one(), BigInt::from(pn)));
    }
    Ok(acc.scale(&Rational::new(BigInt::one(), BigInt::from(d))))
}

/// Default top level: 7 for `p <= 3`, 5 otherwise.
pub fn default_level_cap(p: u64) -> u32 {
    if p <= 3 {
        7
    } else {
        5
    }
}

/// Valuations `nu_p(S_N - target)` for `N = 1..=N_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConvergenceTrace {
    pub p: u64,
    pub levels: Vec<u32>,
    pub valuations: Vec<Valuation>,
    pub passes: bool,
}

/// Level from which the trace must be monotone.
pub const MONOTONE_FROM: u32 = 3;

/// Nondecreasing from level [`MONOTONE_FROM`] on, and no two consecutive steps
/// there without a strict increase. Steps from `inf` to `inf` count as strict.
pub fn trace_passes(levels: &[u32], valuations: &[Valuation]) -> bool {
    let tail: Vec<&Valuation> = levels
        .iter()
        .zip(valuations)
        .filter(|(l, _)| **l >= MONOTONE_FROM)
        .map(|(_, v)| v)
        .collect();
    let strict: Vec<bool> = tail
        .windows(2)
        .map(|w| w[1] > w[0] || (w[0].is_infinite() && w[1].is_infinite()))
        .collect();
    let monotone = tail.windows(2).all(|w| w[1] >= w[0]);
    monotone && !strict.windows(2).any(|s| !s[0] && !s[1])
}

impl ConvergenceTrace {
    fn new(p: u64, levels: Vec<u32>, valuations: Vec<Valuation>) -> Self {
        let passes = trace_passes(&levels, &valuations);
        ConvergenceTrace {
            p,
            levels,
            valuations,
            passes,
        }
    }
}

fn check_levels(max_level: u32) -> Result<()> {
    if max_level < 2 {
        return Err(Error::InvalidArgument("need at least two levels".into()));
    }
    Ok(())
}

/// Trace of `nu_p(S_N - B_{n, chi, xi})`.
pub fn convergence_check(spec: &IntegrandSpec, p: u64, max_level: u32) -> Result<ConvergenceTrace> {
    spec.check_prime(p)?;
    check_levels(max_level)?;
    let target = spec.target()?;
    let levels: Vec<u32> = (1..=max_level).collect();
    let valuations = levels
        .par_iter()
        .map(|&n| (&riemann_sum(spec, p, n)? - &target).padic_valuation(p))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceTrace::new(p, levels, valuations))
}

/// Discrepancy of the shift identity at one level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftDiscrepancy {
    pub level: u32,
    pub discrepancy: CycloElem,
    pub valuation: Valuation,
}

/// `D_N = (1/(dp^N)) sum_{x < dp^N} chi(x) [xi^{x+sd} (x+sd)^k - xi^x x^k] - k T_{k-1}(sd - 1)`
/// with `s = shift` and `k = spec.moment()`. `chi(x + sd) = chi(x)` so the shifted sum
/// is the unshifted summand over `[sd, dp^N + sd)`.
pub fn shift_identity_check(spec: &IntegrandSpec, p: u64, shift: u64, level: u32) -> Result<ShiftDiscrepancy> {
    spec.check_prime(p)?;
    let k = spec.moment;
    if k == 0 || shift == 0 {
        return Err(Error::InvalidArgument("shift identity needs moment >= 1 and shift >= 1".into()));
    }
    let d = spec.d();
    let size = d * p.pow(level);
    let sd = shift * d;
    let scale = level_scale(d, p, level);
    let shifted = spec.raw_sum(sd, size + sd).scale(&scale);
    let plain = spec.raw_sum(0, size).scale(&scale);
    let twist = TwistSpec::with_conductor(spec.chi.clone(), spec.xi, spec.field.conductor())?;
    let ps = power_sum(&twist, k - 1, sd - 1).scale(&Rational::from_integer(BigInt::from(k)));
    let discrepancy = &(&shifted - &plain) - &ps;
    let valuation = discrepancy.padic_valuation(p)?;
    Ok(ShiftDiscrepancy {
        level,
        discrepancy,
        valuation,
    })
}

/// Trace of `nu_p(D_N)` for `N = 1..=N_max`.
pub fn shift_trace(spec: &IntegrandSpec, p: u64, shift: u64, max_level: u32) -> Result<ConvergenceTrace> {
    check_levels(max_level)?;
    let levels: Vec<u32> = (1..=max_level).collect();
    let valuations = levels
        .par_iter()
        .map(|&n| shift_identity_check(spec, p, shift, n).map(|s| s.valuation))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceTrace::new(p, levels, valuations))
}
