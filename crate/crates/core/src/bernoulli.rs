//! Generalized twisted Bernoulli numbers and polynomials of order `k` attached
//! to a Dirichlet character, and the twisted character power sums.
//!
//! For a character `chi` mod `d` and a root of unity `xi`, the order-`k`
//! numbers are the EGF coefficients of
//!
//! ```text
//!   ( t * sum_{a<d} chi(a) xi^a e^{a t} / (xi^d e^{d t} - 1) )^k
//! ```
//!
//! and the polynomials carry an extra factor `e^{x t}`, so that
//! `B^(k)_n(x) = sum_j C(n, j) B^(k)_j x^(n-j)`.

use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::exact::arith::{binomial, lcm};
use crate::exact::{CycloElem, CycloField, Rational, RootOfUnity};
use crate::powerseries::{divide_cancel, TruncSeries};

/// A character, a twist, and the cyclotomic field both live in.
#[derive(Clone, Debug)]
pub struct TwistSpec {
    chi: DirichletCharacter,
    xi: RootOfUnity,
    ambient: Arc<CycloField>,
}

impl TwistSpec {
    /// Uses the smallest field containing `xi` and every character value.
    pub fn new(chi: DirichletCharacter, xi: RootOfUnity) -> Result<Self> {
        let m = lcm(xi.exact_order(), chi.value_conductor());
        Self::with_conductor(chi, xi, m)
    }

    /// Places the computation in `Q(zeta_m)`; `m` must contain `xi` and the character values.
    pub fn with_conductor(chi: DirichletCharacter, xi: RootOfUnity, m: u64) -> Result<Self> {
        let xi = xi.normalized();
        if m == 0 || m % xi.order() != 0 {
            return Err(Error::NonDivisibleConductor { from: xi.order(), to: m });
        }
        let c = chi.value_conductor();
        if m % c != 0 {
            return Err(Error::NonDivisibleConductor { from: c, to: m });
        }
        Ok(TwistSpec {
            chi,
            xi,
            ambient: CycloField::get(m)?,
        })
    }

    pub fn chi(&self) -> &DirichletCharacter {
        &self.chi
    }

    pub fn xi(&self) -> RootOfUnity {
        self.xi
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.ambient
    }

    pub fn modulus(&self) -> u64 {
        self.chi.modulus()
    }

    /// Same character and field with the twist replaced by `xi^w`.
    pub fn twisted_by_power(&self, w: i64) -> Self {
        TwistSpec {
            chi: self.chi.clone(),
            xi: self.xi.pow(w).normalized(),
            ambient: self.ambient.clone(),
        }
    }

    /// `xi^e` in the ambient field.
    pub fn xi_power(&self, e: i64) -> CycloElem {
        let step = self.ambient.conductor() / self.xi.order();
        CycloElem::zeta_power(&self.ambient, (self.xi.exponent() * step) as i64 * e.rem_euclid(self.xi.order() as i64))
    }

    /// `chi(n)` in the ambient field.
    pub fn chi_at(&self, n: u64) -> CycloElem {
        self.chi
            .value_at(n, &self.ambient)
            .expect("ambient field contains the character values")
    }
}

/// `n^k` with `0^0 = 1`.
fn int_pow(n: u64, k: u64) -> BigInt {
    num_traits::pow(BigInt::from(n), k as usize)
}

/// The order-`k` generating series to truncation order `order`.
///
/// Requires `order >= k + 2`; the result has order `order - v` where `v` is the
/// valuation of `xi^d e^{dt} - 1` (1 when `xi^d = 1`, else 0).
pub fn generating_series(spec: &TwistSpec, k: u64, order: usize) -> Result<TruncSeries> {
    if (order as u64) < k + 2 {
        return Err(Error::InvalidArgument(format!(
            "series order {order} is below k + 2 = {}",
            k + 2
        )));
    }
    let base = order_one_series(spec, order)?;
    if k == 0 {
        return Ok(TruncSeries::one(&spec.ambient, base.order()));
    }
    Ok(base.pow(k))
}

fn order_one_series(spec: &TwistSpec, order: usize) -> Result<TruncSeries> {
    let field = &spec.ambient;
    let d = spec.modulus();
    // t * sum_a chi(a) xi^a e^{at}: coefficient of t^{n+1} is sum_a chi(a) xi^a a^n / n!
    let weights: Vec<(u64, CycloElem)> = (0..d)
        .filter_map(|a| {
            let c = spec.chi_at(a);
            (!c.is_zero()).then(|| (a, &c * &spec.xi_power(a as i64)))
        })
        .collect();
    let mut num = vec![CycloElem::zero(field); order + 1];
    let mut fact = BigInt::from(1);
    for n in 0..order {
        if n > 0 {
            fact *= n;
        }
        let mut acc = CycloElem::zero(field);
        for (a, w) in &weights {
            acc = acc + w.scale_int(&int_pow(*a, n as u64));
        }
        num[n + 1] = acc.scale(&Rational::new(BigInt::from(1), fact.clone()));
    }
    let num = TruncSeries::new(field, num)?;
    let den = TruncSeries::exp_at(&CycloElem::from_int(field, d as i64), order)
        .scale(&spec.xi_power(d as i64))?
        .sub(&TruncSeries::one(field, order))?;
    divide_cancel(&num, &den)
}

/// `B^(k)_{n, chi, xi}` for `n = 0..=max_n`.
#[derive(Clone, Debug)]
pub struct BernoulliFamily {
    spec: TwistSpec,
    order_k: u64,
    numbers: Vec<CycloElem>,
}

impl BernoulliFamily {
    pub fn spec(&self) -> &TwistSpec {
        &self.spec
    }

    pub fn order_k(&self) -> u64 {
        self.order_k
    }

    pub fn max_n(&self) -> usize {
        self.numbers.len() - 1
    }

    pub fn numbers(&self) -> &[CycloElem] {
        &self.numbers
    }

    pub fn number(&self, n: usize) -> Result<&CycloElem> {
        self.numbers.get(n).ok_or(Error::OrderExceeded {
            index: n,
            order: self.max_n(),
        })
    }

    /// `B^(k)_n(x) = sum_j C(n, j) B^(k)_j x^(n-j)`.
    pub fn polynomial(&self, n: usize) -> Result<BernoulliPolynomial> {
        if n > self.max_n() {
            return Err(Error::OrderExceeded {
                index: n,
                order: self.max_n(),
            });
        }
        let mut coeffs = vec![CycloElem::zero(&self.spec.ambient); n + 1];
        for j in 0..=n {
            coeffs[n - j] = self.numbers[j].scale_int(&binomial(n as u64, j as u64));
        }
        Ok(BernoulliPolynomial { coeffs })
    }
}

/// Computes `B^(k)_{n, chi, xi}` for `n <= max_n` from a series built with two guard terms.
pub fn numbers(spec: &TwistSpec, k: u64, max_n: usize) -> Result<BernoulliFamily> {
    let order = max_n.max(k as usize) + 2;
    let series = generating_series(spec, k, order)?;
    let numbers = (0..=max_n)
        .map(|n| series.egf_coefficient(n))
        .collect::<Result<Vec<_>>>()?;
    Ok(BernoulliFamily {
        spec: spec.clone(),
        order_k: k,
        numbers,
    })
}

/// `B^(k)_{n, chi, xi}(x)` as a polynomial in `x`.
pub fn polynomial(spec: &TwistSpec, k: u64, n: usize) -> Result<BernoulliPolynomial> {
    numbers(spec, k, n)?.polynomial(n)
}

/// A polynomial in `x` with coefficients of `x^0..x^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BernoulliPolynomial {
    coeffs: Vec<CycloElem>,
}

impl BernoulliPolynomial {
    pub fn from_coeffs(coeffs: Vec<CycloElem>) -> Self {
        assert!(!coeffs.is_empty(), "polynomial needs a field");
        BernoulliPolynomial { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[CycloElem] {
        &self.coeffs
    }

    pub fn field(&self) -> &Arc<CycloField> {
        self.coeffs[0].field()
    }

    /// Horner evaluation; `arg` is embedded into the polynomial's field first.
    pub fn evaluate(&self, arg: &CycloElem) -> Result<CycloElem> {
        let arg = arg.embed(self.field().conductor())?;
        let mut acc = CycloElem::zero(self.field());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &arg) + c;
        }
        Ok(acc)
    }

    pub fn evaluate_rational(&self, arg: &Rational) -> CycloElem {
        let mut acc = CycloElem::zero(self.field());
        for c in self.coeffs.iter().rev() {
            acc = &acc.scale(arg) + c;
        }
        acc
    }
}

/// `T_{k, chi, xi}(n) = sum_{l=0}^{n} chi(l) xi^l l^k`, with `0^0 = 1`.
pub fn power_sum(spec: &TwistSpec, k: u64, n: u64) -> CycloElem {
    let mut acc = CycloElem::zero(&spec.ambient);
    for l in 0..=n {
        let c = spec.chi_at(l);
        if c.is_zero() {
            continue;
        }
        acc = acc + (&c * &spec.xi_power(l as i64)).scale_int(&int_pow(l, k));
    }
    acc
}

/// Outcome of comparing the closed-form power-sum series with its EGF of power sums.
#[derive(Clone, Debug)]
pub struct SeriesCheck {
    pub agree: bool,
    pub first_mismatch: Option<usize>,
    pub lhs: TruncSeries,
    pub rhs: TruncSeries,
}

/// Compares `(xi^{nd} e^{ndt} - 1) sum_{i<d} chi(i) xi^i e^{it} / (xi^d e^{dt} - 1)`
/// against `sum_k T_{k, chi, xi}(nd - 1) t^k / k!` through order `order`.
pub fn power_sum_series_check(spec: &TwistSpec, n: u64, order: usize) -> Result<SeriesCheck> {
    if n == 0 || order == 0 {
        return Err(Error::InvalidArgument("power-sum series check needs n >= 1 and order >= 1".into()));
    }
    let field = &spec.ambient;
    let d = spec.modulus();
    let guard = order + 1;
    let nd = n * d;
    let mut char_sum = TruncSeries::zero(field, guard);
    for i in 0..d {
        let c = spec.chi_at(i);
        if c.is_zero() {
            continue;
        }
        let w = &c * &spec.xi_power(i as i64);
        char_sum = char_sum.add(&TruncSeries::exp_at(&CycloElem::from_int(field, i as i64), guard).scale(&w)?)?;
    }
    let one = TruncSeries::one(field, guard);
    let factor = TruncSeries::exp_at(&CycloElem::from_int(field, nd as i64), guard)
        .scale(&spec.xi_power(nd as i64))?
        .sub(&one)?;
    let den = TruncSeries::exp_at(&CycloElem::from_int(field, d as i64), guard)
        .scale(&spec.xi_power(d as i64))?
        .sub(&one)?;
    let lhs = divide_cancel(&factor.mul(&char_sum)?, &den)?.truncate(order)?;
    let sums: Vec<CycloElem> = (0..=order as u64).map(|k| power_sum(spec, k, nd - 1)).collect();
    let rhs = TruncSeries::from_egf(field, &sums)?;
    let first_mismatch = lhs
        .coeffs()
        .iter()
        .zip(rhs.coeffs())
        .position(|(a, b)| a != b);
    Ok(SeriesCheck {
        agree: first_mismatch.is_none(),
        first_mismatch,
        lhs,
        rhs,
    })
}
