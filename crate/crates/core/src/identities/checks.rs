//! One checker per identity. Each builds both sides independently and compares
//! them exactly: scalars by value, polynomials coefficient by coefficient.
//!
//! Weights `w^e` with negative `e` (the `j = n` term of the convolution sums)
//! are rational scalars.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::bernoulli::power_sum_series_check;
use crate::error::{Error, Result};
use crate::exact::arith::binomial;
use crate::exact::{pow_rational, CycloElem, Rational, RootOfUnity};

use super::context::InstanceContext;
use super::poly::{BivariatePoly, UniPoly};

/// Wire names of the checkable identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IdentityTag {
    /// `(xi^{nd} B_k(nd) - B_k) / k = T_{k-1}(nd - 1)`.
    #[serde(rename = "eq_1_13")]
    PowerSumShift,
    /// Bivariate convolution of order-`m` and order-`(m-1)` polynomials with power sums.
    #[serde(rename = "theorem1")]
    Convolution,
    /// Convolution at `m = 1`, `y = 0`.
    #[serde(rename = "remark_m1")]
    ConvolutionFirstOrder,
    /// Convolution at `x = y = 0`.
    #[serde(rename = "corollary2")]
    ConvolutionNumbers,
    /// Convolution of numbers at `m = 1`.
    #[serde(rename = "m1_numbers")]
    ConvolutionNumbersFirstOrder,
    /// Bivariate identity with twisted sums of shifted polynomials.
    #[serde(rename = "theorem3")]
    ShiftedSum,
    /// Shifted sums at `m = 1`, `y = 0`.
    #[serde(rename = "remark_2_11")]
    ShiftedSumFirstOrder,
    /// Shifted sums at `x = y = 0`.
    #[serde(rename = "corollary4")]
    ShiftedSumNumbers,
    /// Shifted sums of numbers at `m = 1`.
    #[serde(rename = "eq_2_12")]
    ShiftedSumNumbersFirstOrder,
    /// Closed form of the power-sum generating series against its EGF coefficients.
    #[serde(rename = "power_sum_series_check")]
    PowerSumSeries,
}

impl IdentityTag {
    pub const ALL: [IdentityTag; 10] = [
        IdentityTag::PowerSumShift,
        IdentityTag::Convolution,
        IdentityTag::ConvolutionFirstOrder,
        IdentityTag::ConvolutionNumbers,
        IdentityTag::ConvolutionNumbersFirstOrder,
        IdentityTag::ShiftedSum,
        IdentityTag::ShiftedSumFirstOrder,
        IdentityTag::ShiftedSumNumbers,
        IdentityTag::ShiftedSumNumbersFirstOrder,
        IdentityTag::PowerSumSeries,
    ];

    pub fn uses_weights(self) -> bool {
        !matches!(self, IdentityTag::PowerSumShift | IdentityTag::PowerSumSeries)
    }

    pub fn uses_order_m(self) -> bool {
        matches!(
            self,
            IdentityTag::Convolution
                | IdentityTag::ConvolutionNumbers
                | IdentityTag::ShiftedSum
                | IdentityTag::ShiftedSumNumbers
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            IdentityTag::PowerSumShift => "eq_1_13",
            IdentityTag::Convolution => "theorem1",
            IdentityTag::ConvolutionFirstOrder => "remark_m1",
            IdentityTag::ConvolutionNumbers => "corollary2",
            IdentityTag::ConvolutionNumbersFirstOrder => "m1_numbers",
            IdentityTag::ShiftedSum => "theorem3",
            IdentityTag::ShiftedSumFirstOrder => "remark_2_11",
            IdentityTag::ShiftedSumNumbers => "corollary4",
            IdentityTag::ShiftedSumNumbersFirstOrder => "eq_2_12",
            IdentityTag::PowerSumSeries => "power_sum_series_check",
        }
    }
}

/// Parameters of one checked instance. Fields an identity does not use are omitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceParams {
    pub n: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    pub d: u64,
    pub character: String,
    pub xi: RootOfUnity,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w1: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w2: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
}

/// One side of an identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Scalar(CycloElem),
    Poly(BivariatePoly),
    /// EGF coefficients of a truncated series.
    Series(Vec<CycloElem>),
}

/// Where two sides first disagree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mismatch {
    Scalar,
    /// Coefficient of `x^x y^y`.
    Coefficient { x: usize, y: usize },
    /// Coefficient of `t^index / index!`.
    Term { index: usize },
}

fn compare(lhs: &Side, rhs: &Side) -> Option<Mismatch> {
    match (lhs, rhs) {
        (Side::Scalar(a), Side::Scalar(b)) => (a != b).then_some(Mismatch::Scalar),
        (Side::Poly(a), Side::Poly(b)) => a.first_difference(b).map(|(x, y)| Mismatch::Coefficient { x, y }),
        (Side::Series(a), Side::Series(b)) => a
            .iter()
            .zip(b)
            .position(|(p, q)| p != q)
            .or((a.len() != b.len()).then(|| a.len().min(b.len())))
            .map(|index| Mismatch::Term { index }),
        _ => Some(Mismatch::Scalar),
    }
}

/// A second reading of an identity, checked alongside the primary one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlternateReading {
    pub reading: String,
    pub holds: bool,
    pub lhs: Side,
    pub rhs: Side,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<Mismatch>,
}

/// Result of checking one instance. `holds` is true iff `lhs == rhs` exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: IdentityTag,
    pub params: InstanceParams,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reading: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<Side>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Side>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<Mismatch>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alternate: Option<AlternateReading>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl IdentityReport {
    fn compared(identity: IdentityTag, params: InstanceParams, lhs: Side, rhs: Side) -> Self {
        let mismatch = compare(&lhs, &rhs);
        IdentityReport {
            identity,
            params,
            holds: mismatch.is_none(),
            reading: None,
            lhs: Some(lhs),
            rhs: Some(rhs),
            mismatch,
            alternate: None,
            error: None,
        }
    }

    pub fn failed(identity: IdentityTag, params: InstanceParams, err: &Error) -> Self {
        IdentityReport {
            identity,
            params,
            holds: false,
            reading: None,
            lhs: None,
            rhs: None,
            mismatch: None,
            alternate: None,
            error: Some(err.to_string()),
        }
    }

    fn with_alternate(mut self, primary: &str, reading: &str, lhs: Side, rhs: Side) -> Self {
        let mismatch = compare(&lhs, &rhs);
        self.reading = Some(primary.to_string());
        self.alternate = Some(AlternateReading {
            reading: reading.to_string(),
            holds: mismatch.is_none(),
            lhs,
            rhs,
            mismatch,
        });
        self
    }

    pub fn lhs_poly(&self) -> Option<&BivariatePoly> {
        match &self.lhs {
            Some(Side::Poly(p)) => Some(p),
            _ => None,
        }
    }

    pub fn rhs_poly(&self) -> Option<&BivariatePoly> {
        match &self.rhs {
            Some(Side::Poly(p)) => Some(p),
            _ => None,
        }
    }

    pub fn lhs_scalar(&self) -> Option<&CycloElem> {
        match &self.lhs {
            Some(Side::Scalar(s)) => Some(s),
            _ => None,
        }
    }

    pub fn rhs_scalar(&self) -> Option<&CycloElem> {
        match &self.rhs {
            Some(Side::Scalar(s)) => Some(s),
            _ => None,
        }
    }
}

/// Reading names used in reports.
pub mod readings {
    /// Swapped side uses `xi^{w1}` on its order-`(m-1)` factor.
    pub const SWAP_SYMMETRIC: &str = "swap_symmetric";
    /// Swapped side keeps `xi^{w2}` on its order-`(m-1)` factor.
    pub const INNER_TWIST_UNSWAPPED: &str = "inner_twist_unswapped";
    /// Sums over `i` carry the weight `chi(i) xi^{w i}`.
    pub const WEIGHTED: &str = "weighted";
    /// Sums over `i` carry only `chi(i)`.
    pub const UNWEIGHTED: &str = "unweighted";
}

fn int(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn binom(n: u64, k: u64) -> Rational {
    Rational::from_integer(binomial(n, k))
}

/// `w^e` for possibly negative `e`.
fn wpow(w: u64, e: i64) -> Rational {
    pow_rational(&int(w), e)
}

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidArgument(what.to_string()))
    }
}

fn base_params(ctx: &InstanceContext, n: u64) -> InstanceParams {
    InstanceParams {
        n,
        m: None,
        k: None,
        d: ctx.d(),
        character: ctx.label().to_string(),
        xi: ctx.xi(),
        w1: None,
        w2: None,
        order: None,
    }
}

fn weighted_params(ctx: &InstanceContext, n: u64, m: Option<u64>, w1: u64, w2: u64) -> InstanceParams {
    InstanceParams {
        m,
        w1: Some(w1),
        w2: Some(w2),
        ..base_params(ctx, n)
    }
}

/// `(xi^{nd} B_{k}(nd) - B_{k}) / k` against `T_{k-1}(nd - 1)`.
pub fn check_power_sum_shift(ctx: &InstanceContext, k: u64, n: u64) -> Result<IdentityReport> {
    require(k >= 1 && n >= 1, "k >= 1 and n >= 1")?;
    let nd = n * ctx.d();
    let poly = ctx.family(1, 1, k as usize)?.polynomial(k as usize)?;
    let shifted = poly.evaluate_rational(&int(nd));
    let b_k = ctx.number(1, 1, k as usize)?;
    let xi_nd = ctx.spec(1).xi_power(nd as i64);
    let lhs = (&(&xi_nd * &shifted) - &b_k).scale(&int(k).recip());
    let rhs = ctx.power_sum(1, k - 1, nd - 1);
    let params = InstanceParams {
        k: Some(k),
        ..base_params(ctx, n)
    };
    Ok(IdentityReport::compared(
        IdentityTag::PowerSumShift,
        params,
        Side::Scalar(lhs),
        Side::Scalar(rhs),
    ))
}

/// One side of the bivariate convolution identity with `(wa, wb)` in the roles of `(w1, w2)`:
///
/// `sum_j C(n,j) wb^j wa^{n-j-1} B^(m)_{n-j, xi^wa}(wb x)
///    * sum_k C(j,k) T_{k, xi^wb}(wa d - 1) B^(m-1)_{j-k, xi^inner}(wa y)`.
pub fn convolution_side(ctx: &InstanceContext, n: u64, m: u64, wa: u64, wb: u64, inner: u64) -> Result<BivariatePoly> {
    let d = ctx.d();
    let mut acc = BivariatePoly::zero(ctx.field());
    for j in 0..=n {
        let px = ctx.polynomial(wa, m, (n - j) as usize)?.scale_arg(&int(wb));
        let mut py = UniPoly::zero(ctx.field());
        for k in 0..=j {
            let t = ctx.power_sum(wb, k, wa * d - 1);
            if t.is_zero() {
                continue;
            }
            let b = ctx.polynomial(inner, m - 1, (j - k) as usize)?.scale_arg(&int(wa));
            py = py.add(&b.mul_elem(&t).scale(&binom(j, k)));
        }
        let w = binom(n, j) * wpow(wb, j as i64) * wpow(wa, n as i64 - j as i64 - 1);
        acc = acc.add(&BivariatePoly::outer(&px, &py).scale(&w));
    }
    Ok(acc)
}

/// Bivariate convolution identity in `x, y`, with the swap-symmetric reading as primary
/// and the reading whose swapped side keeps `xi^{w2}` on the inner factor as alternate.
pub fn check_convolution(ctx: &InstanceContext, n: u64, m: u64, w1: u64, w2: u64) -> Result<IdentityReport> {
    require(m >= 1 && w1 >= 1 && w2 >= 1, "m, w1, w2 >= 1")?;
    let lhs = convolution_side(ctx, n, m, w1, w2, w2)?;
    let rhs = convolution_side(ctx, n, m, w2, w1, w1)?;
    let alt_rhs = convolution_side(ctx, n, m, w2, w1, w2)?;
    Ok(IdentityReport::compared(
        IdentityTag::Convolution,
        weighted_params(ctx, n, Some(m), w1, w2),
        Side::Poly(lhs.clone()),
        Side::Poly(rhs),
    )
    .with_alternate(
        readings::SWAP_SYMMETRIC,
        readings::INNER_TWIST_UNSWAPPED,
        Side::Poly(lhs),
        Side::Poly(alt_rhs),
    ))
}

/// `sum_j C(n,j) wb^j wa^{n-j-1} B_{n-j, xi^wa}(wb x) T_{j, xi^wb}(wa d - 1)`, built directly.
pub fn convolution_first_order_side(ctx: &InstanceContext, n: u64, wa: u64, wb: u64) -> Result<UniPoly> {
    let d = ctx.d();
    let mut acc = UniPoly::zero(ctx.field());
    for j in 0..=n {
        let t = ctx.power_sum(wb, j, wa * d - 1);
        let w = binom(n, j) * wpow(wb, j as i64) * wpow(wa, n as i64 - j as i64 - 1);
        let p = ctx.polynomial(wa, 1, (n - j) as usize)?.scale_arg(&int(wb));
        acc = acc.add(&p.mul_elem(&t).scale(&w));
    }
    Ok(acc)
}

pub fn check_convolution_first_order(ctx: &InstanceContext, n: u64, w1: u64, w2: u64) -> Result<IdentityReport> {
    require(w1 >= 1 && w2 >= 1, "w1, w2 >= 1")?;
    let lhs = convolution_first_order_side(ctx, n, w1, w2)?;
    let rhs = convolution_first_order_side(ctx, n, w2, w1)?;
    Ok(IdentityReport::compared(
        IdentityTag::ConvolutionFirstOrder,
        weighted_params(ctx, n, None, w1, w2),
        Side::Poly(BivariatePoly::from_x(&lhs)),
        Side::Poly(BivariatePoly::from_x(&rhs)),
    ))
}

/// Numbers-only convolution, computed from the number sequences without polynomials.
pub fn convolution_numbers_side(ctx: &InstanceContext, n: u64, m: u64, wa: u64, wb: u64) -> Result<CycloElem> {
    let d = ctx.d();
    let mut acc = CycloElem::zero(ctx.field());
    for j in 0..=n {
        let mut inner = CycloElem::zero(ctx.field());
        for k in 0..=j {
            let t = ctx.power_sum(wb, k, wa * d - 1);
            let b = ctx.number(wb, m - 1, (j - k) as usize)?;
            inner = inner + (&t * &b).scale(&binom(j, k));
        }
        let w = binom(n, j) * wpow(wb, j as i64) * wpow(wa, n as i64 - j as i64 - 1);
        acc = acc + (&ctx.number(wa, m, (n - j) as usize)? * &inner).scale(&w);
    }
    Ok(acc)
}

pub fn check_convolution_numbers(ctx: &InstanceContext, n: u64, m: u64, w1: u64, w2: u64) -> Result<IdentityReport> {
    require(m >= 1 && w1 >= 1 && w2 >= 1, "m, w1, w2 >= 1")?;
    let lhs = convolution_numbers_side(ctx, n, m, w1, w2)?;
    let rhs = convolution_numbers_side(ctx, n, m, w2, w1)?;
    Ok(IdentityReport::compared(
        IdentityTag::ConvolutionNumbers,
        weighted_params(ctx, n, Some(m), w1, w2),
        Side::Scalar(lhs),
        Side::Scalar(rhs),
    ))
}

/// `sum_j C(n,j) wb^j wa^{n-j-1} B_{n-j, xi^wa} T_{j, xi^wb}(wa d - 1)`.
pub fn convolution_numbers_first_order_side(ctx: &InstanceContext, n: u64, wa: u64, wb: u64) -> Result<CycloElem> {
    let d = ctx.d();
    let mut acc = CycloElem::zero(ctx.field());
    for j in 0..=n {
        let t = ctx.power_sum(wb, j, wa * d - 1);
        let w = binom(n, j) * wpow(wb, j as i64) * wpow(wa, n as i64 - j as i64 - 1);
        acc = acc + (&ctx.number(wa, 1, (n - j) as usize)? * &t).scale(&w);
    }
    Ok(acc)
}

pub fn check_convolution_numbers_first_order(ctx: &InstanceContext, n: u64, w1: u64, w2: u64) -> Result<IdentityReport> {
    require(w1 >= 1 && w2 >= 1, "w1, w2 >= 1")?;
    let lhs = convolution_numbers_first_order_side(ctx, n, w1, w2)?;
    let rhs = convolution_numbers_first_order_side(ctx, n, w2, w1)?;
    Ok(IdentityReport::compared(
        IdentityTag::ConvolutionNumbersFirstOrder,
        weighted_params(ctx, n, None, w1, w2),
        Side::Scalar(lhs),
        Side::Scalar(rhs),
    ))
}

/// `sum_{i < wa d} chi(i) [xi^{wb i}] B^(m)_{k, xi^wa}(wb x + (wb/wa) i)` as a polynomial in `x`.
fn shifted_sum_poly(ctx: &InstanceContext, k: u64, m: u64, wa: u64, wb: u64, weighted: bool) -> Result<UniPoly> {
    let base = ctx.polynomial(wa, m, k as usize)?;
    let ratio = int(wb) / int(wa);
    let mut acc = UniPoly::zero(ctx.field());
    for i in 0..wa * ctx.d() {
        let c = if weighted { ctx.weight(wb, i) } else { ctx.chi_at(i) };
        if c.is_zero() {
            continue;
        }
        let shifted = base.compose_affine(&int(wb), &(&ratio * int(i)));
        acc = acc.add(&shifted.mul_elem(&c));
    }
    Ok(acc)
}

/// One side of the bivariate shifted-sum identity:
///
/// `sum_k C(n,k) wa^{k-1} wb^{n-k} B^(m-1)_{n-k, xi^wb}(wa y)
///    * sum_{i < wa d} chi(i) xi^{wb i} B^(m)_{k, xi^wa}(wb x + (wb/wa) i)`.
pub fn shifted_sum_side(ctx: &InstanceContext, n: u64, m: u64, wa: u64, wb: u64, weighted: bool) -> Result<BivariatePoly> {
    let mut acc = BivariatePoly::zero(ctx.field());
    for k in 0..=n {
        let py = ctx.polynomial(wb, m - 1, (n - k) as usize)?.scale_arg(&int(wa));
        if py.is_zero() {
            continue;
        }
        let px = shifted_sum_poly(ctx, k, m, wa, wb, weighted)?;
        let w = binom(n, k) * wpow(wa, k as i64 - 1) * wpow(wb, (n - k) as i64);
        acc = acc.add(&BivariatePoly::outer(&px, &py).scale(&w));
    }
    Ok(acc)
}

pub fn check_shifted_sum(ctx: &InstanceContext, n: u64, m: u64, w1: u64, w2: u64) -> Result<IdentityReport> {
    require(m >= 1 && w1 >= 1 && w2 >= 1, "m, w1, w2 >= 1")?;
    let lhs = shifted_sum_side(ctx, n, m, w1, w2, true)?;
    let rhs = shifted_sum_side(ctx, n, m, w2, w1, true)?;
    Ok(IdentityReport::compared(
        IdentityTag::ShiftedSum,
        weighted_params(ctx, n, Some(m), w1, w2),
        Side::Poly(lhs),
        Side::Poly(rhs),
    ))
}

/// `wa^{n-1} sum_{i < wa d} chi(i) [xi^{wb i}] B_{n, xi^wa}(wb x + (wb/wa) i)`.
pub fn shifted_sum_first_order_side(ctx: &InstanceContext, n: u64, wa: u64, wb: u64, weighted: bool) -> Result<UniPoly> {
    Ok(shifted_sum_poly(ctx, n, 1, wa, wb, weighted)?.scale(&wpow(wa, n as i64 - 1)))
}

/// Primary reading keeps the `xi^{w i}` weights; the alternate drops them.
pub fn check_shifted_sum_first_order(ctx: &InstanceContext, n: u64, w1: u64, w2: u64) -> Result<IdentityReport> {
    require(w1 >= 1 && w2 >= 1, "w1, w2 >= 1")?;
    let side = |wa, wb, weighted| -> Result<Side> {
        Ok(Side::Poly(BivariatePoly::from_x(&shifted_sum_first_order_side(ctx, n, wa, wb, weighted)?)))
    };
    Ok(IdentityReport::compared(
        IdentityTag::ShiftedSumFirstOrder,
        weighted_params(ctx, n, None, w1, w2),
        side(w1, w2, true)?,
        side(w2, w1, true)?,
    )
    .with_alternate(
        readings::WEIGHTED,
        readings::UNWEIGHTED,
        side(w1, w2, false)?,
        side(w2, w1, false)?,
    ))
}

/// Numbers-only shifted sums: polynomials evaluated at the rational points `(wb/wa) i`.
pub fn shifted_sum_numbers_side(ctx: &InstanceContext, n: u64, m: u64, wa: u64, wb: u64) -> Result<CycloElem> {
    let ratio = int(wb) / int(wa);
    let mut acc = CycloElem::zero(ctx.field());
    for k in 0..=n {
        let outer = ctx.number(wb, m - 1, (n - k) as usize)?;
        if outer.is_zero() {
            continue;
        }
        let mut inner = CycloElem::zero(ctx.field());
        for i in 0..wa * ctx.d() {
            let c = ctx.weight(wb, i);
            if c.is_zero() {
                continue;
            }
            inner = inner + &c * &ctx.polynomial_at_rational(wa, m, k as usize, &(&ratio * int(i)))?;
        }
        let w = binom(n, k) * wpow(wa, k as i64 - 1) * wpow(wb, (n - k) as i64);
        acc = acc + (&outer * &inner).scale(&w);
    }
    Ok(acc)
}

pub fn check_shifted_sum_numbers(ctx: &InstanceContext, n: u64, m: u64, w1: u64, w2: u64) -> Result<IdentityReport> {
    require(m >= 1 && w1 >= 1 && w2 >= 1, "m, w1, w2 >= 1")?;
    let lhs = shifted_sum_numbers_side(ctx, n, m, w1, w2)?;
    let rhs = shifted_sum_numbers_side(ctx, n, m, w2, w1)?;
    Ok(IdentityReport::compared(
        IdentityTag::ShiftedSumNumbers,
        weighted_params(ctx, n, Some(m), w1, w2),
        Side::Scalar(lhs),
        Side::Scalar(rhs),
    ))
}

/// `wa^{n-1} sum_{i < d wa} chi(i) xi^{wb i} B_{n, xi^wa}((wb/wa) i)`.
pub fn shifted_sum_numbers_first_order_side(ctx: &InstanceContext, n: u64, wa: u64, wb: u64) -> Result<CycloElem> {
    let ratio = int(wb) / int(wa);
    let mut acc = CycloElem::zero(ctx.field());
    for i in 0..wa * ctx.d() {
        let c = ctx.weight(wb, i);
        if c.is_zero() {
            continue;
        }
        acc = acc + &c * &ctx.polynomial_at_rational(wa, 1, n as usize, &(&ratio * int(i)))?;
    }
    Ok(acc.scale(&wpow(wa, n as i64 - 1)))
}

pub fn check_shifted_sum_numbers_first_order(ctx: &InstanceContext, n: u64, w1: u64, w2: u64) -> Result<IdentityReport> {
    require(w1 >= 1 && w2 >= 1, "w1, w2 >= 1")?;
    let lhs = shifted_sum_numbers_first_order_side(ctx, n, w1, w2)?;
    let rhs = shifted_sum_numbers_first_order_side(ctx, n, w2, w1)?;
    Ok(IdentityReport::compared(
        IdentityTag::ShiftedSumNumbersFirstOrder,
        weighted_params(ctx, n, None, w1, w2),
        Side::Scalar(lhs),
        Side::Scalar(rhs),
    ))
}

/// Closed-form power-sum series against EGF coefficients `T_k(nd - 1)`, to `order`.
pub fn check_power_sum_series(ctx: &InstanceContext, n: u64, order: usize) -> Result<IdentityReport> {
    let check = power_sum_series_check(&ctx.spec(1), n, order)?;
    let egf = |s: &crate::powerseries::TruncSeries| -> Result<Vec<CycloElem>> {
        (0..=s.order()).map(|k| s.egf_coefficient(k)).collect()
    };
    let params = InstanceParams {
        order: Some(order),
        ..base_params(ctx, n)
    };
    let report = IdentityReport::compared(
        IdentityTag::PowerSumSeries,
        params,
        Side::Series(egf(&check.lhs)?),
        Side::Series(egf(&check.rhs)?),
    );
    debug_assert_eq!(report.holds, check.agree);
    Ok(report)
}
