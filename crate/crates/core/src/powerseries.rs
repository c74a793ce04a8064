//! Truncated power series in `t` over a cyclotomic field.
//!
//! Coefficients are stored as ordinary coefficients `c_n` of `t^n`; the
//! exponential-generating-function coefficient of `t^n/n!` is `n! * c_n` and is
//! only formed at extraction time.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::arith::factorial;
use crate::exact::{CycloElem, CycloField, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    field: Arc<CycloField>,
    coeffs: Vec<CycloElem>,
}

impl TruncSeries {
    /// A series from ordinary coefficients `c_0..c_N`; all must live in `field`.
    pub fn new(field: &Arc<CycloField>, coeffs: Vec<CycloElem>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("a series needs at least one coefficient".into()));
        }
        if let Some(bad) = coeffs.iter().find(|c| c.conductor() != field.conductor()) {
            return Err(Error::FieldMismatch {
                left: field.conductor(),
                right: bad.conductor(),
            });
        }
        Ok(TruncSeries {
            field: field.clone(),
            coeffs,
        })
    }

    /// A series from EGF coefficients `a_n`, i.e. `sum a_n t^n / n!`.
    pub fn from_egf(field: &Arc<CycloField>, egf: &[CycloElem]) -> Result<Self> {
        let coeffs = egf
            .iter()
            .enumerate()
            .map(|(n, a)| a.scale(&Rational::new(BigInt::from(1), factorial(n as u64))))
            .collect();
        Self::new(field, coeffs)
    }

    pub fn zero(field: &Arc<CycloField>, order: usize) -> Self {
        TruncSeries {
            field: field.clone(),
            coeffs: vec![CycloElem::zero(field); order + 1],
        }
    }

    pub fn one(field: &Arc<CycloField>, order: usize) -> Self {
        let mut s = Self::zero(field, order);
        s.coeffs[0] = CycloElem::one(field);
        s
    }

    /// `c * t^k`, zero if `k > order`.
    pub fn monomial(c: &CycloElem, k: usize, order: usize) -> Self {
        let mut s = Self::zero(c.field(), order);
        if k <= order {
            s.coeffs[k] = c.clone();
        }
        s
    }

    /// `e^{a t}`: coefficients `a^n / n!`.
    pub fn exp_at(a: &CycloElem, order: usize) -> Self {
        let field = a.field().clone();
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut cur = CycloElem::one(&field);
        for n in 0..=order {
            if n > 0 {
                cur = (&cur * a).scale(&Rational::new(BigInt::from(1), BigInt::from(n)));
            }
            coeffs.push(cur.clone());
        }
        TruncSeries { field, coeffs }
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    /// Truncation bound `N`: terms `t^0..t^N` are kept.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[CycloElem] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Result<&CycloElem> {
        self.coeffs.get(n).ok_or(Error::OrderExceeded {
            index: n,
            order: self.order(),
        })
    }

    /// The coefficient of `t^n/n!`, i.e. `n! * c_n`.
    pub fn egf_coefficient(&self, n: usize) -> Result<CycloElem> {
        Ok(self.coeff(n)?.scale_int(&factorial(n as u64)))
    }

    /// Index of the first nonzero coefficient; `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Explicit re-truncation to a smaller order.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::OrderExceeded {
                index: order,
                order: self.order(),
            });
        }
        Ok(TruncSeries {
            field: self.field.clone(),
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field.conductor() != other.field.conductor() {
            return Err(Error::FieldMismatch {
                left: self.field.conductor(),
                right: other.field.conductor(),
            });
        }
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&CycloElem, &CycloElem) -> CycloElem) -> Self {
        TruncSeries {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: &CycloElem) -> Result<Self> {
        if c.conductor() != self.field.conductor() {
            return Err(Error::FieldMismatch {
                left: self.field.conductor(),
                right: c.conductor(),
            });
        }
        Ok(TruncSeries {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        })
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.order();
        let mut out = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = CycloElem::zero(&self.field);
            for i in 0..=k {
                let (a, b) = (&self.coeffs[i], &other.coeffs[k - i]);
                if !a.is_zero() && !b.is_zero() {
                    acc = acc + a * b;
                }
            }
            out.push(acc);
        }
        TruncSeries {
            field: self.field.clone(),
            coeffs: out,
        }
    }

    /// `s^k` by repeated squaring; `s^0 = 1`.
    pub fn pow(&self, mut k: u64) -> Self {
        let mut acc = Self::one(&self.field, self.order());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse to the same order; the constant term must be nonzero.
    pub fn invert(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NonUnitConstantTerm);
        }
        let c0_inv = c0.inv()?;
        let mut inv: Vec<CycloElem> = Vec::with_capacity(self.coeffs.len());
        inv.push(c0_inv.clone());
        for n in 1..=self.order() {
            // sum_{i=0}^{n} c_i * inv_{n-i} = 0
            let mut acc = CycloElem::zero(&self.field);
            for i in 1..=n {
                let c = &self.coeffs[i];
                if !c.is_zero() && !inv[n - i].is_zero() {
                    acc = acc + c * &inv[n - i];
                }
            }
            inv.push(-(&acc * &c0_inv));
        }
        Ok(TruncSeries {
            field: self.field.clone(),
            coeffs: inv,
        })
    }

    /// Drops the first `k` coefficients (division by `t^k`), lowering the order by `k`.
    fn shift_down(&self, k: usize) -> Self {
        TruncSeries {
            field: self.field.clone(),
            coeffs: self.coeffs[k..].to_vec(),
        }
    }
}

/// `num / den` where the quotient is a power series: `t^v` is cancelled from both
/// (`v` = valuation of `den`) and the result has order `N - v`.
pub fn divide_cancel(num: &TruncSeries, den: &TruncSeries) -> Result<TruncSeries> {
    num.check_compatible(den)?;
    let v = den.valuation().ok_or(Error::ZeroDenominator(den.order()))?;
    if let Some(u) = num.valuation() {
        if u < v {
            return Err(Error::PoleAtZero { num: u, den: v });
        }
    }
    let n = num.shift_down(v);
    let d = den.shift_down(v);
    Ok(n.mul_unchecked(&d.invert()?))
}

/// True when every coefficient is zero.
pub fn is_zero(s: &TruncSeries) -> bool {
    s.coeffs.iter().all(CycloElem::is_zero)
}

/// Convenience: the rational coefficient vector of a series over `Q`, for tests and display.
pub fn rational_coeffs(s: &TruncSeries) -> Option<Vec<Rational>> {
    s.coeffs.iter().map(CycloElem::to_rational).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rational, rational_int};

    fn q() -> Arc<CycloField> {
        CycloField::rationals()
    }

    fn series(vals: &[Rational]) -> TruncSeries {
        let f = q();
        TruncSeries::new(&f, vals.iter().map(|v| CycloElem::from_rational(&f, v)).collect()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rational_int(x)).collect()
    }

    #[test]
    fn exp_examples() {
        let f = q();
        let e0 = TruncSeries::exp_at(&CycloElem::zero(&f), 4);
        assert_eq!(rational_coeffs(&e0).unwrap(), ints(&[1, 0, 0, 0, 0]));
        let e1 = TruncSeries::exp_at(&CycloElem::one(&f), 2);
        assert_eq!(rational_coeffs(&e1).unwrap(), vec![rational_int(1), rational_int(1), rational(1, 2)]);
        let e2 = TruncSeries::exp_at(&CycloElem::from_int(&f, 2), 3);
        assert_eq!(
            rational_coeffs(&e2).unwrap(),
            vec![rational_int(1), rational_int(2), rational_int(2), rational(4, 3)]
        );
    }

    #[test]
    fn products_and_powers() {
        let a = series(&[rational_int(1), rational_int(1), rational(1, 2)]);
        let b = series(&[rational_int(1), rational_int(-1), rational(1, 2)]);
        assert_eq!(rational_coeffs(&a.mul(&b).unwrap()).unwrap(), ints(&[1, 0, 0]));
        assert_eq!(rational_coeffs(&a.pow(0)).unwrap(), ints(&[1, 0, 0]));
        let t = series(&ints(&[0, 1, 0, 0]));
        assert_eq!(rational_coeffs(&t.pow(2)).unwrap(), ints(&[0, 0, 1, 0]));
        let short = series(&ints(&[1, 1]));
        assert_eq!(a.mul(&short).unwrap_err(), Error::OrderMismatch { left: 2, right: 1 });
    }

    #[test]
    fn inversion() {
        let s = series(&[rational_int(1), rational(1, 2), rational(1, 4)]);
        assert_eq!(
            rational_coeffs(&s.invert().unwrap()).unwrap(),
            vec![rational_int(1), rational(-1, 2), rational_int(0)]
        );
        let two = series(&ints(&[2, 0, 0]));
        assert_eq!(
            rational_coeffs(&two.invert().unwrap()).unwrap(),
            vec![rational(1, 2), rational_int(0), rational_int(0)]
        );
        assert_eq!(series(&ints(&[0, 1, 0])).invert().unwrap_err(), Error::NonUnitConstantTerm);
    }

    #[test]
    fn divide_cancel_examples() {
        let f = q();
        let n = 6;
        let t = TruncSeries::monomial(&CycloElem::one(&f), 1, n);
        let one = TruncSeries::one(&f, n);
        let exp1 = TruncSeries::exp_at(&CycloElem::one(&f), n);
        let bern = divide_cancel(&t, &exp1.sub(&one).unwrap()).unwrap();
        assert_eq!(bern.order(), n - 1);
        assert_eq!(bern.egf_coefficient(0).unwrap().to_rational().unwrap(), rational_int(1));
        assert_eq!(bern.egf_coefficient(1).unwrap().to_rational().unwrap(), rational(-1, 2));
        assert_eq!(bern.egf_coefficient(2).unwrap().to_rational().unwrap(), rational(1, 6));

        // twist -1: denominator -e^t - 1 has a unit constant term
        let den = exp1.scale(&CycloElem::from_int(&f, -1)).unwrap().sub(&one).unwrap();
        let tw = divide_cancel(&t, &den).unwrap();
        assert_eq!(tw.order(), n);
        assert_eq!(tw.valuation(), Some(1));
        assert!(tw.coeffs()[0].is_zero());

        assert_eq!(divide_cancel(&one, &t).unwrap_err(), Error::PoleAtZero { num: 0, den: 1 });
        assert_eq!(
            divide_cancel(&one, &TruncSeries::zero(&f, n)).unwrap_err(),
            Error::ZeroDenominator(n)
        );
    }

    #[test]
    fn egf_extraction() {
        let f = q();
        let e = TruncSeries::exp_at(&CycloElem::one(&f), 6);
        for k in 0..=6 {
            assert!(e.egf_coefficient(k).unwrap().is_one());
        }
        assert_eq!(e.egf_coefficient(7).unwrap_err(), Error::OrderExceeded { index: 7, order: 6 });
        let s = series(&[rational(3, 7), rational_int(1)]);
        assert_eq!(s.egf_coefficient(0).unwrap().to_rational().unwrap(), rational(3, 7));
    }
}
