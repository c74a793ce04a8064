use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::arith::{euler_phi, gcd, is_prime, prime_power_exponent};
use super::poly::{cyclotomic_polynomial, inverse_mod, resultant, to_rational_poly};
use super::rational::{format_rational, Rational, Valuation};
use super::root::RootOfUnity;
use crate::error::{Error, Result};

/// Largest conductor accepted; keeps the power tables small.
pub const MAX_CONDUCTOR: u64 = 1 << 12;

/// The field `Q(zeta_m)` in the power basis `1, zeta, ..., zeta^(phi(m)-1)`.
#[derive(Debug)]
pub struct CycloField {
    conductor: u64,
    degree: usize,
    /// `Phi_m`, ascending, monic.
    min_poly: Vec<i64>,
    /// `powers[k]` = coordinates of `zeta^k` for `0 <= k < m`.
    powers: Vec<Vec<i64>>,
}

impl PartialEq for CycloField {
    fn eq(&self, other: &Self) -> bool {
        self.conductor == other.conductor
    }
}

impl Eq for CycloField {}

static FIELDS: OnceLock<Mutex<HashMap<u64, Arc<CycloField>>>> = OnceLock::new();

impl CycloField {
    /// Shared handle to `Q(zeta_m)`; fields are built once per process.
    pub fn get(m: u64) -> Result<Arc<CycloField>> {
        if m == 0 {
            return Err(Error::ZeroConductor);
        }
        if m > MAX_CONDUCTOR {
            return Err(Error::ConductorTooLarge(m));
        }
        let cache = FIELDS.get_or_init(Default::default);
        if let Some(f) = cache.lock().unwrap().get(&m) {
            return Ok(f.clone());
        }
        let field = Arc::new(Self::build(m)?);
        Ok(cache.lock().unwrap().entry(m).or_insert(field).clone())
    }

    /// `Q` itself, as `Q(zeta_1)`.
    pub fn rationals() -> Arc<CycloField> {
        Self::get(1).expect("conductor 1 is always valid")
    }

    fn build(m: u64) -> Result<CycloField> {
        let min_poly = cyclotomic_polynomial(m)
            .iter()
            .map(|c| c.to_i64().ok_or(Error::ConductorTooLarge(m)))
            .collect::<Result<Vec<_>>>()?;
        let degree = euler_phi(m) as usize;
        debug_assert_eq!(min_poly.len(), degree + 1);
        let mut powers = Vec::with_capacity(m as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..m {
            powers.push(cur.clone());
            // multiply by zeta: shift up, then fold the overflow term with Phi_m
            let top = cur[degree - 1];
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            for i in 0..degree {
                cur[i] = top
                    .checked_mul(min_poly[i])
                    .and_then(|t| cur[i].checked_sub(t))
                    .ok_or(Error::ConductorTooLarge(m))?;
            }
        }
        Ok(CycloField {
            conductor: m,
            degree,
            min_poly,
            powers,
        })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// `phi(m)`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn minimal_polynomial(&self) -> &[i64] {
        &self.min_poly
    }

    fn power(&self, k: u64) -> &[i64] {
        &self.powers[(k % self.conductor) as usize]
    }
}

/// An element of `Q(zeta_m)`.
///
/// Stored as integer coordinates over a common positive denominator with
/// `gcd(content, den) = 1`, so equality of the stored data is field equality.
#[derive(Clone)]
pub struct CycloElem {
    field: Arc<CycloField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl PartialEq for CycloElem {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor == other.field.conductor && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycloElem {}

impl CycloElem {
    fn from_parts(field: Arc<CycloField>, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut e = CycloElem { field, num, den };
        e.normalize();
        e
    }

    fn normalize(&mut self) {
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in &mut self.num {
                *c = -&*c;
            }
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                return;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            for c in &mut self.num {
                *c /= &g;
            }
            self.den /= &g;
        }
    }

    pub fn zero(field: &Arc<CycloField>) -> Self {
        CycloElem {
            field: field.clone(),
            num: vec![BigInt::zero(); field.degree],
            den: BigInt::one(),
        }
    }

    pub fn one(field: &Arc<CycloField>) -> Self {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: &Arc<CycloField>, n: i64) -> Self {
        let mut e = Self::zero(field);
        e.num[0] = BigInt::from(n);
        e
    }

    pub fn from_rational(field: &Arc<CycloField>, q: &Rational) -> Self {
        let mut num = vec![BigInt::zero(); field.degree];
        num[0] = q.numer().clone();
        Self::from_parts(field.clone(), num, q.denom().clone())
    }

    /// Builds an element from power-basis coordinates; extra coordinates are an error.
    pub fn from_coeffs(field: &Arc<CycloField>, coeffs: &[Rational]) -> Result<Self> {
        if coeffs.len() != field.degree {
            return Err(Error::InvalidArgument(format!(
                "Q(zeta_{}) needs {} coordinates, got {}",
                field.conductor,
                field.degree,
                coeffs.len()
            )));
        }
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let num = coeffs
            .iter()
            .map(|q| q.numer() * (&den / q.denom()))
            .collect();
        Ok(Self::from_parts(field.clone(), num, den))
    }

    /// `zeta_m^k` for any integer `k`.
    pub fn zeta_power(field: &Arc<CycloField>, k: i64) -> Self {
        let k = k.rem_euclid(field.conductor as i64) as u64;
        CycloElem {
            field: field.clone(),
            num: field.power(k).iter().map(|&c| BigInt::from(c)).collect(),
            den: BigInt::one(),
        }
    }

    /// The root `r` as an element of `Q(zeta_m)`; requires `order(r) | m`.
    pub fn from_root(r: &RootOfUnity, field: &Arc<CycloField>) -> Result<Self> {
        let k = r.exponent_in(field.conductor).ok_or(Error::NonDivisibleConductor {
            from: r.order(),
            to: field.conductor,
        })?;
        Ok(Self::zeta_power(field, k as i64))
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn conductor(&self) -> u64 {
        self.field.conductor
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// Power-basis coordinates.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::new(c.clone(), self.den.clone()))
            .collect()
    }

    /// The value as a rational, when it lies in `Q`.
    pub fn to_rational(&self) -> Option<Rational> {
        self.num[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| Rational::new(self.num[0].clone(), self.den.clone()))
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field.conductor == other.field.conductor {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.field.conductor,
                right: other.field.conductor,
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self, negate: bool) -> Self {
        let (num, den) = if self.den == other.den {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if negate { a - b } else { a + b })
                .collect();
            (num, self.den.clone())
        } else {
            let g = self.den.gcd(&other.den);
            let sa = &other.den / &g;
            let sb = &self.den / &g;
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| {
                    let (x, y) = (a * &sa, b * &sb);
                    if negate {
                        x - y
                    } else {
                        x + y
                    }
                })
                .collect();
            (num, &self.den * sa)
        };
        Self::from_parts(self.field.clone(), num, den)
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.field.degree;
        if n == 1 {
            let num = vec![&self.num[0] * &other.num[0]];
            return Self::from_parts(self.field.clone(), num, &self.den * &other.den);
        }
        let mut acc = vec![BigInt::zero(); 2 * n - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    acc[i + j] += a * b;
                }
            }
        }
        // fold x^k for k >= n using x^n = -(Phi_m - x^n)
        let phi = &self.field.min_poly;
        for k in (n..2 * n - 1).rev() {
            let c = std::mem::take(&mut acc[k]);
            if c.is_zero() {
                continue;
            }
            for (i, &pi) in phi[..n].iter().enumerate() {
                if pi != 0 {
                    acc[k - n + i] -= &c * pi;
                }
            }
        }
        acc.truncate(n);
        Self::from_parts(self.field.clone(), acc, &self.den * &other.den)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Phi_m`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.to_rational() {
            return Ok(Self::from_rational(&self.field, &q.recip()));
        }
        let g = to_rational_poly(&self.num);
        let f = to_rational_poly(&self.field.min_poly.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>());
        let inv = inverse_mod(&g, &f).ok_or(Error::DivisionByZero)?;
        let mut coeffs = vec![Rational::zero(); self.field.degree];
        for (i, c) in inv.into_iter().enumerate() {
            coeffs[i] = c * Rational::from_integer(self.den.clone());
        }
        Self::from_coeffs(&self.field, &coeffs)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        Self::from_parts(self.field.clone(), num, &self.den * q.denom())
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        let num = self.num.iter().map(|c| c * k).collect();
        Self::from_parts(self.field.clone(), num, self.den.clone())
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Image under `zeta_a -> zeta_b^(b/a)`; requires `a | b`.
    pub fn embed(&self, b: u64) -> Result<Self> {
        let a = self.field.conductor;
        if b == 0 || b % a != 0 {
            return Err(Error::NonDivisibleConductor { from: a, to: b });
        }
        if a == b {
            return Ok(self.clone());
        }
        let target = CycloField::get(b)?;
        Ok(self.map_basis(&target, b / a))
    }

    /// Image under the automorphism `zeta_m -> zeta_m^s`, `gcd(s, m) = 1`.
    pub fn galois(&self, s: u64) -> Result<Self> {
        let m = self.field.conductor;
        if gcd(s % m, m) != 1 && m != 1 {
            return Err(Error::InvalidArgument(format!(
                "automorphism exponent {s} is not a unit mod {m}"
            )));
        }
        let field = self.field.clone();
        Ok(self.map_basis(&field, s))
    }

    /// Sends `zeta_src^i` to `zeta_target^(i*step)`.
    fn map_basis(&self, target: &Arc<CycloField>, step: u64) -> Self {
        let mut num = vec![BigInt::zero(); target.degree];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, &p) in num.iter_mut().zip(target.power(i as u64 * step)) {
                if p != 0 {
                    *slot += c * p;
                }
            }
        }
        Self::from_parts(target.clone(), num, self.den.clone())
    }

    /// Field norm `N(e) = res(Phi_m, e(x))`, so that `N(q) = q^phi(m)` for rational `q`.
    pub fn norm(&self) -> Rational {
        if self.field.degree == 1 {
            return Rational::new(self.num[0].clone(), self.den.clone());
        }
        let f = to_rational_poly(&self.field.min_poly.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>());
        let g = to_rational_poly(&self.num);
        let r = resultant(&f, &g);
        r / num_traits::pow(Rational::from_integer(self.den.clone()), self.field.degree)
    }

    /// `nu_p(e)`, normalized by `nu_p(p) = 1`.
    ///
    /// Defined for rational elements and for conductors `1` or `p^r`, where a
    /// single prime lies above `p`.
    pub fn padic_valuation(&self, p: u64) -> Result<Valuation> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if self.is_zero() {
            return Ok(Valuation::Infinite);
        }
        if let Some(q) = self.to_rational() {
            return Ok(Valuation::of_rational(&q, p));
        }
        let m = self.field.conductor;
        if prime_power_exponent(m, p).is_none() {
            return Err(Error::UnsupportedField { conductor: m, p });
        }
        match Valuation::of_rational(&self.norm(), p) {
            Valuation::Finite(v) => Ok(Valuation::Finite(
                v / Rational::from_integer(BigInt::from(self.field.degree)),
            )),
            Valuation::Infinite => unreachable!("nonzero element has nonzero norm"),
        }
    }
}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.to_rational() {
            if self.field.conductor == 1 {
                return f.write_str(&format_rational(&q));
            }
        }
        let parts: Vec<String> = self.coeffs().iter().map(format_rational).collect();
        write!(f, "Q(zeta_{})[{}]", self.field.conductor, parts.join(", "))
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&CycloElem> for &CycloElem {
            type Output = CycloElem;
            fn $method(self, rhs: &CycloElem) -> CycloElem {
                if let Err(e) = self.check_field(rhs) {
                    panic!("{e}");
                }
                $body(self, rhs)
            }
        }
        impl $tr<CycloElem> for CycloElem {
            type Output = CycloElem;
            fn $method(self, rhs: CycloElem) -> CycloElem {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&CycloElem> for CycloElem {
            type Output = CycloElem;
            fn $method(self, rhs: &CycloElem) -> CycloElem {
                (&self).$method(rhs)
            }
        }
    };
}

// Operators panic on a field mismatch; the `checked_*` methods report it instead.
binop!(Add, add, |a: &CycloElem, b: &CycloElem| a.add_unchecked(b, false));
binop!(Sub, sub, |a: &CycloElem, b: &CycloElem| a.add_unchecked(b, true));
binop!(Mul, mul, |a: &CycloElem, b: &CycloElem| a.mul_unchecked(b));

impl Neg for &CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        CycloElem {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        -&self
    }
}

impl std::iter::Sum for CycloElem {
    fn sum<I: Iterator<Item = CycloElem>>(mut iter: I) -> CycloElem {
        let first = iter.next().expect("sum of an empty CycloElem iterator has no field");
        iter.fold(first, |acc, x| acc + x)
    }
}
