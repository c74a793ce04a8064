//! Dense polynomials over Z and Q, coefficients in ascending degree order.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::arith::divisors;
use super::rational::Rational;

fn trim<T: Zero>(p: &mut Vec<T>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// `Phi_m`, obtained by exact division of `x^m - 1` by `Phi_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    assert!(m >= 1, "cyclotomic polynomial index must be positive");
    let mut p = vec![BigInt::zero(); m as usize + 1];
    p[0] = BigInt::from(-1);
    p[m as usize] = BigInt::one();
    for d in divisors(m) {
        if d == m {
            continue;
        }
        p = div_exact_monic(&p, &cyclotomic_polynomial(d));
    }
    p
}

/// Quotient of `a` by the monic polynomial `b`; the remainder must vanish.
fn div_exact_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = rem[i + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    q
}

#[cfg(test)]
fn int_poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub(crate) fn to_rational_poly(p: &[BigInt]) -> Vec<Rational> {
    let mut out: Vec<Rational> = p.iter().cloned().map(Rational::from_integer).collect();
    trim(&mut out);
    out
}

fn poly_sub_scaled_shift(a: &mut [Rational], b: &[Rational], c: &Rational, shift: usize) {
    for (j, bj) in b.iter().enumerate() {
        a[shift + j] -= c * bj;
    }
}

/// Euclidean division over Q.
pub(crate) fn div_rem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut b = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    let mut q = vec![Rational::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        poly_sub_scaled_shift(&mut r, &b, &c, i);
        q[i] = c;
    }
    trim(&mut q);
    r.truncate(db);
    trim(&mut r);
    (q, r)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out: Vec<Rational> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim(&mut out);
    out
}

/// Inverse of `g` modulo `f` via the extended Euclidean algorithm; `None` if they share a factor.
pub(crate) fn inverse_mod(g: &[Rational], f: &[Rational]) -> Option<Vec<Rational>> {
    // Invariant: r0 = s0 * g (mod f), r1 = s1 * g (mod f).
    let mut r0 = f.to_vec();
    trim(&mut r0);
    let mut r1 = g.to_vec();
    trim(&mut r1);
    let mut s0: Vec<Rational> = Vec::new();
    let mut s1: Vec<Rational> = vec![Rational::one()];
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].recip();
    let (_, inv) = div_rem(&s0.iter().map(|x| x * &c).collect::<Vec<_>>(), f);
    Some(inv)
}

/// `res(a, b) = lc(a)^deg(b) * prod_{a(alpha)=0} b(alpha)`.
pub(crate) fn resultant(a: &[Rational], b: &[Rational]) -> Rational {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() || b.is_empty() {
        return Rational::zero();
    }
    let mut acc = Rational::one();
    loop {
        let da = a.len() - 1;
        let db = b.len() - 1;
        if db == 0 {
            return acc * num_traits::pow(b[0].clone(), da);
        }
        if da == 0 {
            return acc * num_traits::pow(a[0].clone(), db);
        }
        let (_, r) = div_rem(&a, &b);
        if r.is_empty() {
            return Rational::zero();
        }
        let dr = r.len() - 1;
        // res(a, b) = (-1)^(da*db) * lc(b)^(da - dr) * res(b, r)
        if da * db % 2 == 1 {
            acc = -acc;
        }
        acc *= num_traits::pow(b[db].clone(), da - dr);
        a = b;
        b = r;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rational, rational_int};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(9), ints(&[1, 0, 0, 1, 0, 0, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn phi_6_by_brute_force_division() {
        // (x^6 - 1) / ((x - 1)(x + 1)(x^2 + x + 1)) by schoolbook long division over Q.
        let num: Vec<Rational> = [-1, 0, 0, 0, 0, 0, 1].iter().map(|&c| rational_int(c)).collect();
        let den = poly_mul(
            &poly_mul(&[rational_int(-1), rational_int(1)], &[rational_int(1), rational_int(1)]),
            &[rational_int(1), rational_int(1), rational_int(1)],
        );
        let (q, r) = div_rem(&num, &den);
        assert!(r.is_empty());
        assert_eq!(q, vec![rational_int(1), rational_int(-1), rational_int(1)]);
    }

    #[test]
    fn product_of_divisor_cyclotomics_is_x_m_minus_1() {
        for m in 1..=30u64 {
            let prod = divisors(m)
                .into_iter()
                .fold(ints(&[1]), |acc, d| int_poly_mul(&acc, &cyclotomic_polynomial(d)));
            let mut expect = vec![BigInt::zero(); m as usize + 1];
            expect[0] = BigInt::from(-1);
            expect[m as usize] = BigInt::one();
            assert_eq!(prod, expect, "m = {m}");
        }
    }

    #[test]
    fn inverse_modulo() {
        // x * (-x) = -x^2 = 1 mod x^2 + 1
        let f = vec![rational_int(1), rational_int(0), rational_int(1)];
        let inv = inverse_mod(&[rational_int(0), rational_int(1)], &f).unwrap();
        assert_eq!(inv, vec![rational_int(0), rational_int(-1)]);
        assert!(inverse_mod(&[rational_int(1), rational_int(1)], &[rational_int(-1), rational_int(0), rational_int(1)]).is_none());
    }

    #[test]
    fn resultants() {
        // res(x^2 + x + 1, x - 1) = product over primitive cube roots of (w - 1) = 3
        let phi3 = vec![rational_int(1), rational_int(1), rational_int(1)];
        assert_eq!(resultant(&phi3, &[rational_int(-1), rational_int(1)]), rational_int(3));
        assert_eq!(resultant(&phi3, &[rational(1, 2)]), rational(1, 4));
        assert_eq!(resultant(&phi3, &[]), rational_int(0));
    }
}
