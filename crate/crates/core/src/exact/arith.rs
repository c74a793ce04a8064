//! Small-integer number theory used across the crate.

use num_integer::Integer;

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Prime factorization by trial division, as (prime, exponent) pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// All positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Returns `r` when `n == p^r` for the given prime `p` (with `n = 1` giving 0).
pub fn prime_power_exponent(mut n: u64, p: u64) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let mut r = 0;
    while n % p == 0 {
        n /= p;
        r += 1;
    }
    (n == 1).then_some(r)
}

pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut acc = 1u128;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// True when (Z/nZ)^* is cyclic: n in {1, 2, 4, p^k, 2p^k} with p an odd prime.
pub fn has_cyclic_unit_group(n: u64) -> bool {
    match n {
        0 => false,
        1 | 2 | 4 => true,
        _ => {
            let m = if n % 2 == 0 { n / 2 } else { n };
            if m % 2 == 0 {
                return false;
            }
            factorize(m).len() == 1
        }
    }
}

/// Multiplicative order of `a` modulo `n`; `None` when `gcd(a, n) != 1`.
pub fn multiplicative_order(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(1);
    }
    if gcd(a % n, n) != 1 {
        return None;
    }
    let phi = euler_phi(n);
    divisors(phi)
        .into_iter()
        .find(|&k| pow_mod(a, k, n) == 1)
}

/// Least primitive root modulo `n`, if the unit group is cyclic.
pub fn least_primitive_root(n: u64) -> Option<u64> {
    if !has_cyclic_unit_group(n) {
        return None;
    }
    if n <= 2 {
        return Some(1);
    }
    let phi = euler_phi(n);
    (1..n).find(|&g| multiplicative_order(g, n) == Some(phi))
}

pub fn binomial(n: u64, k: u64) -> num_bigint::BigInt {
    if k > n {
        return num_bigint::BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = num_bigint::BigInt::from(1);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> num_bigint::BigInt {
    (1..=n).fold(num_bigint::BigInt::from(1), |acc, i| acc * i)
}
