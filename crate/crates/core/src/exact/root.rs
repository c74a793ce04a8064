use serde::{Deserialize, Serialize};

use super::arith::{gcd, lcm};

/// The root of unity `zeta_order^exponent`, kept as an exact token.
///
/// Two tokens may name the same complex number with different orders
/// (`zeta_4^2 == zeta_2^1`); compare [`RootOfUnity::normalized`] forms for that.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawRoot")]
pub struct RootOfUnity {
    order: u64,
    exponent: u64,
}

/// Wire form `{ "order": m, "exponent": j }`; the exponent is reduced mod `m` on load.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRoot {
    order: u64,
    exponent: i64,
}

impl TryFrom<RawRoot> for RootOfUnity {
    type Error = String;
    fn try_from(raw: RawRoot) -> Result<Self, String> {
        if raw.order == 0 {
            return Err("root of unity order must be positive".into());
        }
        Ok(RootOfUnity::new(raw.order, raw.exponent))
    }
}

impl RootOfUnity {
    /// Panics if `order == 0`.
    pub fn new(order: u64, exponent: i64) -> Self {
        assert!(order > 0, "root of unity order must be positive");
        let exponent = exponent.rem_euclid(order as i64) as u64;
        RootOfUnity { order, exponent }
    }

    pub fn one() -> Self {
        RootOfUnity { order: 1, exponent: 0 }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Order of the root as a group element.
    pub fn exact_order(&self) -> u64 {
        self.order / gcd(self.exponent, self.order)
    }

    /// Same root with `gcd(exponent, order) = 1`.
    pub fn normalized(&self) -> Self {
        let g = gcd(self.exponent, self.order);
        RootOfUnity {
            order: self.order / g,
            exponent: self.exponent / g,
        }
    }

    pub fn is_one(&self) -> bool {
        self.exponent == 0
    }

    pub fn same_root(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }

    pub fn pow(&self, e: i64) -> Self {
        let m = self.order as i128;
        let j = (self.exponent as i128 * e as i128).rem_euclid(m);
        RootOfUnity {
            order: self.order,
            exponent: j as u64,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let m = lcm(self.order, other.order);
        let j = self.exponent * (m / self.order) + other.exponent * (m / other.order);
        RootOfUnity {
            order: m,
            exponent: j % m,
        }
        .normalized()
    }

    /// Exponent of this root as a power of `zeta_m`, when `order | m`.
    pub fn exponent_in(&self, m: u64) -> Option<u64> {
        (m % self.order == 0).then(|| self.exponent * (m / self.order))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_normalization() {
        let r = RootOfUnity::new(4, -1);
        assert_eq!(r.exponent(), 3);
        assert_eq!(RootOfUnity::new(4, 2).normalized(), RootOfUnity::new(2, 1));
        assert_eq!(RootOfUnity::new(6, 0).normalized(), RootOfUnity::one());
        assert_eq!(RootOfUnity::new(9, 3).exact_order(), 3);
    }

    #[test]
    fn wire_form_reduces_exponent() {
        let r: RootOfUnity = serde_json::from_str(r#"{"order": 4, "exponent": -1}"#).unwrap();
        assert_eq!(r, RootOfUnity::new(4, 3));
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"{"order":4,"exponent":3}"#);
        assert!(serde_json::from_str::<RootOfUnity>(r#"{"order": 0, "exponent": 0}"#).is_err());
        assert!(serde_json::from_str::<RootOfUnity>(r#"{"order": 2, "exponent": 0, "x": 1}"#).is_err());
    }

    #[test]
    fn products() {
        let a = RootOfUnity::new(4, 1);
        assert!(a.mul(&a).same_root(&RootOfUnity::new(2, 1)));
        assert!(a.pow(4).is_one());
        assert!(RootOfUnity::new(3, 1).mul(&RootOfUnity::new(2, 1)).same_root(&RootOfUnity::new(6, 5)));
        assert_eq!(RootOfUnity::new(3, 2).exponent_in(9), Some(6));
        assert_eq!(RootOfUnity::new(3, 2).exponent_in(4), None);
    }
}
