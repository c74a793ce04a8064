//! Dirichlet characters with exact root-of-unity values.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::arith::{euler_phi, gcd, lcm, least_primitive_root};
use crate::exact::{CycloElem, CycloField, RootOfUnity};

/// A Dirichlet character mod `d`, extended `d`-periodically to all integers.
///
/// For `d = 1` the character is identically 1, including at 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DirichletCharacter {
    modulus: u64,
    values: Vec<Option<RootOfUnity>>,
}

impl DirichletCharacter {
    pub fn principal(d: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArgument("character modulus must be positive".into()));
        }
        let values = (0..d)
            .map(|a| (gcd(a, d) == 1).then(RootOfUnity::one))
            .collect();
        Ok(DirichletCharacter { modulus: d, values })
    }

    /// Validates a value table: `chi(1) = 1`, zero exactly off the units, and
    /// complete multiplicativity on every pair of residues.
    pub fn from_table(d: u64, values: Vec<Option<RootOfUnity>>) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArgument("character modulus must be positive".into()));
        }
        if values.len() as u64 != d {
            return Err(Error::TableLength {
                expected: d,
                got: values.len(),
            });
        }
        for (a, v) in values.iter().enumerate() {
            if v.is_some() != (gcd(a as u64, d) == 1) {
                return Err(Error::WrongSupport(a as u64));
            }
        }
        let one_index = (1 % d) as usize;
        if !values[one_index].is_some_and(|v| v.is_one()) {
            return Err(Error::NotNormalized);
        }
        for a in 0..d {
            for b in a..d {
                let lhs = values[(a * b % d) as usize];
                let rhs = match (values[a as usize], values[b as usize]) {
                    (Some(x), Some(y)) => Some(x.mul(&y)),
                    _ => None,
                };
                let same = match (lhs, rhs) {
                    (Some(x), Some(y)) => x.same_root(&y),
                    (None, None) => true,
                    _ => false,
                };
                if !same {
                    return Err(Error::NotMultiplicative { a, b });
                }
            }
        }
        Ok(DirichletCharacter { modulus: d, values })
    }

    /// All `phi(d)` characters mod `d` when `(Z/dZ)^*` is cyclic.
    ///
    /// With `g` the least primitive root, character `j` sends `g^t` to `zeta_phi(d)^(j t)`.
    pub fn enumerate_cyclic(d: u64) -> Result<Vec<Self>> {
        if d == 0 {
            return Err(Error::InvalidArgument("character modulus must be positive".into()));
        }
        let g = least_primitive_root(d).ok_or(Error::NonCyclicUnitGroup(d))?;
        let phi = euler_phi(d);
        // discrete logarithm table base g
        let mut log = vec![None; d as usize];
        let mut x = 1 % d;
        for t in 0..phi {
            log[x as usize] = Some(t);
            x = x * g % d;
        }
        if d == 1 {
            log[0] = Some(0);
        }
        Ok((0..phi)
            .map(|j| DirichletCharacter {
                modulus: d,
                values: log
                    .iter()
                    .map(|t| t.map(|t| RootOfUnity::new(phi, (j * t) as i64)))
                    .collect(),
            })
            .collect())
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn values(&self) -> &[Option<RootOfUnity>] {
        &self.values
    }

    /// `chi(n)` as a root token, `None` for zero.
    pub fn value(&self, n: u64) -> Option<RootOfUnity> {
        self.values[(n % self.modulus) as usize]
    }

    pub fn is_principal(&self) -> bool {
        self.values.iter().flatten().all(RootOfUnity::is_one)
    }

    /// Least `m` such that every value lies in `Q(zeta_m)`.
    pub fn value_conductor(&self) -> u64 {
        self.values
            .iter()
            .flatten()
            .fold(1, |acc, v| lcm(acc, v.exact_order()))
    }

    /// True when every value is 0 or +-1.
    pub fn is_rational_valued(&self) -> bool {
        self.value_conductor() <= 2
    }

    /// `chi(n)` embedded in `Q(zeta_m)`.
    pub fn value_at(&self, n: u64, field: &Arc<CycloField>) -> Result<CycloElem> {
        match self.value(n) {
            None => Ok(CycloElem::zero(field)),
            Some(r) => CycloElem::from_root(&r.normalized(), field),
        }
    }

    /// `chi^s`: every value raised to the `s`-th power.
    pub fn pow(&self, s: i64) -> Self {
        DirichletCharacter {
            modulus: self.modulus,
            values: self.values.iter().map(|v| v.map(|r| r.pow(s))).collect(),
        }
    }

    /// Pointwise product of two characters with the same modulus.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.modulus != other.modulus {
            return Err(Error::InvalidArgument(format!(
                "character moduli differ: {} vs {}",
                self.modulus, other.modulus
            )));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| match (a, b) {
                (Some(x), Some(y)) => Some(x.mul(y)),
                _ => None,
            })
            .collect();
        Self::from_table(self.modulus, values)
    }
}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi mod {} [", self.modulus)?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            match v {
                None => f.write_str("0")?,
                Some(r) => write!(f, "z{}^{}", r.order(), r.exponent())?,
            }
        }
        f.write_str("]")
    }
}

/// Character description as it appears in config files.
///
/// `modulus` may be left out where the surrounding context fixes it (a grid's
/// `d` list, or the length of a table).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum CharacterSpec {
    Principal {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        modulus: Option<u64>,
    },
    Table {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        modulus: Option<u64>,
        values: Vec<Option<RootOfUnity>>,
    },
    Index {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        modulus: Option<u64>,
        j: u64,
    },
}

impl CharacterSpec {
    /// The modulus this description pins down on its own, if any.
    pub fn modulus(&self) -> Option<u64> {
        match self {
            CharacterSpec::Principal { modulus } | CharacterSpec::Index { modulus, .. } => *modulus,
            CharacterSpec::Table { modulus, values } => modulus.or(Some(values.len() as u64)),
        }
    }

    /// Builds the character, taking the modulus from the description or else from `context`.
    pub fn build(&self, context: Option<u64>) -> Result<DirichletCharacter> {
        let d = match (self.modulus(), context) {
            (Some(a), Some(b)) if a != b => {
                return Err(Error::InvalidArgument(format!(
                    "character modulus {a} conflicts with d = {b}"
                )))
            }
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => return Err(Error::InvalidArgument("character modulus is missing".into())),
        };
        match self {
            CharacterSpec::Principal { .. } => DirichletCharacter::principal(d),
            CharacterSpec::Table { values, .. } => DirichletCharacter::from_table(d, values.clone()),
            CharacterSpec::Index { j, .. } => {
                let all = DirichletCharacter::enumerate_cyclic(d)?;
                let n = all.len();
                all.into_iter().nth(*j as usize).ok_or_else(|| {
                    Error::InvalidArgument(format!("character index {j} out of range: {n} characters mod {d}"))
                })
            }
        }
    }

    /// Short stable label used in reports.
    pub fn label(&self) -> String {
        match self {
            CharacterSpec::Principal { .. } => "principal".into(),
            CharacterSpec::Index { j, .. } => format!("index:{j}"),
            CharacterSpec::Table { values, .. } => {
                let parts: Vec<String> = values
                    .iter()
                    .map(|v| match v {
                        None => "0".into(),
                        Some(r) => format!("{}/{}", r.exponent(), r.order()),
                    })
                    .collect();
                format!("table:[{}]", parts.join(","))
            }
        }
    }
}
