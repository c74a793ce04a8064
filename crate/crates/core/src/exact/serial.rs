//! JSON form of field elements.
//!
//! An element of `Q(zeta_1) = Q` is the bare string `"num/den"`; anything else is
//! `{ "conductor": m, "coeffs": ["num/den", ...] }` in the power basis of `Q(zeta_m)`.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::cyclo::{CycloElem, CycloField};
use super::rational::{format_rational, parse_rational};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ElemObject {
    conductor: u64,
    coeffs: Vec<String>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ElemRepr {
    Scalar(String),
    Object(ElemObject),
}

impl Serialize for CycloElem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.conductor() == 1 {
            let q = self.to_rational().expect("Q(zeta_1) is Q");
            return s.serialize_str(&format_rational(&q));
        }
        ElemObject {
            conductor: self.conductor(),
            coeffs: self.coeffs().iter().map(format_rational).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (conductor, coeffs) = match ElemRepr::deserialize(d)? {
            ElemRepr::Scalar(s) => (1, vec![s]),
            ElemRepr::Object(o) => (o.conductor, o.coeffs),
        };
        let field = CycloField::get(conductor).map_err(D::Error::custom)?;
        let coeffs = coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        CycloElem::from_coeffs(&field, &coeffs).map_err(D::Error::custom)
    }
}
