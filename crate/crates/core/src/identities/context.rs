use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;
use std::sync::Arc;

use crate::bernoulli::{numbers, power_sum, BernoulliFamily, TwistSpec};
use crate::characters::DirichletCharacter;
use crate::error::Result;
use crate::exact::arith::lcm;
use crate::exact::{CycloElem, CycloField, Rational, RootOfUnity};

use super::poly::UniPoly;

/// One `(chi, xi)` pair with the field that holds every `xi^w` and character value,
/// plus memoized Bernoulli families and power sums for the twists `xi^w`.
///
/// Not `Sync`; sweeps give each worker its own context.
pub struct InstanceContext {
    base: TwistSpec,
    label: String,
    families: RefCell<HashMap<(RootOfUnity, u64), Rc<BernoulliFamily>>>,
    power_sums: RefCell<HashMap<(RootOfUnity, u64, u64), CycloElem>>,
}

impl InstanceContext {
    pub fn new(chi: DirichletCharacter, xi: RootOfUnity, label: impl Into<String>) -> Result<Self> {
        let m = lcm(xi.exact_order(), chi.value_conductor());
        Ok(InstanceContext {
            base: TwistSpec::with_conductor(chi, xi, m)?,
            label: label.into(),
            families: RefCell::default(),
            power_sums: RefCell::default(),
        })
    }

    pub fn chi(&self) -> &DirichletCharacter {
        self.base.chi()
    }

    pub fn xi(&self) -> RootOfUnity {
        self.base.xi()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn d(&self) -> u64 {
        self.base.modulus()
    }

    pub fn field(&self) -> &Arc<CycloField> {
        self.base.field()
    }

    pub fn spec(&self, w: u64) -> TwistSpec {
        self.base.twisted_by_power(w as i64)
    }

    /// Family `B^(k)_{., chi, xi^w}` covering at least index `n`.
    pub fn family(&self, w: u64, k: u64, n: usize) -> Result<Rc<BernoulliFamily>> {
        let key = (self.base.xi().pow(w as i64).normalized(), k);
        if let Some(f) = self.families.borrow().get(&key) {
            if f.max_n() >= n {
                return Ok(f.clone());
            }
        }
        let fam = Rc::new(numbers(&self.spec(w), k, n.max(8))?);
        self.families.borrow_mut().insert(key, fam.clone());
        Ok(fam)
    }

    pub fn number(&self, w: u64, k: u64, n: usize) -> Result<CycloElem> {
        Ok(self.family(w, k, n)?.numbers()[n].clone())
    }

    /// `B^(k)_{n, chi, xi^w}(x)` as a [`UniPoly`].
    pub fn polynomial(&self, w: u64, k: u64, n: usize) -> Result<UniPoly> {
        let p = self.family(w, k, n)?.polynomial(n)?;
        Ok(UniPoly::new(self.field(), p.coeffs().to_vec()))
    }

    pub fn polynomial_at_rational(&self, w: u64, k: u64, n: usize, arg: &Rational) -> Result<CycloElem> {
        Ok(self.family(w, k, n)?.polynomial(n)?.evaluate_rational(arg))
    }

    /// `T_{k, chi, xi^w}(n)`.
    pub fn power_sum(&self, w: u64, k: u64, n: u64) -> CycloElem {
        let key = (self.base.xi().pow(w as i64).normalized(), k, n);
        if let Some(v) = self.power_sums.borrow().get(&key) {
            return v.clone();
        }
        let v = power_sum(&self.spec(w), k, n);
        self.power_sums.borrow_mut().insert(key, v.clone());
        v
    }

    /// `chi(i) * xi^(w i)` in the ambient field.
    pub fn weight(&self, w: u64, i: u64) -> CycloElem {
        let c = self.base.chi_at(i);
        if c.is_zero() {
            return c;
        }
        &c * &self.base.xi_power((w * i) as i64)
    }

    pub fn chi_at(&self, i: u64) -> CycloElem {
        self.base.chi_at(i)
    }
}
