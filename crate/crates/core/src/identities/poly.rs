//! Polynomials in `x` and in `(x, y)` over a cyclotomic field.

use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use crate::exact::arith::binomial;
use crate::exact::{CycloElem, CycloField, Rational};

/// Dense univariate polynomial, ascending powers; never empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<CycloElem>,
}

impl UniPoly {
    pub fn new(field: &Arc<CycloField>, mut coeffs: Vec<CycloElem>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(CycloElem::zero(field));
        }
        UniPoly { coeffs }
    }

    pub fn zero(field: &Arc<CycloField>) -> Self {
        UniPoly {
            coeffs: vec![CycloElem::zero(field)],
        }
    }

    pub fn constant(c: CycloElem) -> Self {
        UniPoly { coeffs: vec![c] }
    }

    pub fn coeffs(&self) -> &[CycloElem] {
        &self.coeffs
    }

    pub fn field(&self) -> &Arc<CycloField> {
        self.coeffs[0].field()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CycloElem::is_zero)
    }

    /// `p(a x)`.
    pub fn scale_arg(&self, a: &Rational) -> Self {
        let mut pow = Rational::from_integer(BigInt::from(1));
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let out = c.scale(&pow);
                pow = &pow * a;
                out
            })
            .collect();
        UniPoly { coeffs }
    }

    /// `p(a x + b)`, expanding each `(a x + b)^e` binomially.
    pub fn compose_affine(&self, a: &Rational, b: &Rational) -> Self {
        let n = self.coeffs.len();
        let one = Rational::from_integer(BigInt::from(1));
        let a_pows: Vec<Rational> = std::iter::successors(Some(one.clone()), |p| Some(p * a)).take(n).collect();
        let b_pows: Vec<Rational> = std::iter::successors(Some(one), |p| Some(p * b)).take(n).collect();
        let coeffs = (0..n)
            .map(|s| {
                let mut acc = CycloElem::zero(self.field());
                for e in s..n {
                    let c = &self.coeffs[e];
                    if c.is_zero() {
                        continue;
                    }
                    let w = Rational::from_integer(binomial(e as u64, s as u64)) * &a_pows[s] * &b_pows[e - s];
                    acc = acc + c.scale(&w);
                }
                acc
            })
            .collect();
        UniPoly { coeffs }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| c.scale(q)).collect(),
        }
    }

    pub fn mul_elem(&self, e: &CycloElem) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| c * e).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = CycloElem::zero(self.field());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = other.coeffs.get(i).unwrap_or(&zero);
                a + b
            })
            .collect();
        UniPoly { coeffs }
    }

    pub fn eval_rational(&self, x: &Rational) -> CycloElem {
        let mut acc = CycloElem::zero(self.field());
        for c in self.coeffs.iter().rev() {
            acc = &acc.scale(x) + c;
        }
        acc
    }
}

/// `sum c[i][j] x^i y^j`, kept with trailing zero rows and columns trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BivariatePoly {
    /// `coeffs[i][j]` multiplies `x^i y^j`; all rows have the same length.
    coeffs: Vec<Vec<CycloElem>>,
}

impl BivariatePoly {
    pub fn zero(field: &Arc<CycloField>) -> Self {
        BivariatePoly {
            coeffs: vec![vec![CycloElem::zero(field)]],
        }
    }

    /// `p(x) * q(y)`.
    pub fn outer(px: &UniPoly, qy: &UniPoly) -> Self {
        let coeffs = px
            .coeffs
            .iter()
            .map(|a| qy.coeffs.iter().map(|b| a * b).collect())
            .collect();
        let mut out = BivariatePoly { coeffs };
        out.trim();
        out
    }

    /// A polynomial in `x` alone.
    pub fn from_x(px: &UniPoly) -> Self {
        let mut out = BivariatePoly {
            coeffs: px.coeffs.iter().map(|c| vec![c.clone()]).collect(),
        };
        out.trim();
        out
    }

    pub fn field(&self) -> &Arc<CycloField> {
        self.coeffs[0][0].field()
    }

    pub fn x_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn y_degree(&self) -> usize {
        self.coeffs[0].len() - 1
    }

    pub fn coeff(&self, i: usize, j: usize) -> CycloElem {
        self.coeffs
            .get(i)
            .and_then(|row| row.get(j))
            .cloned()
            .unwrap_or_else(|| CycloElem::zero(self.field()))
    }

    pub fn rows(&self) -> &[Vec<CycloElem>] {
        &self.coeffs
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs.last().unwrap().iter().all(CycloElem::is_zero) {
            self.coeffs.pop();
        }
        while self.coeffs[0].len() > 1 && self.coeffs.iter().all(|row| row.last().unwrap().is_zero()) {
            for row in &mut self.coeffs {
                row.pop();
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let rows = self.coeffs.len().max(other.coeffs.len());
        let cols = self.coeffs[0].len().max(other.coeffs[0].len());
        let coeffs = (0..rows)
            .map(|i| (0..cols).map(|j| self.coeff(i, j) + other.coeff(i, j)).collect())
            .collect();
        let mut out = BivariatePoly { coeffs };
        out.trim();
        out
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let mut out = BivariatePoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|row| row.iter().map(|c| c.scale(q)).collect())
                .collect(),
        };
        out.trim();
        out
    }

    /// The specialization `y = 0`.
    pub fn at_y_zero(&self) -> Self {
        let mut out = BivariatePoly {
            coeffs: self.coeffs.iter().map(|row| vec![row[0].clone()]).collect(),
        };
        out.trim();
        out
    }

    pub fn constant_term(&self) -> CycloElem {
        self.coeffs[0][0].clone()
    }

    /// First `(i, j)` in lexicographic order where the two polynomials differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        let rows = self.coeffs.len().max(other.coeffs.len());
        let cols = self.coeffs[0].len().max(other.coeffs[0].len());
        (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .find(|&(i, j)| self.coeff(i, j) != other.coeff(i, j))
    }

    pub fn eval_rational(&self, x: &Rational, y: &Rational) -> CycloElem {
        let mut acc = CycloElem::zero(self.field());
        for row in self.coeffs.iter().rev() {
            let mut inner = CycloElem::zero(self.field());
            for c in row.iter().rev() {
                inner = &inner.scale(y) + c;
            }
            acc = &acc.scale(x) + &inner;
        }
        acc
    }
}
