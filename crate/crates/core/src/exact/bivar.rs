use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;

use super::field::{BaseField, Elem};
use super::poly2::Poly2;
use super::ratfunc::RatFunc;
use super::upoly::UPoly;
use crate::error::{Error, Result};

/// A polynomial in `y` with coefficients in `k(x)`, stored sparsely by `y`-degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BivarPoly {
    field: BaseField,
    terms: BTreeMap<u32, RatFunc>,
}

/// `f = poly / (x^x_shift * unit_den(x))` with `unit_den(0) != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cleared {
    pub poly: Poly2,
    pub x_shift: u32,
    pub unit_den_at_zero: Elem,
}

impl BivarPoly {
    pub fn zero(field: BaseField) -> Self {
        BivarPoly { field, terms: BTreeMap::new() }
    }

    pub fn one(field: BaseField) -> Self {
        BivarPoly::constant(RatFunc::one(field))
    }

    pub fn constant(c: RatFunc) -> Self {
        BivarPoly::monomial(c, 0)
    }

    pub fn elem(c: Elem) -> Self {
        BivarPoly::constant(RatFunc::constant(c))
    }

    /// `c * y^j`.
    pub fn monomial(c: RatFunc, j: u32) -> Self {
        let field = c.field();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(j, c);
        }
        BivarPoly { field, terms }
    }

    pub fn x(field: BaseField) -> Self {
        BivarPoly::constant(RatFunc::x_power(field, 1))
    }

    pub fn y(field: BaseField) -> Self {
        BivarPoly::monomial(RatFunc::one(field), 1)
    }

    /// `x^a y^b` with `a` possibly negative.
    pub fn x_y_power(field: BaseField, a: i64, b: u32) -> Self {
        BivarPoly::monomial(RatFunc::x_power(field, a), b)
    }

    pub fn from_terms(field: BaseField, terms: impl IntoIterator<Item = (u32, RatFunc)>) -> Self {
        let mut p = BivarPoly::zero(field);
        for (j, c) in terms {
            p.add_term(j, &c);
        }
        p
    }

    fn add_term(&mut self, j: u32, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        let s = match self.terms.get(&j) {
            Some(old) => old.add(c),
            None => c.clone(),
        };
        if s.is_zero() {
            self.terms.remove(&j);
        } else {
            self.terms.insert(j, s);
        }
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    /// Nonzero coefficients in ascending `y`-degree.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, &RatFunc)> {
        self.terms.iter().map(|(j, c)| (*j, c))
    }

    pub fn coeff(&self, j: u32) -> RatFunc {
        self.terms.get(&j).cloned().unwrap_or_else(|| RatFunc::zero(self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading(&self) -> Option<&RatFunc> {
        self.terms.values().next_back()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(RatFunc::is_one)
    }

    /// True when the polynomial lies in `k(x)`.
    pub fn is_y_free(&self) -> bool {
        self.deg_y().unwrap_or(0) == 0
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.values().all(RatFunc::is_polynomial)
    }

    pub fn add(&self, other: &BivarPoly) -> BivarPoly {
        let mut r = self.clone();
        for (j, c) in &other.terms {
            r.add_term(*j, c);
        }
        r
    }

    pub fn sub(&self, other: &BivarPoly) -> BivarPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> BivarPoly {
        BivarPoly { field: self.field, terms: self.terms.iter().map(|(j, c)| (*j, c.neg())).collect() }
    }

    pub fn mul(&self, other: &BivarPoly) -> BivarPoly {
        let mut r = BivarPoly::zero(self.field);
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                r.add_term(i + j, &a.mul(b));
            }
        }
        r
    }

    pub fn scale(&self, c: &RatFunc) -> BivarPoly {
        if c.is_zero() {
            return BivarPoly::zero(self.field);
        }
        BivarPoly { field: self.field, terms: self.terms.iter().map(|(j, a)| (*j, a.mul(c))).collect() }
    }

    pub fn scale_elem(&self, c: &Elem) -> BivarPoly {
        self.scale(&RatFunc::constant(c.clone()))
    }

    pub fn pow(&self, n: u32) -> BivarPoly {
        let mut r = BivarPoly::one(self.field);
        let mut b = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                r = r.mul(&b);
            }
            n >>= 1;
            if n > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    /// Division with remainder by a polynomial monic in `y`.
    pub fn divrem(&self, g: &BivarPoly) -> Result<(BivarPoly, BivarPoly)> {
        if !g.is_monic() {
            return Err(Error::NonMonicDivisor);
        }
        let dg = g.deg_y().unwrap();
        let mut r = self.clone();
        let mut q = BivarPoly::zero(self.field);
        while let Some(dr) = r.deg_y() {
            if dr < dg {
                break;
            }
            let c = r.leading().unwrap().clone();
            let shift = dr - dg;
            for (j, b) in &g.terms {
                r.add_term(j + shift, &c.mul(b).neg());
            }
            q.add_term(shift, &c);
        }
        Ok((q, r))
    }

    pub fn rem(&self, g: &BivarPoly) -> Result<BivarPoly> {
        Ok(self.divrem(g)?.1)
    }

    /// The `q`-expansion `f = sum_j a_j q^j` with `deg_y a_j < deg_y q`.
    pub fn expand(&self, q: &BivarPoly) -> Result<Vec<BivarPoly>> {
        if !q.is_monic() {
            return Err(Error::NonMonicDivisor);
        }
        if q.deg_y() == Some(0) {
            return Err(Error::ConstantPolynomial);
        }
        let mut out = Vec::new();
        let mut cur = self.clone();
        while !cur.is_zero() {
            let (quo, rem) = cur.divrem(q)?;
            out.push(rem);
            cur = quo;
        }
        Ok(out)
    }

    /// The Hasse derivative `d_b`, sending `y^n` to `C(n, b) y^(n-b)`.
    pub fn hasse(&self, b: u32) -> BivarPoly {
        let mut r = BivarPoly::zero(self.field);
        for (n, c) in &self.terms {
            if *n < b {
                continue;
            }
            let binom = binomial(BigInt::from(*n), BigInt::from(b));
            let k = self.field.from_bigint(&binom);
            r.add_term(n - b, &c.scale(&k));
        }
        r
    }

    /// Writes `f = P / (x^k * u(x))` with `P` in `k[x, y]` and `u(0) != 0`.
    pub fn clear_denominators(&self) -> Cleared {
        let field = self.field;
        let mut l = UPoly::one(field);
        for c in self.terms.values() {
            if !c.is_polynomial() {
                let g = l.gcd(c.den());
                l = l.mul(&c.den().divrem(&g).unwrap().0);
            }
        }
        let mut poly = Poly2::zero(field);
        for (j, c) in &self.terms {
            let m = l.divrem(c.den()).unwrap().0.mul(c.num());
            for (i, a) in m.coeffs().iter().enumerate() {
                if !a.is_zero() {
                    poly.add_term(i as u32, *j, a);
                }
            }
        }
        let k = l.ord().unwrap();
        Cleared { poly, x_shift: k as u32, unit_den_at_zero: l.coeff(k) }
    }

    pub fn to_poly2(&self) -> Option<Poly2> {
        if !self.is_polynomial() {
            return None;
        }
        Some(self.clear_denominators().poly)
    }

    /// Exchanges the roles of `x` and `y`; only defined for polynomials.
    pub fn swap_xy(&self) -> Option<BivarPoly> {
        Some(self.to_poly2()?.swap().to_bivar())
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.is_polynomial() {
            return write!(f, "{}", self.clear_denominators().poly);
        }
        let mut first = true;
        for (j, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let ypart = match j {
                0 => String::new(),
                1 => "*y".to_string(),
                _ => format!("*y^{j}"),
            };
            if c.is_polynomial() {
                write!(f, "({c}){ypart}")?;
            } else {
                write!(f, "{c}{ypart}")?;
            }
        }
        Ok(())
    }
}
