use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;

use super::bivar::BivarPoly;
use super::field::{BaseField, Elem};
use super::ratfunc::RatFunc;
use super::upoly::{write_term, UPoly};

/// A sparse polynomial in `k[x, y]`, keyed by `(x exponent, y exponent)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly2 {
    field: BaseField,
    terms: BTreeMap<(u32, u32), Elem>,
}

fn pow_table(p: &Poly2, n: u32) -> Vec<Poly2> {
    let mut out = vec![Poly2::one(p.field)];
    for i in 1..=n as usize {
        out.push(out[i - 1].mul(p));
    }
    out
}

impl Poly2 {
    pub fn zero(field: BaseField) -> Self {
        Poly2 { field, terms: BTreeMap::new() }
    }

    pub fn one(field: BaseField) -> Self {
        Poly2::monomial(field.one(), 0, 0)
    }

    pub fn monomial(c: Elem, i: u32, j: u32) -> Self {
        let mut p = Poly2::zero(c.field());
        p.add_term(i, j, &c);
        p
    }

    pub fn x(field: BaseField) -> Self {
        Poly2::monomial(field.one(), 1, 0)
    }

    pub fn y(field: BaseField) -> Self {
        Poly2::monomial(field.one(), 0, 1)
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: &Elem) {
        if c.is_zero() {
            return;
        }
        let s = match self.terms.get(&(i, j)) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if s.is_zero() {
            self.terms.remove(&(i, j));
        } else {
            self.terms.insert((i, j), s);
        }
    }

    /// Nonzero terms `((i, j), c)` meaning `c x^i y^j`.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Elem)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, i: u32, j: u32) -> Elem {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let mut r = self.clone();
        for ((i, j), c) in &other.terms {
            r.add_term(*i, *j, c);
        }
        r
    }

    pub fn sub(&self, other: &Poly2) -> Poly2 {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly2 {
        Poly2 { field: self.field, terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }

    pub fn scale(&self, c: &Elem) -> Poly2 {
        if c.is_zero() {
            return Poly2::zero(self.field);
        }
        Poly2 { field: self.field, terms: self.terms.iter().map(|(k, a)| (*k, a * c)).collect() }
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        let mut r = Poly2::zero(self.field);
        for ((i, j), a) in &self.terms {
            for ((k, l), b) in &other.terms {
                r.add_term(i + k, j + l, &(a * b));
            }
        }
        r
    }

    pub fn pow(&self, n: u32) -> Poly2 {
        let mut r = Poly2::one(self.field);
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }

    /// Multiplies by `x^a y^b`.
    pub fn shift(&self, a: u32, b: u32) -> Poly2 {
        Poly2 { field: self.field, terms: self.terms.iter().map(|((i, j), c)| ((i + a, j + b), c.clone())).collect() }
    }

    /// Divides by `x^a y^b`, which must divide the polynomial.
    pub fn unshift(&self, a: u32, b: u32) -> Poly2 {
        Poly2 { field: self.field, terms: self.terms.iter().map(|((i, j), c)| ((i - a, j - b), c.clone())).collect() }
    }

    /// Largest `(a, b)` such that `x^a y^b` divides the polynomial.
    pub fn monomial_content(&self) -> (u32, u32) {
        let a = self.terms.keys().map(|k| k.0).min().unwrap_or(0);
        let b = self.terms.keys().map(|k| k.1).min().unwrap_or(0);
        (a, b)
    }

    /// Multiplicity at the origin: the lowest total degree.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).min()
    }

    /// Lowest-degree homogeneous part.
    pub fn initial_form(&self) -> Poly2 {
        match self.order() {
            None => self.clone(),
            Some(m) => self.filter(|i, j| i + j == m),
        }
    }

    /// Minimum of `wx * i + wy * j` over the support.
    pub fn weighted_order(&self, wx: &BigRational, wy: &BigRational) -> Option<BigRational> {
        self.terms.keys().map(|(i, j)| wx * BigInt::from(*i) + wy * BigInt::from(*j)).min()
    }

    /// Terms attaining the weighted order.
    pub fn weighted_initial_form(&self, wx: &BigRational, wy: &BigRational) -> Poly2 {
        match self.weighted_order(wx, wy) {
            None => self.clone(),
            Some(m) => self.filter(|i, j| wx * BigInt::from(i) + wy * BigInt::from(j) == m),
        }
    }

    pub fn filter(&self, keep: impl Fn(u32, u32) -> bool) -> Poly2 {
        Poly2 {
            field: self.field,
            terms: self.terms.iter().filter(|((i, j), _)| keep(*i, *j)).map(|(k, c)| (*k, c.clone())).collect(),
        }
    }

    pub fn swap(&self) -> Poly2 {
        Poly2 { field: self.field, terms: self.terms.iter().map(|((i, j), c)| ((*j, *i), c.clone())).collect() }
    }

    /// Substitutes `x -> sx`, `y -> sy`.
    pub fn compose(&self, sx: &Poly2, sy: &Poly2) -> Poly2 {
        let mx = self.terms.keys().map(|k| k.0).max().unwrap_or(0);
        let my = self.terms.keys().map(|k| k.1).max().unwrap_or(0);
        let px = pow_table(sx, mx);
        let py = pow_table(sy, my);
        let mut r = Poly2::zero(self.field);
        for ((i, j), c) in &self.terms {
            r = r.add(&px[*i as usize].mul(&py[*j as usize]).scale(c));
        }
        r
    }

    /// Substitutes `y -> y + c x^e` using the binomial expansion.
    pub fn translate_y(&self, c: &Elem, e: u32) -> Poly2 {
        let mut r = Poly2::zero(self.field);
        for ((i, j), a) in &self.terms {
            let mut cp = self.field.one();
            for k in 0..=*j {
                let b = self.field.from_bigint(&binomial(BigInt::from(*j), BigInt::from(k)));
                r.add_term(i + e * k, j - k, &(&(a * &b) * &cp));
                cp = &cp * c;
            }
        }
        r
    }

    /// Evaluates at `y = t`, giving a polynomial in `x`.
    pub fn eval_y(&self, t: &Elem) -> UPoly {
        let mut coeffs: BTreeMap<u32, Elem> = BTreeMap::new();
        for ((i, j), a) in &self.terms {
            let v = a * &t.pow(*j as i64).unwrap();
            let e = coeffs.entry(*i).or_insert_with(|| self.field.zero());
            *e = &*e + &v;
        }
        let n = coeffs.keys().max().map(|m| *m as usize + 1).unwrap_or(0);
        let mut dense = vec![self.field.zero(); n];
        for (i, c) in coeffs {
            dense[i as usize] = c;
        }
        UPoly::from_coeffs(self.field, dense)
    }

    pub fn to_bivar(&self) -> BivarPoly {
        let mut by_y: BTreeMap<u32, Vec<Elem>> = BTreeMap::new();
        for ((i, j), c) in &self.terms {
            let v = by_y.entry(*j).or_default();
            if v.len() <= *i as usize {
                v.resize(*i as usize + 1, self.field.zero());
            }
            v[*i as usize] = c.clone();
        }
        BivarPoly::from_terms(
            self.field,
            by_y.into_iter().map(|(j, v)| (j, RatFunc::from_poly(UPoly::from_coeffs(self.field, v)))),
        )
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(|a, b| b.1.cmp(&a.1).then(b.0.cmp(&a.0)));
        for (n, (i, j)) in keys.into_iter().enumerate() {
            let c = &self.terms[&(i, j)];
            let ypart = match j {
                0 => String::new(),
                1 => "y".to_string(),
                _ => format!("y^{j}"),
            };
            if ypart.is_empty() {
                write_term(f, c, i as usize, "x", n == 0)?;
            } else if i == 0 {
                write_term(f, c, 1, &ypart, n == 0)?;
            } else {
                let xpart = if i == 1 { "x".to_string() } else { format!("x^{i}") };
                write_term(f, c, 1, &format!("{xpart}*{ypart}"), n == 0)?;
            }
        }
        Ok(())
    }
}
