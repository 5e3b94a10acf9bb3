use std::fmt;

use super::field::{BaseField, Elem};
use super::upoly::UPoly;
use super::value::Value;
use crate::error::{Error, Result};

/// An element of `k(x)` in lowest terms with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: UPoly,
    den: UPoly,
}

impl RatFunc {
    pub fn new(num: UPoly, den: UPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: UPoly, den: UPoly) -> Self {
        let field = num.field();
        if num.is_zero() {
            return RatFunc { num, den: UPoly::one(field) };
        }
        if den.degree() == Some(0) {
            let l = den.coeff(0).inv().unwrap();
            return RatFunc { num: num.scale(&l), den: UPoly::one(field) };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.divrem(&g).unwrap().0, den.divrem(&g).unwrap().0) };
        let l = den.leading().unwrap().inv().unwrap();
        RatFunc { num: num.scale(&l), den: den.scale(&l) }
    }

    pub fn zero(field: BaseField) -> Self {
        RatFunc { num: UPoly::zero(field), den: UPoly::one(field) }
    }

    pub fn one(field: BaseField) -> Self {
        RatFunc::from_poly(UPoly::one(field))
    }

    pub fn constant(c: Elem) -> Self {
        RatFunc::from_poly(UPoly::constant(c))
    }

    pub fn from_poly(p: UPoly) -> Self {
        let field = p.field();
        RatFunc { num: p, den: UPoly::one(field) }
    }

    pub fn x_power(field: BaseField, n: i64) -> Self {
        if n >= 0 {
            RatFunc::from_poly(UPoly::monomial(field.one(), n as usize))
        } else {
            RatFunc { num: UPoly::one(field), den: UPoly::monomial(field.one(), (-n) as usize) }
        }
    }

    pub fn field(&self) -> BaseField {
        self.num.field()
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The constant value when the function is a constant.
    pub fn as_constant(&self) -> Option<Elem> {
        if self.is_polynomial() && self.num.degree().unwrap_or(0) == 0 {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    /// `ord_x`, the `x`-adic order; `∞` for zero.
    pub fn ord(&self) -> Value {
        match self.num.ord() {
            None => Value::Infinite,
            Some(a) => Value::int(a as i64 - self.den.ord().unwrap() as i64),
        }
    }

    /// Integer order; panics on zero.
    pub fn ord_int(&self) -> i64 {
        self.num.ord().expect("nonzero") as i64 - self.den.ord().unwrap() as i64
    }

    /// The leading coefficient of the `x`-adic expansion: `r = x^ord (c + O(x))`.
    pub fn lowest_coeff(&self) -> Elem {
        let a = self.num.coeff(self.num.ord().expect("nonzero"));
        let b = self.den.coeff(self.den.ord().unwrap());
        a.div(&b).unwrap()
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.is_polynomial() && other.is_polynomial() {
            return RatFunc::from_poly(self.num.add(&other.num));
        }
        if self.den == other.den {
            return Self::normalized(self.num.add(&other.num), self.den.clone());
        }
        Self::normalized(self.num.mul(&other.den).add(&other.num.mul(&self.den)), self.den.mul(&other.den))
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_polynomial() && other.is_polynomial() {
            return RatFunc::from_poly(self.num.mul(&other.num));
        }
        Self::normalized(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn scale(&self, c: &Elem) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero(self.field());
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, n: i64) -> Result<RatFunc> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let n = n.unsigned_abs() as u32;
        Ok(RatFunc { num: base.num.pow(n), den: base.den.pow(n) })
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
