use std::fmt;

use super::field::{BaseField, Elem};
use crate::error::{Error, Result};

/// A dense polynomial in `x` over the base field, coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UPoly {
    field: BaseField,
    coeffs: Vec<Elem>,
}

impl UPoly {
    pub fn zero(field: BaseField) -> Self {
        UPoly { field, coeffs: Vec::new() }
    }

    pub fn one(field: BaseField) -> Self {
        UPoly::constant(field.one())
    }

    pub fn constant(c: Elem) -> Self {
        UPoly::from_coeffs(c.field(), vec![c])
    }

    /// `c * x^n`.
    pub fn monomial(c: Elem, n: usize) -> Self {
        let field = c.field();
        let mut coeffs = vec![field.zero(); n];
        coeffs.push(c);
        UPoly::from_coeffs(field, coeffs)
    }

    pub fn x(field: BaseField) -> Self {
        UPoly::monomial(field.one(), 1)
    }

    pub fn from_coeffs(field: BaseField, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(Elem::is_zero) {
            coeffs.pop();
        }
        UPoly { field, coeffs }
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<&Elem> {
        self.coeffs.last()
    }

    /// Order of vanishing at `x = 0`; `None` for the zero polynomial.
    pub fn ord(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Elem::is_one)
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        UPoly::from_coeffs(self.field, coeffs)
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect();
        UPoly::from_coeffs(self.field, coeffs)
    }

    pub fn neg(&self) -> UPoly {
        UPoly { field: self.field, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        UPoly::from_coeffs(self.field, out)
    }

    pub fn scale(&self, c: &Elem) -> UPoly {
        if c.is_zero() {
            return UPoly::zero(self.field);
        }
        UPoly { field: self.field, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UPoly { field: self.field, coeffs }
    }

    /// Divides by `x^k`, which must divide the polynomial.
    pub fn unshift(&self, k: usize) -> UPoly {
        debug_assert!(self.is_zero() || self.ord().unwrap() >= k);
        UPoly::from_coeffs(self.field, self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn pow(&self, n: u32) -> UPoly {
        let mut r = UPoly::one(self.field);
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }

    /// Euclidean division; fails only on a zero divisor.
    pub fn divrem(&self, d: &UPoly) -> Result<(UPoly, UPoly)> {
        let dl = d.leading().ok_or(Error::DivisionByZero)?.inv()?;
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((UPoly::zero(self.field), self.clone()));
        }
        let mut q = vec![self.field.zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let c = &r[i] * &dl;
            for (j, b) in d.coeffs.iter().enumerate() {
                let k = i - dd + j;
                r[k] = &r[k] - &(&c * b);
            }
            q[i - dd] = c;
        }
        r.truncate(dd);
        Ok((UPoly::from_coeffs(self.field, q), UPoly::from_coeffs(self.field, r)))
    }

    /// Monic greatest common divisor; zero when both inputs are zero.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> UPoly {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    pub fn eval(&self, t: &Elem) -> Elem {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * t) + c;
        }
        acc
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            write_term(f, c, i, "x", first)?;
            first = false;
        }
        Ok(())
    }
}

/// Writes `c*var^n` with sign handling; shared by the bivariate printer.
pub(crate) fn write_term(f: &mut fmt::Formatter<'_>, c: &Elem, n: usize, var: &str, first: bool) -> fmt::Result {
    let neg = c.is_negative();
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else if neg {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    let abs = if neg { -c } else { c.clone() };
    let mono = match n {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{n}"),
    };
    if mono.is_empty() {
        write!(f, "{abs}")
    } else if abs.is_one() {
        write!(f, "{mono}")
    } else {
        write!(f, "{abs}*{mono}")
    }
}
