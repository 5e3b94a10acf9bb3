use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The coefficient field `k`: the rationals or a prime field `F_p` with `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseField {
    Rationals,
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl BaseField {
    pub fn prime(p: u64) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::NotAPrime(p));
        }
        Ok(BaseField::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            BaseField::Rationals => 0,
            BaseField::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Elem {
        self.int(0)
    }

    pub fn one(&self) -> Elem {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> Elem {
        match self {
            BaseField::Rationals => Elem::Rat(BigRational::from_integer(BigInt::from(n))),
            BaseField::Prime(p) => Elem::Mod(n.rem_euclid(*p as i64) as u64, *p),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        match self {
            BaseField::Rationals => Elem::Rat(BigRational::from_integer(n.clone())),
            BaseField::Prime(p) => {
                let r = ((n % BigInt::from(*p)) + BigInt::from(*p)) % BigInt::from(*p);
                Elem::Mod(r.to_u64().unwrap(), *p)
            }
        }
    }

    /// The image of a rational number; fails when the denominator vanishes in `k`.
    pub fn from_rational(&self, q: &BigRational) -> Result<Elem> {
        let n = self.from_bigint(q.numer());
        let d = self.from_bigint(q.denom());
        n.div(&d)
    }

    /// Every element of `F_p`, in increasing order; `None` over the rationals.
    pub fn elements(&self) -> Option<Vec<Elem>> {
        match self {
            BaseField::Rationals => None,
            BaseField::Prime(p) => Some((0..*p).map(|v| Elem::Mod(v, *p)).collect()),
        }
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Rationals => write!(f, "Q"),
            BaseField::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for BaseField {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(BaseField::Rationals);
        }
        if let Some(p) = s.strip_prefix("Fp:") {
            let p: u64 = p.trim().parse().map_err(|_| Error::Parse(format!("bad field `{s}`")))?;
            return BaseField::prime(p);
        }
        Err(Error::Parse(format!("bad field `{s}`, expected Q or Fp:<p>")))
    }
}

/// An element of the base field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Rat(BigRational),
    /// `(value, p)` with `0 <= value < p`.
    Mod(u64, u64),
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    r
}

impl Elem {
    pub fn field(&self) -> BaseField {
        match self {
            Elem::Rat(_) => BaseField::Rationals,
            Elem::Mod(_, p) => BaseField::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Elem::Rat(q) => q.is_zero(),
            Elem::Mod(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Elem::Rat(q) => q.is_one(),
            Elem::Mod(v, _) => *v == 1,
        }
    }

    pub fn inv(&self) -> Result<Elem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Elem::Rat(q) => Elem::Rat(q.recip()),
            Elem::Mod(v, p) => Elem::Mod(mod_pow(*v, p - 2, *p), *p),
        })
    }

    pub fn div(&self, other: &Elem) -> Result<Elem> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Elem> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs();
        Ok(match &base {
            Elem::Rat(q) => Elem::Rat(num_traits::pow(q.clone(), e as usize)),
            Elem::Mod(v, p) => Elem::Mod(mod_pow(*v, e, *p), *p),
        })
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Elem::Rat(q) => Some(q),
            Elem::Mod(..) => None,
        }
    }

    /// Whether the printed form needs a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Elem::Rat(q) => q.is_negative(),
            Elem::Mod(..) => false,
        }
    }

    fn check(&self, other: &Elem) {
        debug_assert_eq!(self.field(), other.field(), "mixed base fields");
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Rat(q) => write!(f, "{q}"),
            Elem::Mod(v, _) => write!(f, "{v}"),
        }
    }
}

impl Add for &Elem {
    type Output = Elem;
    fn add(self, rhs: &Elem) -> Elem {
        self.check(rhs);
        match (self, rhs) {
            (Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a + b),
            (Elem::Mod(a, p), Elem::Mod(b, _)) => Elem::Mod((a + b) % p, *p),
            _ => panic!("mixed base fields"),
        }
    }
}

impl Sub for &Elem {
    type Output = Elem;
    fn sub(self, rhs: &Elem) -> Elem {
        self.check(rhs);
        match (self, rhs) {
            (Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a - b),
            (Elem::Mod(a, p), Elem::Mod(b, _)) => Elem::Mod((a + p - b) % p, *p),
            _ => panic!("mixed base fields"),
        }
    }
}

impl Mul for &Elem {
    type Output = Elem;
    fn mul(self, rhs: &Elem) -> Elem {
        self.check(rhs);
        match (self, rhs) {
            (Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a * b),
            (Elem::Mod(a, p), Elem::Mod(b, _)) => Elem::Mod(((*a as u128 * *b as u128) % *p as u128) as u64, *p),
            _ => panic!("mixed base fields"),
        }
    }
}

impl Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        match self {
            Elem::Rat(a) => Elem::Rat(-a),
            Elem::Mod(a, p) => Elem::Mod((p - a) % p, *p),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Elem {
            type Output = Elem;
            fn $m(self, rhs: Elem) -> Elem {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        -&self
    }
}
