use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// An element of `Q ∪ {∞}`, with `∞` larger than every rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Finite(BigRational),
    Infinite,
}

impl Value {
    pub fn zero() -> Value {
        Value::Finite(BigRational::zero())
    }

    pub fn int(n: i64) -> Value {
        Value::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Value {
        Value::Finite(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Value::Finite(_))
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            Value::Finite(q) => Some(q),
            Value::Infinite => None,
        }
    }

    /// The rational part; panics on `∞`. Only for values already known finite.
    pub fn expect_finite(&self) -> &BigRational {
        self.finite().expect("finite value expected")
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Value::Finite(_) => "finite",
            Value::Infinite => "infinite",
        }
    }

    pub fn scale(&self, n: i64) -> Value {
        match self {
            Value::Finite(q) => Value::Finite(q * BigInt::from(n)),
            Value::Infinite if n > 0 => Value::Infinite,
            Value::Infinite if n == 0 => Value::zero(),
            Value::Infinite => panic!("negative multiple of infinity"),
        }
    }

    /// `self - other` when `other` is finite.
    pub fn minus(&self, other: &BigRational) -> Value {
        match self {
            Value::Finite(q) => Value::Finite(q - other),
            Value::Infinite => Value::Infinite,
        }
    }

    pub fn is_integer(&self) -> bool {
        self.finite().is_some_and(|q| q.is_integer())
    }
}

impl From<BigRational> for Value {
    fn from(q: BigRational) -> Self {
        Value::Finite(q)
    }
}

impl Ord for Value {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Value::Finite(a), Value::Finite(b)) => a.cmp(b),
            (Value::Finite(_), Value::Infinite) => Ordering::Less,
            (Value::Infinite, Value::Finite(_)) => Ordering::Greater,
            (Value::Infinite, Value::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Value {
    type Output = Value;
    fn add(self, rhs: &Value) -> Value {
        match (self, rhs) {
            (Value::Finite(a), Value::Finite(b)) => Value::Finite(a + b),
            _ => Value::Infinite,
        }
    }
}

impl Add for Value {
    type Output = Value;
    fn add(self, rhs: Value) -> Value {
        &self + &rhs
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Finite(q) => write!(f, "{q}"),
            Value::Infinite => write!(f, "inf"),
        }
    }
}

/// Parses `n`, `p/q` or a finite decimal such as `1.5`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((i, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let (neg, i) = match i.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, i),
        };
        let ip: BigInt = if i.is_empty() { BigInt::zero() } else { i.parse().map_err(|_| bad())? };
        if ip < BigInt::zero() {
            return Err(bad());
        }
        let fp: BigInt = frac.parse().map_err(|_| bad())?;
        let q = BigRational::from_integer(ip) + BigRational::new(fp, num_traits::pow(BigInt::from(10), frac.len()));
        return Ok(if neg { -q } else { q });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

impl FromStr for Value {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "inf" || t == "∞" {
            return Ok(Value::Infinite);
        }
        parse_rational(t).map(Value::Finite)
    }
}
