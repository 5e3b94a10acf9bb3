//! The divisorial valuation of a blowup sequence: order of vanishing along the
//! exceptional divisor of the last blowup.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::BlowupSeq;
use super::BlowupStep;
use crate::error::{Error, Result};
use crate::exact::{BaseField, BivarPoly, Elem, Poly2, Value};
use crate::valuation::Residue;

/// `f` pulled back to the last chart as `unit * x^a * y^b * g` with `g` free of
/// monomial factors and `unit` the value at the origin of a unit factor.
#[derive(Clone, Debug)]
struct Pulled {
    a: i64,
    b: i64,
    unit: Elem,
    g: Poly2,
}

impl Pulled {
    fn new(f: &BivarPoly) -> Result<Pulled> {
        let cl = f.clear_denominators();
        let (a, b) = cl.poly.monomial_content();
        Ok(Pulled {
            a: a as i64 - cl.x_shift as i64,
            b: b as i64,
            unit: cl.unit_den_at_zero.inv()?,
            g: cl.poly.unshift(a, b),
        })
    }

    fn step(self, step: &BlowupStep) -> Result<Pulled> {
        let Pulled { a, b, mut unit, g } = self;
        let (mut a2, mut b2) = match step {
            BlowupStep::X(c) if c.is_zero() => (a + b, b),
            BlowupStep::X(c) => {
                unit = &unit * &c.pow(b)?;
                (a + b, 0)
            }
            BlowupStep::Y => (a, a + b),
        };
        let (sx, sy) = step.substitution(g.field());
        let h = g.compose(&sx, &sy);
        let (da, db) = h.monomial_content();
        a2 += da as i64;
        b2 += db as i64;
        Ok(Pulled { a: a2, b: b2, unit, g: h.unshift(da, db) })
    }

    fn raw(&self) -> i64 {
        self.a + self.b + self.g.order().unwrap() as i64
    }
}

/// Unnormalized orders along the last exceptional divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawDivisorialValue {
    /// Order of `f`.
    pub raw: BigInt,
    pub raw_x: BigInt,
    pub raw_y: BigInt,
    /// `raw / min(raw_x, raw_y)`.
    pub value: Value,
}

/// Evaluates through a fixed sequence; caches the orders of `x` and `y`.
#[derive(Clone, Debug)]
pub struct DivisorialOracle {
    seq: BlowupSeq,
    raw_x: i64,
    raw_y: i64,
}

impl DivisorialOracle {
    pub fn new(seq: &BlowupSeq) -> Result<Self> {
        let f = seq.field;
        let mut oracle = DivisorialOracle { seq: seq.clone(), raw_x: 1, raw_y: 1 };
        oracle.raw_x = oracle.pull(&BivarPoly::x(f))?.raw();
        oracle.raw_y = oracle.pull(&BivarPoly::y(f))?.raw();
        Ok(oracle)
    }

    pub fn seq(&self) -> &BlowupSeq {
        &self.seq
    }

    pub fn field(&self) -> BaseField {
        self.seq.field
    }

    fn pull(&self, f: &BivarPoly) -> Result<Pulled> {
        if f.field() != self.seq.field {
            return Err(Error::FieldMismatch(self.seq.field, f.field()));
        }
        let mut p = Pulled::new(f)?;
        for s in &self.seq.steps {
            p = p.step(s)?;
        }
        Ok(p)
    }

    fn norm(&self) -> i64 {
        self.raw_x.min(self.raw_y)
    }

    pub fn raw(&self, f: &BivarPoly) -> Result<RawDivisorialValue> {
        let (raw_x, raw_y) = (BigInt::from(self.raw_x), BigInt::from(self.raw_y));
        if f.is_zero() {
            return Ok(RawDivisorialValue { raw: BigInt::from(0), raw_x, raw_y, value: Value::Infinite });
        }
        let r = self.pull(f)?.raw();
        let value = Value::Finite(BigRational::new(BigInt::from(r), BigInt::from(self.norm())));
        Ok(RawDivisorialValue { raw: BigInt::from(r), raw_x, raw_y, value })
    }

    pub fn value(&self, f: &BivarPoly) -> Result<Value> {
        Ok(self.raw(f)?.value)
    }

    /// Residue of `f / g` on the last exceptional divisor.
    pub fn residue_ratio(&self, f: &BivarPoly, g: &BivarPoly) -> Result<Residue> {
        if g.is_zero() {
            return Err(Error::ResidueUndefined("denominator has infinite value".into()));
        }
        if f.is_zero() {
            return Ok(Residue::Rational(self.field().zero()));
        }
        let pf = self.pull(f)?;
        let pg = self.pull(g)?;
        let (rf, rg) = (pf.raw(), pg.raw());
        if rf > rg {
            return Ok(Residue::Rational(self.field().zero()));
        }
        if rf < rg {
            return Err(Error::ResidueUndefined(format!("quotient has negative order {}", rf - rg)));
        }
        let a0 = pf.a.min(pg.a);
        let b0 = pf.b.min(pg.b);
        let form = |p: &Pulled| p.g.initial_form().shift((p.a - a0) as u32, (p.b - b0) as u32);
        let (ff, fg) = (form(&pf), form(&pg));
        let ((i, j), lead) = fg.terms().next().unwrap();
        let lambda = ff.coeff(i, j).div(lead)?;
        if ff != fg.scale(&lambda) {
            return Ok(Residue::Transcendental);
        }
        Ok(Residue::Rational(&lambda * &pf.unit.div(&pg.unit)?))
    }
}

/// The normalized order of `f` along the last exceptional divisor of `seq`,
/// scaled so that `min(ν(x), ν(y)) = 1`.
pub fn divisorial_value(seq: &BlowupSeq, f: &BivarPoly) -> Result<Value> {
    DivisorialOracle::new(seq)?.value(f)
}

/// The normalized value together with the unnormalized orders of `f`, `x`, `y`.
pub fn divisorial_value_raw(seq: &BlowupSeq, f: &BivarPoly) -> Result<RawDivisorialValue> {
    DivisorialOracle::new(seq)?.raw(f)
}
