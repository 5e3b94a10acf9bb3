//! MacLane chains: evaluation, augmentation, truncation and validation.

mod frame;
mod residue;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{BaseField, BivarPoly, Value};

pub use frame::{swap_frame, SwappedPoly};
pub use residue::{Residue, ResidueCalc};

/// One augmentation step `(Q_i, β_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainEntry {
    pub key: BivarPoly,
    pub beta: BigRational,
}

impl ChainEntry {
    pub fn new(key: BivarPoly, beta: BigRational) -> Self {
        ChainEntry { key, beta }
    }

    pub fn degree(&self) -> u32 {
        self.key.deg_y().unwrap_or(0)
    }
}

/// A valuation given by a finite chain of augmentations starting at `Q_1 = y`,
/// optionally closed by a key `Q_ω` of infinite value.
///
/// When `swap_xy` is set the chain is written in exchanged coordinates: the
/// chain's `x` and `y` are the caller's `y` and `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MacLaneChain {
    field: BaseField,
    swap_xy: bool,
    entries: Vec<ChainEntry>,
    omega: Option<BivarPoly>,
}

/// `(s, v)` with `f = Q_ω^s h`, `Q_ω ∤ h` and `v = ν(h)`, ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct KrullValue {
    pub s: u32,
    pub v: Value,
}

/// Which chain invariant a violation breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    NotNormalized,
    FirstKeyNotY,
    FieldMismatch,
    NonMonic,
    BadDegree,
    ValueNotIncreased,
    ShapeViolation,
    NonPolynomialKey,
    OmegaInconsistent,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::NotNormalized => "NotNormalized",
            Rule::FirstKeyNotY => "FirstKeyNotY",
            Rule::FieldMismatch => "FieldMismatch",
            Rule::NonMonic => "NonMonic",
            Rule::BadDegree => "BadDegree",
            Rule::ValueNotIncreased => "ValueNotIncreased",
            Rule::ShapeViolation => "ShapeViolation",
            Rule::NonPolynomialKey => "NonPolynomialKey",
            Rule::OmegaInconsistent => "OmegaInconsistent",
        };
        f.write_str(s)
    }
}

/// A broken invariant at a 1-based entry index (the ω entry has index `n + 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub index: usize,
    pub rule: Rule,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "entry {}: {}: {}", self.index, self.rule, self.detail)
    }
}

/// Chain length: finite, or closed by an ω entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainLength {
    Finite(usize),
    Omega,
}

impl fmt::Display for ChainLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainLength::Finite(n) => write!(f, "{n}"),
            ChainLength::Omega => write!(f, "omega"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainInvariants {
    pub n: ChainLength,
    pub big_d: u32,
    pub degrees: Vec<u32>,
    pub betas: Vec<Value>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl MacLaneChain {
    /// Assembles a chain without checking invariants; see [`MacLaneChain::validate`].
    pub fn from_parts(field: BaseField, swap_xy: bool, entries: Vec<ChainEntry>, omega: Option<BivarPoly>) -> Self {
        MacLaneChain { field, swap_xy, entries, omega }
    }

    /// Assembles a chain and rejects it on the first violated invariant.
    pub fn new(field: BaseField, swap_xy: bool, entries: Vec<ChainEntry>, omega: Option<BivarPoly>) -> Result<Self> {
        let c = MacLaneChain::from_parts(field, swap_xy, entries, omega);
        c.check()?;
        Ok(c)
    }

    /// The monomial valuation with `ν(x) = 1`, `ν(y) = e`.
    pub fn monomial(field: BaseField, e: &Value) -> Result<Self> {
        let e = match e {
            Value::Finite(q) => q.clone(),
            Value::Infinite => return Err(Error::NotNormalized("monomial weight must be finite".into())),
        };
        if e < BigRational::one() {
            return Err(Error::NotNormalized(format!("weight {e} < 1")));
        }
        Ok(MacLaneChain::from_parts(field, false, vec![ChainEntry::new(BivarPoly::y(field), e)], None))
    }

    /// The multiplicity valuation, the root of the valuative tree.
    pub fn root(field: BaseField) -> Self {
        MacLaneChain::monomial(field, &Value::int(1)).unwrap()
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn swap_xy(&self) -> bool {
        self.swap_xy
    }

    pub fn entries(&self) -> &[ChainEntry] {
        &self.entries
    }

    /// Number of finite entries `n`.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn omega(&self) -> Option<&BivarPoly> {
        self.omega.as_ref()
    }

    /// `Q_i`, 1-based.
    pub fn key(&self, i: usize) -> &BivarPoly {
        &self.entries[i - 1].key
    }

    /// `β_i`, 1-based.
    pub fn beta(&self, i: usize) -> &BigRational {
        &self.entries[i - 1].beta
    }

    /// `d_i = deg_y Q_i`, 1-based.
    pub fn degree(&self, i: usize) -> u32 {
        self.entries[i - 1].degree()
    }

    /// `r_i = β_i / d_i`, with `r_0 = 1`.
    pub fn ratio(&self, i: usize) -> BigRational {
        if i == 0 {
            return BigRational::one();
        }
        self.beta(i) / rat(self.degree(i) as i64)
    }

    pub fn is_root(&self) -> bool {
        self.omega.is_none()
            && self.entries.len() == 1
            && self.entries[0].beta.is_one()
            && self.entries[0].key == BivarPoly::y(self.field)
    }

    /// The same chain written in the other coordinate frame flag.
    pub fn with_swap(mut self, swap_xy: bool) -> Self {
        self.swap_xy = swap_xy;
        self
    }

    /// Keys paired with their values, including `(Q_ω, ∞)`.
    pub fn keys_with_values(&self) -> Vec<(BivarPoly, Value)> {
        let mut out: Vec<_> = self.entries.iter().map(|e| (e.key.clone(), Value::Finite(e.beta.clone()))).collect();
        if let Some(w) = &self.omega {
            out.push((w.clone(), Value::Infinite));
        }
        out
    }

    // ---- evaluation in the chain's own frame ----

    /// `ν_level(f)` in the chain frame, `1 <= level <= n`.
    pub fn value_at_level(&self, level: usize, f: &BivarPoly) -> Value {
        if f.is_zero() {
            return Value::Infinite;
        }
        let mut level = level;
        let deg = f.deg_y().unwrap();
        while level > 1 && self.degree(level) > deg {
            level -= 1;
        }
        if level == 1 {
            let b1 = self.beta(1);
            return f.terms().map(|(j, c)| c.ord() + Value::Finite(b1 * BigInt::from(j))).min().unwrap();
        }
        let q = self.key(level);
        let bl = self.beta(level);
        let coeffs = f.expand(q).expect("chain keys are monic");
        coeffs
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.is_zero())
            .map(|(j, g)| self.value_at_level(level - 1, g) + Value::Finite(bl * BigInt::from(j as i64)))
            .min()
            .unwrap()
    }

    /// The chain valuation in its own frame.
    pub fn value_in_frame(&self, f: &BivarPoly) -> Value {
        let n = self.len();
        match &self.omega {
            None => self.value_at_level(n, f),
            Some(w) => {
                let r = f.rem(w).expect("omega key is monic");
                if r.is_zero() {
                    Value::Infinite
                } else {
                    self.value_at_level(n, &r)
                }
            }
        }
    }

    /// `ν(f)` for `f` written in the caller's coordinates.
    pub fn evaluate(&self, f: &BivarPoly) -> Value {
        if !self.swap_xy {
            return self.value_in_frame(f);
        }
        let s = swap_frame(f);
        let shift = self.value_in_frame(&BivarPoly::y(self.field));
        self.value_in_frame(&s.poly) + Value::Finite(-(shift.expect_finite() * BigInt::from(s.x_shift)))
    }

    /// Truncated value `ν_i(f)` in the caller's coordinates.
    pub fn evaluate_truncated(&self, i: usize, f: &BivarPoly) -> Result<Value> {
        Ok(self.truncate(i)?.evaluate(f))
    }

    /// Value of the chain's frame coordinate `x` (always 1) and `y`, in the caller's order.
    pub fn coordinate_values(&self) -> (Value, Value) {
        let x = self.evaluate(&BivarPoly::x(self.field));
        let y = self.evaluate(&BivarPoly::y(self.field));
        (x, y)
    }

    // ---- structural operations ----

    /// The prefix `ν_i`, `1 <= i <= n`; `truncate(n)` drops an ω entry.
    pub fn truncate(&self, i: usize) -> Result<MacLaneChain> {
        if i == 0 || i > self.len() {
            return Err(Error::IndexOutOfRange { index: i, len: self.len() });
        }
        Ok(MacLaneChain { field: self.field, swap_xy: self.swap_xy, entries: self.entries[..i].to_vec(), omega: None })
    }

    /// The augmented valuation `[ν; Q, β]`; `β = ∞` installs `Q` as the ω entry.
    pub fn augment(&self, q: &BivarPoly, beta: &Value) -> Result<MacLaneChain> {
        if self.omega.is_some() {
            return Err(Error::OmegaPresent);
        }
        if q.field() != self.field {
            return Err(Error::FieldMismatch(self.field, q.field()));
        }
        self.check_next_key(q, beta)?;
        let mut out = self.clone();
        match beta {
            Value::Finite(b) => out.entries.push(ChainEntry::new(q.clone(), b.clone())),
            Value::Infinite => out.omega = Some(q.clone()),
        }
        Ok(out)
    }

    /// Checks that `(q, beta)` may follow the last entry.
    fn check_next_key(&self, q: &BivarPoly, beta: &Value) -> Result<()> {
        if !q.is_monic() {
            return Err(Error::NonMonic);
        }
        if self.swap_xy && !q.is_polynomial() {
            return Err(Error::InvalidChain("keys of a swapped chain must be polynomials".into()));
        }
        let n = self.len();
        let dn = self.degree(n);
        let dq = q.deg_y().unwrap();
        if dq == 0 || !dq.is_multiple_of(dn) {
            return Err(Error::BadDegree(format!("deg {dq} is not a positive multiple of {dn}")));
        }
        let current = self.value_at_level(n, q);
        if *beta <= current {
            return Err(Error::ValueNotIncreased { beta: Box::new(beta.clone()), current: Box::new(current) });
        }
        let s = dq / dn;
        let exp = q.expand(self.key(n)).unwrap();
        let a0 = self.value_at_level(n, &exp[0]);
        let target = Value::Finite(self.beta(n) * BigInt::from(s));
        if current != target || a0 != target {
            return Err(Error::ShapeViolation(format!(
                "value {current} and constant-term value {a0} must both equal {s}*{}",
                self.beta(n)
            )));
        }
        Ok(())
    }

    fn check(&self) -> Result<()> {
        match self.validate().into_iter().next() {
            None => Ok(()),
            Some(v) => Err(match v.rule {
                Rule::NotNormalized | Rule::FirstKeyNotY => Error::NotNormalized(v.to_string()),
                Rule::NonMonic => Error::NonMonic,
                Rule::BadDegree => Error::BadDegree(v.to_string()),
                Rule::ShapeViolation => Error::ShapeViolation(v.to_string()),
                _ => Error::InvalidChain(v.to_string()),
            }),
        }
    }

    /// Every violated invariant, in entry order; empty for a valid chain.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let push = |out: &mut Vec<Violation>, index: usize, rule: Rule, detail: String| {
            out.push(Violation { index, rule, detail })
        };
        if self.entries.is_empty() {
            push(&mut out, 1, Rule::FirstKeyNotY, "chain has no entries".into());
            return out;
        }
        for (i, e) in self.entries.iter().enumerate() {
            if e.key.field() != self.field {
                push(&mut out, i + 1, Rule::FieldMismatch, format!("key over {}", e.key.field()));
                return out;
            }
        }
        if let Some(w) = &self.omega {
            if w.field() != self.field {
                push(&mut out, self.len() + 1, Rule::FieldMismatch, format!("key over {}", w.field()));
                return out;
            }
        }
        if self.entries[0].key != BivarPoly::y(self.field) {
            push(&mut out, 1, Rule::FirstKeyNotY, format!("first key is {}", self.entries[0].key));
        }
        if self.entries[0].beta < BigRational::one() {
            push(&mut out, 1, Rule::NotNormalized, format!("beta_1 = {} < 1", self.entries[0].beta));
        }
        if !out.is_empty() {
            return out;
        }
        for i in 2..=self.len() {
            let e = &self.entries[i - 1];
            let prefix = MacLaneChain {
                field: self.field,
                swap_xy: self.swap_xy,
                entries: self.entries[..i - 1].to_vec(),
                omega: None,
            };
            if let Err(err) = prefix.check_next_key(&e.key, &Value::Finite(e.beta.clone())) {
                let rule = match &err {
                    Error::NonMonic => Rule::NonMonic,
                    Error::BadDegree(_) => Rule::BadDegree,
                    Error::ValueNotIncreased { .. } => Rule::ValueNotIncreased,
                    Error::ShapeViolation(_) => Rule::ShapeViolation,
                    _ => Rule::NonPolynomialKey,
                };
                push(&mut out, i, rule, err.to_string());
                return out;
            }
        }
        if let Some(w) = &self.omega {
            let base = self.truncate(self.len()).unwrap();
            if let Err(err) = base.check_next_key(w, &Value::Infinite) {
                push(&mut out, self.len() + 1, Rule::OmegaInconsistent, err.to_string());
            }
        }
        out
    }

    // ---- derived data ----

    /// `[1, β_1, ..., β_n]`; the value group is generated by these.
    pub fn value_group_generators(&self) -> Vec<Value> {
        let mut out = vec![Value::int(1)];
        out.extend(self.entries.iter().map(|e| Value::Finite(e.beta.clone())));
        out
    }

    /// `D` with value group `(1/D) Z`.
    pub fn value_group_denominator(&self) -> BigInt {
        self.entries.iter().fold(BigInt::one(), |acc, e| acc.lcm(e.beta.denom()))
    }

    /// The rank-2 value `(s, ν(h))` of `f = Q_ω^s h`.
    pub fn krull_value(&self, f: &BivarPoly) -> Result<KrullValue> {
        let w = self.omega.as_ref().ok_or(Error::OmegaAbsent)?;
        if f.is_zero() {
            return Ok(KrullValue { s: u32::MAX, v: Value::Infinite });
        }
        let mut h = f.clone();
        let mut s = 0;
        loop {
            let (q, r) = h.divrem(w)?;
            if !r.is_zero() {
                break;
            }
            h = q;
            s += 1;
        }
        let trunc = self.truncate(self.len())?;
        Ok(KrullValue { s, v: trunc.value_in_frame(&h) })
    }

    pub fn invariants(&self) -> ChainInvariants {
        let degrees: Vec<u32> = self.entries.iter().map(ChainEntry::degree).collect();
        let mut big_d = degrees.iter().copied().max().unwrap_or(1);
        let mut betas: Vec<Value> = self.entries.iter().map(|e| Value::Finite(e.beta.clone())).collect();
        let n = match &self.omega {
            None => ChainLength::Finite(self.len()),
            Some(w) => {
                big_d = big_d.max(w.deg_y().unwrap_or(0));
                betas.push(Value::Infinite);
                ChainLength::Omega
            }
        };
        ChainInvariants { n, big_d, degrees, betas }
    }

    /// Residue computations for this chain.
    pub fn residues(&self) -> ResidueCalc<'_> {
        ResidueCalc::new(self)
    }
}

impl fmt::Display for MacLaneChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.swap_xy {
            write!(f, "swap ")?;
        }
        write!(f, "[")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({}, {})", e.key, e.beta)?;
        }
        if let Some(w) = &self.omega {
            write!(f, "; ({w}, inf)")?;
        }
        write!(f, "]")
    }
}
