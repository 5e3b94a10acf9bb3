//! Point blowups of the plane at the origin: transforms, multiplicities,
//! characteristic exponents and divisorial valuations.

mod divisorial;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exact::{roots_in_field, BaseField, BivarPoly, Elem, Poly2, RatFunc, UPoly, Value};

pub use divisorial::{divisorial_value, divisorial_value_raw, DivisorialOracle, RawDivisorialValue};

/// Default cap on the coordinate changes tried by [`first_char_exponent`].
pub const DEFAULT_MAX_ITER: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Chart {
    X,
    Y,
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Chart::X => "X",
            Chart::Y => "Y",
        })
    }
}

/// One point blowup. `X(c)` substitutes `(x, y) <- (x, x (y + c))`;
/// `Y` substitutes `(x, y) <- (x y, y)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BlowupStep {
    X(Elem),
    Y,
}

impl BlowupStep {
    pub fn chart(&self) -> Chart {
        match self {
            BlowupStep::X(_) => Chart::X,
            BlowupStep::Y => Chart::Y,
        }
    }

    pub fn constant(&self) -> Option<&Elem> {
        match self {
            BlowupStep::X(c) => Some(c),
            BlowupStep::Y => None,
        }
    }

    /// The images of `x` and `y` under the chart substitution.
    fn substitution(&self, field: BaseField) -> (Poly2, Poly2) {
        match self {
            BlowupStep::X(c) => {
                let mut sy = Poly2::monomial(field.one(), 1, 1);
                sy.add_term(1, 0, c);
                (Poly2::x(field), sy)
            }
            BlowupStep::Y => (Poly2::monomial(field.one(), 1, 1), Poly2::y(field)),
        }
    }
}

impl fmt::Display for BlowupStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlowupStep::X(c) => write!(f, "(X,{c})"),
            BlowupStep::Y => f.write_str("(Y)"),
        }
    }
}

/// `steps.len() + 1` point blowups followed by the order along the last
/// exceptional divisor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlowupSeq {
    pub field: BaseField,
    pub steps: Vec<BlowupStep>,
}

impl BlowupSeq {
    /// Checks that every constant lies in the sequence's field.
    pub fn new(field: BaseField, steps: Vec<BlowupStep>) -> Result<Self> {
        for s in &steps {
            if let Some(c) = s.constant() {
                if c.field() != field {
                    return Err(Error::FieldMismatch(field, c.field()));
                }
            }
        }
        Ok(BlowupSeq { field, steps })
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

impl fmt::Display for BlowupSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, s) in self.steps.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("]")
    }
}

/// The terms of minimal weight `α + e β` of `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedInitialForm {
    pub e: BigRational,
    /// Multiplicity of `f` at the origin.
    pub mu: u32,
    /// The minimal weight; equals `mu * e` when `y^mu` occurs in `f`.
    pub weight: BigRational,
    pub terms: Poly2,
}

/// `f` with unit denominators cleared; `x` in a denominator is a pole.
pub(crate) fn regular_part(f: &BivarPoly) -> Result<Poly2> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let cl = f.clear_denominators();
    if cl.x_shift > 0 {
        return Err(Error::PoleAtOrigin);
    }
    Ok(cl.poly)
}

pub(crate) fn transform_poly(g: &Poly2, step: &BlowupStep) -> (u32, Poly2) {
    let (sx, sy) = step.substitution(g.field());
    let h = g.compose(&sx, &sy);
    let (a, b) = h.monomial_content();
    match step {
        BlowupStep::X(_) => (a, h.unshift(a, 0)),
        BlowupStep::Y => (b, h.unshift(0, b)),
    }
}

/// Pulls `f` back along one blowup and removes the exceptional factor.
///
/// Returns the exponent `m` of the exceptional coordinate (`x` in chart X,
/// `y` in chart Y) and the strict transform. Unit denominators `u(x)` are kept
/// in chart X; in chart Y they become units `u(x y)` and are dropped, so the
/// strict transform is determined up to a unit.
pub fn transform(f: &BivarPoly, step: &BlowupStep) -> Result<(u32, BivarPoly)> {
    let g = regular_part(f)?;
    let (m, strict) = transform_poly(&g, step);
    let strict = strict.to_bivar();
    let strict = match step {
        BlowupStep::X(_) => {
            let den = lcm_den(f);
            if den.is_one() {
                strict
            } else {
                strict.scale(&RatFunc::new(UPoly::one(f.field()), den)?)
            }
        }
        BlowupStep::Y => strict,
    };
    Ok((m, strict))
}

fn lcm_den(f: &BivarPoly) -> UPoly {
    let mut l = UPoly::one(f.field());
    for (_, c) in f.terms() {
        if !c.is_polynomial() {
            let g = l.gcd(c.den());
            l = l.mul(&c.den().divrem(&g).unwrap().0);
        }
    }
    l
}

/// The order of `f` at the origin.
pub fn multiplicity(f: &BivarPoly) -> Result<u32> {
    Ok(regular_part(f)?.order().unwrap())
}

fn e_exponent_poly(g: &Poly2) -> Result<Value> {
    let mu = g.order().ok_or(Error::ZeroPolynomial)?;
    if g.coeff(0, mu).is_zero() {
        return Err(Error::DegenerateDirection);
    }
    let best = g
        .terms()
        .filter(|((_, b), _)| *b < mu)
        .map(|((a, b), _)| BigRational::new(BigInt::from(a), BigInt::from(mu - b)))
        .min();
    Ok(best.map_or(Value::Infinite, Value::Finite))
}

/// `min α / (μ - β)` over the support with `β < μ`; `∞` when there is none.
pub fn e_exponent(f: &BivarPoly) -> Result<Value> {
    e_exponent_poly(&regular_part(f)?)
}

fn weighted_form_poly(g: &Poly2, e: &BigRational) -> WeightedInitialForm {
    let one = BigRational::from_integer(BigInt::from(1));
    let weight = g.weighted_order(&one, e).unwrap();
    WeightedInitialForm { e: e.clone(), mu: g.order().unwrap(), terms: g.weighted_initial_form(&one, e), weight }
}

/// The terms of `f` of minimal weight when `x` has weight 1 and `y` weight `e`.
pub fn weighted_initial_form(f: &BivarPoly, e: &BigRational) -> Result<WeightedInitialForm> {
    Ok(weighted_form_poly(&regular_part(f)?, e))
}

/// The `c` with `form = lead (y - c x^e)^mu`, if any.
fn perfect_power_root(form: &Poly2, mu: u32, e: u32) -> Option<Elem> {
    let field = form.field();
    let lead = form.coeff(0, mu);
    let p = field.characteristic();
    let mut q = 1u32;
    if p > 0 {
        while (mu / q).is_multiple_of(p as u32) {
            q *= p as u32;
        }
    }
    let m = mu / q;
    // lead (y^q - C x^{e q})^m has y^{mu-q} x^{e q} coefficient -m C lead, and
    // c^q = C for c in a prime field.
    let coeff = form.coeff(e * q, mu - q);
    let c = (-&coeff).div(&(&field.int(m as i64) * &lead)).ok()?;
    let mut lin = Poly2::y(field);
    lin.add_term(e, 0, &-&c);
    let candidate = lin.pow(mu).scale(&lead);
    (candidate == *form).then_some(c)
}

/// The iteration cap, overridable through `VALTREE_MAX_ITER`.
pub fn max_iter_from_env() -> usize {
    std::env::var("VALTREE_MAX_ITER").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_MAX_ITER)
}

pub(crate) fn first_char_exponent_poly(g: &Poly2, max_iter: usize) -> Result<Value> {
    let mut g = g.clone();
    let mu = g.order().ok_or(Error::ZeroPolynomial)?;
    if mu == 1 {
        return Ok(Value::Infinite);
    }
    for _ in 0..max_iter {
        let e = e_exponent_poly(&g)?;
        let Value::Finite(er) = &e else { return Ok(e) };
        if !er.is_integer() {
            return Ok(e);
        }
        let ei = er.to_integer().to_u32().ok_or(Error::IterationLimit(max_iter))?;
        let form = weighted_form_poly(&g, er);
        match perfect_power_root(&form.terms, mu, ei) {
            None => return Ok(e),
            Some(c) => g = g.translate_y(&c, ei),
        }
    }
    Err(Error::IterationLimit(max_iter))
}

/// The first characteristic exponent, with the default iteration cap.
pub fn first_char_exponent(f: &BivarPoly) -> Result<Value> {
    first_char_exponent_with_limit(f, max_iter_from_env())
}

/// Raises `e` by the substitutions `y <- y + c x^e` while the weighted initial
/// form is a perfect `μ`-th power.
pub fn first_char_exponent_with_limit(f: &BivarPoly, max_iter: usize) -> Result<Value> {
    let g = regular_part(f)?;
    let mu = g.order().ok_or(Error::ZeroPolynomial)?;
    if mu == 0 {
        return Err(Error::UnitPolynomial);
    }
    if g.coeff(0, mu).is_zero() {
        return Err(Error::DegenerateDirection);
    }
    first_char_exponent_poly(&g, max_iter)
}

/// Brings `y^mu` into the support by exchanging `x, y` or by `x <- x + t y`.
pub(crate) fn admissible_coordinates(g: &Poly2) -> Result<Poly2> {
    let mu = g.order().ok_or(Error::ZeroPolynomial)?;
    if !g.coeff(0, mu).is_zero() {
        return Ok(g.clone());
    }
    if !g.coeff(mu, 0).is_zero() {
        return Ok(g.swap());
    }
    let field = g.field();
    let form = g.initial_form();
    let candidates: Vec<Elem> = match field.elements() {
        Some(all) => all,
        None => (1..=(mu as i64 + 1)).map(|t| field.int(t)).collect(),
    };
    for t in candidates {
        let mut sx = Poly2::x(field);
        sx.add_term(0, 1, &t);
        let moved = form.compose(&sx, &Poly2::y(field));
        if !moved.coeff(0, mu).is_zero() {
            return Ok(g.compose(&sx, &Poly2::y(field)));
        }
    }
    Err(Error::DegenerateDirection)
}

/// One row `(μ_i, e_i)` of a descent table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentRow {
    pub mu: u32,
    pub e: Value,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Descent {
    pub rows: Vec<DescentRow>,
    /// The centers followed, one per row after the first.
    pub seq: BlowupSeq,
}

/// The tangent direction of highest multiplicity that is rational over `k`.
fn best_direction(g: &Poly2) -> Option<BlowupStep> {
    let field = g.field();
    let mu = g.order()?;
    let form = g.initial_form();
    let dehom = form.swap().eval_y(&field.one());
    let mut best: Option<(u32, BlowupStep)> = None;
    let at_infinity = mu - dehom.degree().unwrap_or(0) as u32;
    if at_infinity > 0 {
        best = Some((at_infinity, BlowupStep::Y));
    }
    for (c, m) in roots_in_field(&dehom) {
        if best.as_ref().is_none_or(|(bm, _)| m > *bm) {
            best = Some((m, BlowupStep::X(c)));
        }
    }
    best.map(|(_, s)| s)
}

/// Follows the strict transform of `f` through up to `max_steps` blowups,
/// recording multiplicity and first characteristic exponent at each center.
///
/// Each center is the rational tangent direction of highest multiplicity.
/// The table stops at a smooth or unit strict transform, at `e = ∞`, or when
/// no tangent direction is rational.
pub fn descent(f: &BivarPoly, max_steps: usize) -> Result<Descent> {
    let field = f.field();
    let mut g = regular_part(f)?;
    let mut rows = Vec::new();
    let mut steps = Vec::new();
    let max_iter = max_iter_from_env();
    loop {
        let mu = g.order().unwrap();
        if mu == 0 {
            rows.push(DescentRow { mu, e: Value::Infinite });
            break;
        }
        let e = first_char_exponent_poly(&admissible_coordinates(&g)?, max_iter)?;
        let done = e == Value::Infinite;
        rows.push(DescentRow { mu, e });
        if done || steps.len() == max_steps {
            break;
        }
        let Some(step) = best_direction(&g) else { break };
        g = transform_poly(&g, &step).1;
        steps.push(step);
    }
    Ok(Descent { rows, seq: BlowupSeq { field, steps } })
}
