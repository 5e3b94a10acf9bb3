//! Conversions between MacLane chains and blowup sequences.
//!
//! [`blowups_to_chain`] grows a chain key by key against the divisorial
//! valuation of the sequence. Each new key is read off from the residue of
//! `Q_n^{e_n} / S` under the target, where `S` is the standard monomial of the
//! same value: a constant residue `c` gives the key `Q_n^{e_n} - c S`, and a
//! transcendental residue means the chain already is the target.
//!
//! [`chain_to_blowups`] follows the center of a chain through successive
//! blowups, keeping the chart coordinates as products of powers of polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::blowup::{BlowupSeq, BlowupStep, DivisorialOracle};
use crate::error::{Error, Result};
use crate::exact::{BaseField, BivarPoly, Elem, Value};
use crate::valuation::{ChainEntry, MacLaneChain, Residue};

/// A valuation centered at the origin that can be evaluated and whose residues
/// of quotients of equal value can be computed.
pub trait ValuationOracle {
    fn field(&self) -> BaseField;
    fn value(&self, f: &BivarPoly) -> Result<Value>;
    /// Residue of `f / g`; zero when `ν(f) > ν(g)`.
    fn residue_ratio(&self, f: &BivarPoly, g: &BivarPoly) -> Result<Residue>;
    fn describe(&self) -> String;
}

impl ValuationOracle for MacLaneChain {
    fn field(&self) -> BaseField {
        MacLaneChain::field(self)
    }

    fn value(&self, f: &BivarPoly) -> Result<Value> {
        if f.field() != self.field() {
            return Err(Error::FieldMismatch(self.field(), f.field()));
        }
        Ok(self.evaluate(f))
    }

    fn residue_ratio(&self, f: &BivarPoly, g: &BivarPoly) -> Result<Residue> {
        self.residues().ratio(f, g)
    }

    fn describe(&self) -> String {
        format!("chain {self}")
    }
}

impl ValuationOracle for DivisorialOracle {
    fn field(&self) -> BaseField {
        DivisorialOracle::field(self)
    }

    fn value(&self, f: &BivarPoly) -> Result<Value> {
        DivisorialOracle::value(self, f)
    }

    fn residue_ratio(&self, f: &BivarPoly, g: &BivarPoly) -> Result<Residue> {
        DivisorialOracle::residue_ratio(self, f, g)
    }

    fn describe(&self) -> String {
        format!("divisorial {}", self.seq())
    }
}

/// An oracle read in the frame with `x` and `y` exchanged; accepts polynomials only.
pub struct Swapped<'a, O: ?Sized>(pub &'a O);

impl<O: ValuationOracle + ?Sized> Swapped<'_, O> {
    fn back(&self, f: &BivarPoly) -> Result<BivarPoly> {
        f.swap_xy().ok_or_else(|| Error::NotPolynomial(f.to_string()))
    }
}

impl<O: ValuationOracle + ?Sized> ValuationOracle for Swapped<'_, O> {
    fn field(&self) -> BaseField {
        self.0.field()
    }

    fn value(&self, f: &BivarPoly) -> Result<Value> {
        self.0.value(&self.back(f)?)
    }

    fn residue_ratio(&self, f: &BivarPoly, g: &BivarPoly) -> Result<Residue> {
        self.0.residue_ratio(&self.back(f)?, &self.back(g)?)
    }

    fn describe(&self) -> String {
        format!("{} with x and y exchanged", self.0.describe())
    }
}

/// The outcome of one lifting step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedKey {
    pub key: BivarPoly,
    /// The key is the current last key, whose value must be raised rather than
    /// a new entry appended.
    pub raise_beta: bool,
}

/// The next key polynomial of `chain` towards `oracle`, both read in the
/// chain's frame.
///
/// Returns `Q_n` itself with `raise_beta` when the oracle already exceeds
/// `β_n` on it, and `Error::ChainComplete` when the chain equals the oracle.
pub fn lift_key_polynomial(chain: &MacLaneChain, oracle: &dyn ValuationOracle) -> Result<LiftedKey> {
    if chain.omega().is_some() {
        return Err(Error::OmegaPresent);
    }
    if chain.field() != oracle.field() {
        return Err(Error::FieldMismatch(chain.field(), oracle.field()));
    }
    let n = chain.len();
    let q = chain.key(n);
    let beta = Value::Finite(chain.beta(n).clone());
    let vq = oracle.value(q)?;
    if vq < beta {
        return Err(Error::ChainExceedsOracle(format!("{q}: chain {beta}, target {vq}")));
    }
    if vq > beta {
        return Ok(LiftedKey { key: q.clone(), raise_beta: true });
    }
    let calc = chain.residues();
    let e = calc.ramification()[n - 1];
    let w = chain.beta(n) * BigInt::from(e);
    let m = calc.standard_monomial(n - 1, &w);
    let qe = q.pow(e as u32);
    // Standard monomials may carry x^-k; clear it so both sides are polynomials.
    let k = m.clear_denominators().x_shift;
    let xk = BivarPoly::x(chain.field()).pow(k);
    match oracle.residue_ratio(&qe.mul(&xk), &m.mul(&xk))? {
        Residue::Rational(c) => Ok(LiftedKey { key: qe.sub(&m.scale_elem(&c)), raise_beta: false }),
        Residue::Transcendental => Err(Error::ChainComplete),
    }
}

/// The MacLane chain of the divisorial valuation of `seq`.
pub fn blowups_to_chain(seq: &BlowupSeq) -> Result<MacLaneChain> {
    let oracle = DivisorialOracle::new(seq)?;
    chain_for_oracle(&oracle, 2 * seq.len() + 4)
}

/// Runs the key construction against `oracle` until the chain is complete.
pub fn chain_for_oracle(oracle: &dyn ValuationOracle, max_keys: usize) -> Result<MacLaneChain> {
    let field = oracle.field();
    let vx = oracle.value(&BivarPoly::x(field))?;
    let vy = oracle.value(&BivarPoly::y(field))?;
    let swap = vy < vx;
    let swapped = Swapped(oracle);
    let frame: &dyn ValuationOracle = if swap { &swapped } else { oracle };
    let first = frame.value(&BivarPoly::y(field))?;
    let Value::Finite(b1) = first else {
        return Err(Error::InvalidChain("target is infinite on a coordinate".into()));
    };
    let mut chain = MacLaneChain::from_parts(field, swap, vec![ChainEntry::new(BivarPoly::y(field), b1)], None);
    for _ in 0..max_keys {
        match lift_key_polynomial(&chain, frame) {
            Err(Error::ChainComplete) => return Ok(chain),
            Err(err) => return Err(err),
            Ok(lift) => {
                let beta = frame.value(&lift.key)?;
                match (&beta, lift.raise_beta) {
                    (Value::Finite(b), true) => {
                        let mut entries = chain.entries().to_vec();
                        *entries.last_mut().unwrap() = ChainEntry::new(lift.key, b.clone());
                        chain = MacLaneChain::from_parts(field, swap, entries, None);
                    }
                    (Value::Infinite, true) => {
                        return Err(Error::InvalidChain(format!("target is infinite on {}", lift.key)))
                    }
                    (Value::Finite(_), false) => chain = chain.augment(&lift.key, &beta)?,
                    (Value::Infinite, false) => return chain.augment(&lift.key, &beta),
                }
            }
        }
    }
    Err(Error::IterationLimit(max_keys))
}

/// `constant * Π basis[i]^exps[i]`, an element of `k(x, y)`.
#[derive(Clone, Debug)]
struct Monomial {
    constant: Elem,
    exps: Vec<i64>,
}

struct Basis<'a> {
    chain: &'a MacLaneChain,
    polys: Vec<BivarPoly>,
    values: Vec<BigRational>,
}

impl<'a> Basis<'a> {
    fn new(chain: &'a MacLaneChain) -> Result<Self> {
        let mut b = Basis { chain, polys: Vec::new(), values: Vec::new() };
        if !(b.push(BivarPoly::x(chain.field())) && b.push(BivarPoly::y(chain.field()))) {
            return Err(Error::InvalidChain("a coordinate has infinite value".into()));
        }
        Ok(b)
    }

    /// Adds `p`; false when `p` has infinite value and cannot serve as a coordinate.
    fn push(&mut self, p: BivarPoly) -> bool {
        match self.chain.evaluate(&p) {
            Value::Finite(v) => {
                self.polys.push(p);
                self.values.push(v);
                true
            }
            Value::Infinite => false,
        }
    }

    fn unit(&self, i: usize, field: BaseField) -> Monomial {
        let mut exps = vec![0; self.polys.len()];
        exps[i] = 1;
        Monomial { constant: field.one(), exps }
    }

    fn value(&self, m: &Monomial) -> BigRational {
        m.exps.iter().zip(&self.values).fold(BigRational::zero(), |acc, (e, v)| acc + v * BigInt::from(*e))
    }

    fn quotient(&self, a: &Monomial, b: &Monomial) -> Monomial {
        let len = self.polys.len();
        let get = |m: &Monomial, i: usize| m.exps.get(i).copied().unwrap_or(0);
        Monomial {
            constant: a.constant.div(&b.constant).unwrap(),
            exps: (0..len).map(|i| get(a, i) - get(b, i)).collect(),
        }
    }

    /// `(A, B)` with `m = constant * A / B`, both polynomials.
    fn split(&self, m: &Monomial) -> (BivarPoly, BivarPoly) {
        let f = self.chain.field();
        let mut a = BivarPoly::one(f);
        let mut b = BivarPoly::one(f);
        for (p, e) in self.polys.iter().zip(&m.exps) {
            if *e > 0 {
                a = a.mul(&p.pow(*e as u32));
            } else if *e < 0 {
                b = b.mul(&p.pow((-e) as u32));
            }
        }
        (a, b)
    }
}

/// The blowup sequence whose last center carries the divisor of `chain`.
///
/// Returns `exact = false` when `max_steps` blowups do not reach a divisorial
/// stage, as for chains with an ω entry.
pub fn chain_to_blowups(chain: &MacLaneChain, max_steps: usize) -> Result<(BlowupSeq, bool)> {
    let field = chain.field();
    let mut basis = Basis::new(chain)?;
    let mut u = basis.unit(0, field);
    let mut v = basis.unit(1, field);
    let mut steps = Vec::new();
    loop {
        let vu = basis.value(&u);
        let vv = basis.value(&v);
        if vu.is_zero() || vv.is_zero() {
            return Err(Error::InvalidChain("valuation is not centered at the origin".into()));
        }
        if vu == vv {
            let ratio = basis.quotient(&v, &u);
            let (a, b) = basis.split(&ratio);
            match chain.residues().ratio(&a, &b)? {
                Residue::Transcendental => return Ok((BlowupSeq { field, steps }, true)),
                Residue::Rational(lambda) => {
                    if steps.len() == max_steps {
                        return Ok((BlowupSeq { field, steps }, false));
                    }
                    let c = &lambda * &ratio.constant;
                    let p = a.scale_elem(&ratio.constant).sub(&b.scale_elem(&c));
                    let mut exps: Vec<i64> = ratio.exps.iter().map(|e| (*e).min(0)).collect();
                    exps.push(1);
                    steps.push(BlowupStep::X(c));
                    if !basis.push(p) {
                        // The center follows a curve of infinite value forever.
                        return Ok((BlowupSeq { field, steps }, false));
                    }
                    v = Monomial { constant: field.one(), exps };
                    continue;
                }
            }
        }
        if steps.len() == max_steps {
            return Ok((BlowupSeq { field, steps }, false));
        }
        if vv > vu {
            steps.push(BlowupStep::X(field.zero()));
            v = basis.quotient(&v, &u);
        } else {
            steps.push(BlowupStep::Y);
            u = basis.quotient(&u, &v);
        }
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::blowup::divisorial_value;
    use crate::testutil::{bivar_strategy, p, pf, v, Q};

    fn x(c: i64) -> BlowupStep {
        BlowupStep::X(Q.int(c))
    }

    fn seq(steps: Vec<BlowupStep>) -> BlowupSeq {
        BlowupSeq::new(Q, steps).unwrap()
    }

    fn chain(entries: &[(&str, &str)]) -> MacLaneChain {
        let entries = entries.iter().map(|(k, b)| ChainEntry::new(p(k), v(b).expect_finite().clone())).collect();
        MacLaneChain::new(Q, false, entries, None).unwrap()
    }

    #[test]
    fn chains_of_short_sequences() {
        assert_eq!(blowups_to_chain(&seq(vec![])).unwrap(), chain(&[("y", "1")]));
        assert_eq!(blowups_to_chain(&seq(vec![x(0)])).unwrap(), chain(&[("y", "2")]));
        assert_eq!(blowups_to_chain(&seq(vec![x(1)])).unwrap(), chain(&[("y", "1"), ("y - x", "2")]));
        assert_eq!(blowups_to_chain(&seq(vec![x(0), BlowupStep::Y])).unwrap(), chain(&[("y", "3/2")]));
        assert_eq!(
            blowups_to_chain(&seq(vec![x(0), BlowupStep::Y, x(1)])).unwrap(),
            chain(&[("y", "3/2"), ("y^2 - x^3", "7/2")])
        );
        let swapped = blowups_to_chain(&seq(vec![BlowupStep::Y])).unwrap();
        assert!(swapped.swap_xy());
        assert_eq!(swapped.entries(), chain(&[("y", "2")]).entries());
        assert_eq!(swapped.evaluate(&p("x")), v("2"));
    }

    #[test]
    fn lifting_examples() {
        let root = chain(&[("y", "1")]);
        let o = DivisorialOracle::new(&seq(vec![x(1)])).unwrap();
        assert_eq!(lift_key_polynomial(&root, &o).unwrap(), LiftedKey { key: p("y - x"), raise_beta: false });
        let o = DivisorialOracle::new(&seq(vec![x(0)])).unwrap();
        assert_eq!(lift_key_polynomial(&root, &o).unwrap(), LiftedKey { key: p("y"), raise_beta: true });
        let target = chain(&[("y", "3/2"), ("y^2 - x^3", "4")]);
        let lifted = lift_key_polynomial(&chain(&[("y", "3/2")]), &target).unwrap();
        assert_eq!(lifted.key, p("y^2 - x^3"));
        assert_eq!(lift_key_polynomial(&target, &target), Err(Error::ChainComplete));
        assert!(matches!(lift_key_polynomial(&target, &root), Err(Error::ChainExceedsOracle(_))));
    }

    #[test]
    fn blowups_of_chains() {
        assert_eq!(chain_to_blowups(&chain(&[("y", "2")]), 8).unwrap(), (seq(vec![x(0)]), true));
        assert_eq!(chain_to_blowups(&chain(&[("y", "1")]), 8).unwrap(), (seq(vec![]), true));
        assert_eq!(chain_to_blowups(&chain(&[("y", "3/2")]), 8).unwrap(), (seq(vec![x(0), BlowupStep::Y]), true));
        assert_eq!(chain_to_blowups(&chain(&[("y", "1"), ("y - x", "2")]), 8).unwrap(), (seq(vec![x(1)]), true));
        let (s, exact) = chain_to_blowups(&chain(&[("y", "7/3")]), 1).unwrap();
        assert_eq!((s.len(), exact), (1, false));
    }

    #[test]
    fn omega_chains_give_prefixes() {
        let curve = chain(&[("y", "3/2")]).augment(&p("y^2 - x^3"), &Value::Infinite).unwrap();
        let (s, exact) = chain_to_blowups(&curve, 6).unwrap();
        assert!(!exact);
        assert_eq!(&s.steps[..3], &[x(0), BlowupStep::Y, x(1)]);
        let line = chain(&[("y", "1")]).augment(&p("y - x"), &Value::Infinite).unwrap();
        let (s, exact) = chain_to_blowups(&line, 4).unwrap();
        assert!(!exact);
        assert_eq!(s.steps[0], x(1));
    }

    #[test]
    fn minimal_degree_of_lifted_keys() {
        // Over F_3 every monic polynomial of degree below the lifted key keeps the
        // chain value.
        let f3 = BaseField::Prime(3);
        let s = BlowupSeq::new(f3, vec![BlowupStep::X(f3.int(0)), BlowupStep::Y, BlowupStep::X(f3.int(2))]).unwrap();
        let o = DivisorialOracle::new(&s).unwrap();
        let c = MacLaneChain::from_parts(
            f3,
            false,
            vec![ChainEntry::new(pf("y", f3), v("3/2").expect_finite().clone())],
            None,
        );
        let lifted = lift_key_polynomial(&c, &o).unwrap();
        assert_eq!(lifted.key.deg_y(), Some(2));
        for a in f3.elements().unwrap() {
            for b in f3.elements().unwrap() {
                for d in f3.elements().unwrap() {
                    let cand = pf(&format!("y + {a}*x + {b}*x^2 + {d}*x^3"), f3);
                    assert_eq!(c.evaluate(&cand), o.value(&cand).unwrap(), "{cand}");
                }
            }
        }
    }

    fn step_strategy() -> impl Strategy<Value = BlowupStep> {
        prop_oneof![(-2i64..=2).prop_map(|c| BlowupStep::X(Q.int(c))), Just(BlowupStep::Y)]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn chain_of_sequence_matches_divisor(
            steps in prop::collection::vec(step_strategy(), 0..5),
            fs in prop::collection::vec(bivar_strategy(Q, 5, 4, 5), 6),
        ) {
            let s = seq(steps);
            let c = blowups_to_chain(&s).unwrap();
            prop_assert!(c.validate().is_empty());
            for f in &fs {
                prop_assert_eq!(c.evaluate(f), divisorial_value(&s, f).unwrap());
            }
            let mut prev: Option<&ChainEntry> = None;
            for e in c.entries() {
                if let Some(pe) = prev {
                    if pe.degree() == e.degree() {
                        prop_assert!(e.beta > pe.beta);
                    }
                }
                prev = Some(e);
            }
        }

        #[test]
        fn sequences_round_trip_through_chains(
            steps in prop::collection::vec(step_strategy(), 0..5),
            fs in prop::collection::vec(bivar_strategy(Q, 5, 4, 5), 6),
        ) {
            let s = seq(steps);
            let c = blowups_to_chain(&s).unwrap();
            let (back, exact) = chain_to_blowups(&c, 32).unwrap();
            prop_assert!(exact);
            for f in &fs {
                prop_assert_eq!(divisorial_value(&back, f).unwrap(), divisorial_value(&s, f).unwrap());
            }
        }
    }
}
