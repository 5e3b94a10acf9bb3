//! The valuative tree: order, infimum, segments and majorants of chains.
//!
//! A chain `μ` with keys `Q_i` and values `β_i` is the smallest normalized
//! valuation taking at least `β_i` on every `Q_i`, so `μ <= ν` exactly when
//! `ν(Q_i) >= β_i` for all `i` (and `ν(Q_ω) = ∞` when `μ` has an ω entry).
//! The segment from the root to `μ` consists of the chains
//! `[μ_{u-1}; Q_u, t d_u]` for `r_{u-1} < t <= r_u`, where `r_i = β_i / d_i`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{BivarPoly, Value};
use crate::io::chain_to_json;
use crate::valuation::{ChainEntry, ChainInvariants, MacLaneChain};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Less,
    Equal,
    Greater,
    Incomparable,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Less => "less",
            Relation::Equal => "equal",
            Relation::Greater => "greater",
            Relation::Incomparable => "incomparable",
        })
    }
}

/// A polynomial on which the first valuation exceeds the second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub poly: BivarPoly,
    pub first: Value,
    pub second: Value,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompareResult {
    pub relation: Relation,
    /// `f` with `μ(f) > ν(f)`, when `μ` is not below `ν`.
    pub mu_exceeds: Option<Witness>,
    /// `f` with `ν(f) > μ(f)`, when `ν` is not below `μ`.
    pub nu_exceeds: Option<Witness>,
}

/// `μ`'s keys in the caller's coordinates, with their values; the ω key last.
fn keys_in_caller_frame(mu: &MacLaneChain) -> Vec<(BivarPoly, Value)> {
    let mut keys = mu.keys_with_values();
    if mu.swap_xy() {
        for (k, _) in keys.iter_mut() {
            *k = k.swap_xy().expect("keys of a swapped chain are polynomials");
        }
    }
    keys
}

/// The first 1-based index `u` with `ν(Q_u) < β_u` (the ω entry is `n + 1`),
/// together with `ν(Q_u)`.
fn first_failure(mu: &MacLaneChain, nu: &MacLaneChain) -> Option<(usize, BivarPoly, Value, Value)> {
    for (i, (k, b)) in keys_in_caller_frame(mu).into_iter().enumerate() {
        let got = nu.evaluate(&k);
        if got < b {
            return Some((i + 1, k, b, got));
        }
    }
    None
}

fn check_fields(mu: &MacLaneChain, nu: &MacLaneChain) -> Result<()> {
    if mu.field() != nu.field() {
        return Err(Error::FieldMismatch(mu.field(), nu.field()));
    }
    Ok(())
}

/// Whether `μ <= ν` pointwise on `k[x, y]`.
pub fn leq(mu: &MacLaneChain, nu: &MacLaneChain) -> Result<bool> {
    check_fields(mu, nu)?;
    Ok(first_failure(mu, nu).is_none())
}

pub fn compare(mu: &MacLaneChain, nu: &MacLaneChain) -> Result<CompareResult> {
    check_fields(mu, nu)?;
    let witness =
        |f: Option<(usize, BivarPoly, Value, Value)>| f.map(|(_, poly, first, second)| Witness { poly, first, second });
    let mu_exceeds = witness(first_failure(mu, nu));
    let nu_exceeds = witness(first_failure(nu, mu));
    let relation = match (&mu_exceeds, &nu_exceeds) {
        (None, None) => Relation::Equal,
        (None, Some(_)) => Relation::Less,
        (Some(_), None) => Relation::Greater,
        (Some(_), Some(_)) => Relation::Incomparable,
    };
    Ok(CompareResult { relation, mu_exceeds, nu_exceeds })
}

/// Whether two chains define the same valuation.
pub fn same_valuation(mu: &MacLaneChain, nu: &MacLaneChain) -> Result<bool> {
    Ok(compare(mu, nu)?.relation == Relation::Equal)
}

/// `μ_{u-1}` augmented by `(Q_u, β)`; `u = 1` starts from the root.
fn partial(mu: &MacLaneChain, u: usize, beta: BigRational) -> MacLaneChain {
    let field = mu.field();
    let mut entries: Vec<ChainEntry> = mu.entries()[..u - 1].to_vec();
    let key = if u <= mu.len() { mu.key(u).clone() } else { mu.omega().unwrap().clone() };
    entries.push(ChainEntry::new(key, beta));
    MacLaneChain::from_parts(field, mu.swap_xy(), entries, None)
}

/// `μ_i` for `0 <= i <= n`, with `μ_0` the root.
fn prefix(mu: &MacLaneChain, i: usize) -> MacLaneChain {
    if i == 0 {
        MacLaneChain::root(mu.field())
    } else {
        mu.truncate(i).unwrap()
    }
}

/// `deg Q_u`, with `u = n + 1` the ω key.
fn key_degree(mu: &MacLaneChain, u: usize) -> u32 {
    if u <= mu.len() {
        mu.degree(u)
    } else {
        mu.omega().unwrap().deg_y().unwrap()
    }
}

/// The greatest common lower bound of `μ` and `ν`.
///
/// It is the last point of the segment from the root to `μ` that lies below
/// `ν`: with `u` the first key of `μ` on which `ν` falls short, this is
/// `[μ_{u-1}; Q_u, ν(Q_u)]`, or `μ_{u-1}` when `ν(Q_u) = μ_{u-1}(Q_u)`.
pub fn infimum(mu: &MacLaneChain, nu: &MacLaneChain) -> Result<MacLaneChain> {
    check_fields(mu, nu)?;
    let Some((u, _, _, got)) = first_failure(mu, nu) else {
        return Ok(mu.clone());
    };
    let got = got.expect_finite().clone();
    let d = BigRational::from_integer(BigInt::from(key_degree(mu, u)));
    if &got / &d == mu.ratio(u - 1) {
        return Ok(prefix(mu, u - 1));
    }
    Ok(partial(mu, u, got))
}

/// The right end `r_n = β_n / d_n` of the segment, or `∞` for ω chains.
pub fn segment_end(nu: &MacLaneChain) -> Value {
    if nu.omega().is_some() {
        Value::Infinite
    } else {
        Value::Finite(nu.ratio(nu.len()))
    }
}

/// The point `ν_t` of the segment from the root (`t = 1`) to `ν` (`t = r_n`).
pub fn segment_point(nu: &MacLaneChain, t: &Value) -> Result<MacLaneChain> {
    let hi = segment_end(nu);
    let out_of_range = || Error::OutOfSegment { t: Box::new(t.clone()), hi: Box::new(hi.clone()) };
    let tr = match t {
        Value::Infinite if nu.omega().is_some() => return Ok(nu.clone()),
        Value::Infinite => return Err(out_of_range()),
        Value::Finite(q) => q.clone(),
    };
    if tr < BigRational::one() || Value::Finite(tr.clone()) > hi {
        return Err(out_of_range());
    }
    if tr.is_one() {
        return Ok(prefix(nu, 0));
    }
    let n = nu.len();
    for u in 1..=n + usize::from(nu.omega().is_some()) {
        let upper = if u <= n { Value::Finite(nu.ratio(u)) } else { Value::Infinite };
        if nu.ratio(u - 1) < tr && Value::Finite(tr.clone()) <= upper {
            if u <= n && tr == nu.ratio(u) {
                return Ok(prefix(nu, u));
            }
            let d = BigRational::from_integer(BigInt::from(key_degree(nu, u)));
            return Ok(partial(nu, u, tr * d));
        }
    }
    Err(out_of_range())
}

/// The maximum of a totally ordered nonempty family.
pub fn majorant(chains: &[MacLaneChain]) -> Result<MacLaneChain> {
    let (first, rest) = chains.split_first().ok_or(Error::NotTotallyOrdered)?;
    let mut best = first;
    for c in rest {
        match compare(best, c)?.relation {
            Relation::Less => best = c,
            Relation::Equal | Relation::Greater => {}
            Relation::Incomparable => return Err(Error::NotTotallyOrdered),
        }
    }
    for c in chains {
        if compare(c, best)?.relation == Relation::Incomparable {
            return Err(Error::NotTotallyOrdered);
        }
    }
    Ok(best.clone())
}

/// The limit `[prefix; Q, β̄]` of the family `[prefix; Q, β]` as `β` increases
/// to `β̄`; `β̄ = ∞` gives the curve valuation of `Q`.
pub fn limit(prefix: &MacLaneChain, q: &BivarPoly, beta_bar: &Value) -> Result<MacLaneChain> {
    prefix.augment(q, beta_bar)
}

pub fn chain_invariants(nu: &MacLaneChain) -> ChainInvariants {
    nu.invariants()
}

/// Closes `chains` under pairwise infimum and draws the covering relation as
/// a DOT digraph, edges pointing from smaller to larger.
pub fn tree_dot(chains: &[MacLaneChain]) -> Result<String> {
    fn add(c: MacLaneChain, nodes: &mut Vec<MacLaneChain>) -> Result<bool> {
        for n in nodes.iter() {
            if same_valuation(n, &c)? {
                return Ok(false);
            }
        }
        nodes.push(c);
        Ok(true)
    }
    let mut nodes: Vec<MacLaneChain> = Vec::new();
    for c in chains {
        add(c.clone(), &mut nodes)?;
    }
    loop {
        let mut grew = false;
        let snapshot = nodes.clone();
        for (i, a) in snapshot.iter().enumerate() {
            for b in &snapshot[i + 1..] {
                grew |= add(infimum(a, b)?, &mut nodes)?;
            }
        }
        if !grew {
            break;
        }
    }
    let keyed: BTreeMap<String, MacLaneChain> = nodes.into_iter().map(|c| (chain_to_json(&c), c)).collect();
    let sorted: Vec<&MacLaneChain> = keyed.values().collect();
    let n = sorted.len();
    let mut below = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            below[i][j] = i != j && compare(sorted[i], sorted[j])?.relation == Relation::Less;
        }
    }
    let mut out = String::from("digraph valtree {\n  rankdir=BT;\n");
    for (i, c) in sorted.iter().enumerate() {
        let label = c.to_string().replace('\\', "\\\\").replace('"', "\\\"");
        out.push_str(&format!("  n{i} [label=\"{label}\"];\n"));
    }
    for i in 0..n {
        for j in 0..n {
            if below[i][j] && !(0..n).any(|k| below[i][k] && below[k][j]) {
                out.push_str(&format!("  n{i} -> n{j};\n"));
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}
