//! Per-polynomial diagnostics: `Q`-expansions and the `ε / I / b` data.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exact::{BivarPoly, Value};
use crate::valuation::MacLaneChain;

/// `g = Σ_j coeffs[j] * base^j` with `deg_y coeffs[j] < deg_y base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QExpansion {
    pub base: BivarPoly,
    pub coeffs: Vec<BivarPoly>,
}

impl QExpansion {
    /// Recombines the expansion.
    pub fn reconstruct(&self) -> BivarPoly {
        let mut acc = BivarPoly::zero(self.base.field());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&self.base).add(c);
        }
        acc
    }
}

pub fn q_expand(g: &BivarPoly, q: &BivarPoly) -> Result<QExpansion> {
    Ok(QExpansion { base: q.clone(), coeffs: g.expand(q)? })
}

/// `ε(P) = max_b (ν(P) - ν(∂_b P)) / b`, the set `I` of maximizing `b` and `b = min I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonData {
    pub epsilon: Value,
    pub attaining: Vec<u32>,
    pub b: u32,
}

impl fmt::Display for EpsilonData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set: Vec<String> = self.attaining.iter().map(u32::to_string).collect();
        write!(f, "epsilon={} I={{{}}} b={}", self.epsilon, set.join(","), self.b)
    }
}

/// Scans every `b` in `1..=deg_y P`; derivatives of infinite value are skipped.
///
/// Derivatives are taken in the chain frame, so a swapped chain differentiates
/// in `x` and needs a polynomial `P`.
pub fn epsilon_data(nu: &MacLaneChain, p: &BivarPoly) -> Result<EpsilonData> {
    if nu.swap_xy() {
        let q = p.swap_xy().ok_or_else(|| Error::NotPolynomial(p.to_string()))?;
        return epsilon_data(&nu.clone().with_swap(false), &q);
    }
    let deg = p.deg_y().unwrap_or(0);
    if deg == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let vp = nu.evaluate(p);
    let mut best: Option<Value> = None;
    let mut attaining = Vec::new();
    for b in 1..=deg {
        let vd = nu.evaluate(&p.hasse(b));
        let Value::Finite(d) = vd else { continue };
        let ratio = match &vp {
            Value::Finite(q) => Value::Finite((q - d) / BigRational::from_integer(BigInt::from(b))),
            Value::Infinite => Value::Infinite,
        };
        match &best {
            Some(cur) if ratio < *cur => {}
            Some(cur) if ratio == *cur => attaining.push(b),
            _ => {
                best = Some(ratio);
                attaining = vec![b];
            }
        }
    }
    let epsilon = best.expect("the top derivative is a nonzero constant in y");
    Ok(EpsilonData { b: attaining[0], epsilon, attaining })
}
