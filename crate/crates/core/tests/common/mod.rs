//! Independent oracles for integration tests.
//!
//! Everything here works on dense coefficient tables and is written from
//! scratch; only parsing and conversion touch the library.

#![allow(dead_code)]

use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use valtree::exact::Poly2;
use valtree::io::{chain_from_json, seq_from_json};
use valtree::{BaseField, BivarPoly, BlowupSeq, MacLaneChain, Value};

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

fn read_dir_sorted(sub: &str) -> Vec<(String, String)> {
    let mut files: Vec<_> = std::fs::read_dir(data_dir().join(sub))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| (p.file_stem().unwrap().to_string_lossy().into_owned(), std::fs::read_to_string(&p).unwrap()))
        .collect()
}

pub fn bundled_chains() -> Vec<(String, MacLaneChain)> {
    read_dir_sorted("chains").into_iter().map(|(n, t)| (n, chain_from_json(&t).unwrap())).collect()
}

pub fn bundled_sequences() -> Vec<(String, BlowupSeq)> {
    read_dir_sorted("sequences").into_iter().map(|(n, t)| (n, seq_from_json(&t).unwrap())).collect()
}

pub fn violation_fixtures() -> Vec<(String, String)> {
    read_dir_sorted("violations")
}

/// Coefficient ring: `Q`, or `F_p` with residues kept in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ring(pub Option<u64>);

impl Ring {
    pub fn of(field: BaseField) -> Ring {
        match field {
            BaseField::Rationals => Ring(None),
            BaseField::Prime(p) => Ring(Some(p)),
        }
    }

    pub fn norm(&self, c: BigRational) -> BigRational {
        match self.0 {
            None => c,
            Some(p) => {
                let p = BigInt::from(p);
                assert!(c.is_integer(), "prime field oracle only builds integer coefficients");
                let r = ((c.to_integer() % &p) + &p) % &p;
                BigRational::from_integer(r)
            }
        }
    }
}

/// `Σ c[j][i] x^i y^j` with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dense {
    pub ring: Ring,
    pub c: Vec<Vec<BigRational>>,
}

impl Dense {
    pub fn zero(ring: Ring) -> Dense {
        Dense { ring, c: Vec::new() }
    }

    fn trim(mut self) -> Dense {
        for row in self.c.iter_mut() {
            while row.last().is_some_and(Zero::is_zero) {
                row.pop();
            }
        }
        while self.c.last().is_some_and(Vec::is_empty) {
            self.c.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg_y(&self) -> usize {
        self.c.len() - 1
    }

    pub fn get(&self, i: usize, j: usize) -> BigRational {
        self.c.get(j).and_then(|r| r.get(i)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn set_add(&mut self, i: usize, j: usize, v: &BigRational) {
        if self.c.len() <= j {
            self.c.resize(j + 1, Vec::new());
        }
        if self.c[j].len() <= i {
            self.c[j].resize(i + 1, BigRational::zero());
        }
        let s = &self.c[j][i] + v;
        self.c[j][i] = self.ring.norm(s);
    }

    pub fn add(&self, o: &Dense) -> Dense {
        let mut r = self.clone();
        for (j, row) in o.c.iter().enumerate() {
            for (i, v) in row.iter().enumerate() {
                r.set_add(i, j, v);
            }
        }
        r.trim()
    }

    pub fn neg(&self) -> Dense {
        let mut r = Dense::zero(self.ring);
        for (j, row) in self.c.iter().enumerate() {
            for (i, v) in row.iter().enumerate() {
                r.set_add(i, j, &-v);
            }
        }
        r.trim()
    }

    pub fn sub(&self, o: &Dense) -> Dense {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Dense) -> Dense {
        let mut r = Dense::zero(self.ring);
        for (j1, r1) in self.c.iter().enumerate() {
            for (i1, v1) in r1.iter().enumerate() {
                if v1.is_zero() {
                    continue;
                }
                for (j2, r2) in o.c.iter().enumerate() {
                    for (i2, v2) in r2.iter().enumerate() {
                        if !v2.is_zero() {
                            r.set_add(i1 + i2, j1 + j2, &(v1 * v2));
                        }
                    }
                }
            }
        }
        r.trim()
    }

    /// The coefficient of `y^j` as a polynomial in `x`, placed back in `y^0`.
    fn row(&self, j: usize) -> Dense {
        Dense { ring: self.ring, c: vec![self.c.get(j).cloned().unwrap_or_default()] }.trim()
    }

    fn shift_y(&self, k: usize) -> Dense {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![Vec::new(); k];
        c.extend(self.c.iter().cloned());
        Dense { ring: self.ring, c }
    }

    /// Division by a polynomial monic in `y`.
    pub fn divrem(&self, q: &Dense) -> (Dense, Dense) {
        let d = q.deg_y();
        assert_eq!(q.c[d], vec![BigRational::one()], "divisor must be monic in y");
        let mut quo = Dense::zero(self.ring);
        let mut rem = self.clone();
        while !rem.is_zero() && rem.deg_y() >= d {
            let k = rem.deg_y() - d;
            let t = rem.row(rem.deg_y()).shift_y(k);
            quo = quo.add(&t);
            rem = rem.sub(&t.mul(q));
        }
        (quo, rem)
    }

    pub fn swap(&self) -> Dense {
        let mut r = Dense::zero(self.ring);
        for (j, row) in self.c.iter().enumerate() {
            for (i, v) in row.iter().enumerate() {
                r.set_add(j, i, v);
            }
        }
        r.trim()
    }

    /// `Σ C(j, b) c[j][i] x^i y^(j-b)`.
    pub fn hasse(&self, b: usize) -> Dense {
        let mut r = Dense::zero(self.ring);
        for (j, row) in self.c.iter().enumerate().skip(b) {
            let binom = binomial(j, b);
            for (i, v) in row.iter().enumerate() {
                r.set_add(i, j - b, &(v * &binom));
            }
        }
        r.trim()
    }

    pub fn from_lib(f: &BivarPoly) -> Dense {
        let g = f.to_poly2().expect("oracle handles polynomials only");
        let mut r = Dense::zero(Ring::of(f.field()));
        for ((i, j), c) in g.terms() {
            let q: BigRational = c.to_string().parse().unwrap();
            r.set_add(i as usize, j as usize, &q);
        }
        r.trim()
    }

    pub fn to_lib(&self, field: BaseField) -> BivarPoly {
        let mut g = Poly2::zero(field);
        for (j, row) in self.c.iter().enumerate() {
            for (i, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    g.add_term(i as u32, j as u32, &field.from_rational(v).unwrap());
                }
            }
        }
        g.to_bivar()
    }
}

fn binomial(n: usize, k: usize) -> BigRational {
    let mut acc = BigInt::one();
    for t in 0..k {
        acc = acc * BigInt::from(n - t) / BigInt::from(t + 1);
    }
    BigRational::from_integer(acc)
}

/// `None` stands for an infinite value.
pub type OValue = Option<BigRational>;

pub fn to_value(v: &OValue) -> Value {
    match v {
        Some(q) => Value::Finite(q.clone()),
        None => Value::Infinite,
    }
}

/// A chain read into dense form: keys, values, optional curve key, swap flag.
pub struct OracleChain {
    pub swap: bool,
    pub keys: Vec<(Dense, BigRational)>,
    pub omega: Option<Dense>,
}

impl OracleChain {
    pub fn from_lib(c: &MacLaneChain) -> OracleChain {
        OracleChain {
            swap: c.swap_xy(),
            keys: c.entries().iter().map(|e| (Dense::from_lib(&e.key), e.beta.clone())).collect(),
            omega: c.omega().map(Dense::from_lib),
        }
    }

    /// `ν_level` in the chain frame by repeated `Q`-adic expansion.
    fn level_value(&self, level: usize, f: &Dense) -> OValue {
        if f.is_zero() {
            return None;
        }
        let (q, beta) = &self.keys[level - 1];
        let mut best: OValue = None;
        if level == 1 {
            for (j, row) in f.c.iter().enumerate() {
                for (i, v) in row.iter().enumerate() {
                    if !v.is_zero() {
                        let val = BigRational::from_integer(BigInt::from(i)) + beta * BigInt::from(j);
                        best = Some(best.map_or(val.clone(), |b: BigRational| b.min(val)));
                    }
                }
            }
            return best;
        }
        let mut rest = f.clone();
        let mut k = 0usize;
        while !rest.is_zero() {
            let (quo, a) = rest.divrem(q);
            if let Some(va) = self.level_value(level - 1, &a) {
                let val = va + beta * BigInt::from(k);
                best = Some(best.map_or(val.clone(), |b| b.min(val)));
            }
            rest = quo;
            k += 1;
        }
        best
    }

    fn frame_value(&self, level: usize, f: &Dense) -> OValue {
        let f = if self.swap { f.swap() } else { f.clone() };
        self.level_value(level, &f)
    }

    pub fn truncated(&self, level: usize, f: &Dense) -> OValue {
        self.frame_value(level, f)
    }

    pub fn value(&self, f: &Dense) -> OValue {
        let n = self.keys.len();
        match &self.omega {
            None => self.frame_value(n, f),
            Some(w) => {
                let g = if self.swap { f.swap() } else { f.clone() };
                let (_, r) = g.divrem(w);
                self.level_value(n, &r)
            }
        }
    }

    /// Brute force `(ε, I, b)` by scanning every Hasse derivative in the frame.
    pub fn epsilon(&self, p: &Dense) -> (OValue, Vec<u32>, u32) {
        let g = if self.swap { p.swap() } else { p.clone() };
        let unswapped = OracleChain { swap: false, keys: self.keys.clone(), omega: self.omega.clone() };
        let vp = unswapped.value(&g);
        let mut best: Option<OValue> = None;
        let mut set = Vec::new();
        for b in 1..=g.deg_y() {
            let Some(vd) = unswapped.value(&g.hasse(b)) else { continue };
            let r = vp.as_ref().map(|v| (v - vd) / BigInt::from(b));
            let better = match &best {
                None => true,
                Some(cur) => ovalue_gt(&r, cur),
            };
            if better {
                best = Some(r);
                set = vec![b as u32];
            } else if best.as_ref() == Some(&r) {
                set.push(b as u32);
            }
        }
        (best.unwrap(), set.clone(), set[0])
    }
}

fn ovalue_gt(a: &OValue, b: &OValue) -> bool {
    match (a, b) {
        (None, None) => false,
        (None, Some(_)) => true,
        (Some(_), None) => false,
        (Some(x), Some(y)) => x > y,
    }
}

/// The order of `Σ c[j][i] x^i y^j` along `y ← y - a(x)/μ` after removing the `y^(μ-1)` term.
///
/// `f` must be monic of degree `μ` in `y` with `f(0, y) = y^μ`; characteristic zero only.
pub fn tschirnhaus_exponent(f: &Dense) -> OValue {
    let mu = f.deg_y();
    let shift =
        f.row(mu - 1).mul(&Dense { ring: f.ring, c: vec![vec![BigRational::new((-1).into(), BigInt::from(mu))]] });
    let mut y_plus = Dense::zero(f.ring);
    y_plus.set_add(0, 1, &BigRational::one());
    let y_plus = y_plus.add(&shift);
    let mut g = Dense::zero(f.ring);
    for j in (0..=mu).rev() {
        g = g.mul(&y_plus).add(&f.row(j));
    }
    let mut best: OValue = None;
    for j in 0..mu {
        if let Some(i) = g.c.get(j).and_then(|r| r.iter().position(|v| !v.is_zero())) {
            let e = BigRational::new(BigInt::from(i), BigInt::from(mu - j));
            best = Some(best.map_or(e.clone(), |b| b.min(e)));
        }
    }
    best
}

/// A random polynomial with `deg_y <= dy`, `deg_x <= dx`, integer coefficients in `[-h, h]`.
pub fn random_dense(rng: &mut ChaCha8Rng, ring: Ring, dx: usize, dy: usize, h: i64) -> Dense {
    loop {
        let mut f = Dense::zero(ring);
        let terms = rng.gen_range(1..=8);
        for _ in 0..terms {
            let c = BigRational::from_integer(BigInt::from(rng.gen_range(-h..=h)));
            f.set_add(rng.gen_range(0..=dx), rng.gen_range(0..=dy), &c);
        }
        let f = f.trim();
        if !f.is_zero() {
            return f;
        }
    }
}

/// Random polynomials biased towards large values of `chain`: half of them
/// are combinations of key powers with random cofactors.
pub fn random_for_chain(rng: &mut ChaCha8Rng, chain: &OracleChain, dy: usize, h: i64) -> Dense {
    let ring = chain.keys[0].0.ring;
    let plain = random_dense(rng, ring, 6, dy, h);
    if rng.gen_bool(0.5) {
        return plain;
    }
    let mut keys: Vec<&Dense> = chain.keys.iter().map(|(q, _)| q).collect();
    keys.extend(chain.omega.iter());
    let q = keys[rng.gen_range(0..keys.len())];
    let q = if chain.swap { q.swap() } else { q.clone() };
    let mut f = q.clone();
    while f.deg_y() + q.deg_y() <= dy && rng.gen_bool(0.4) {
        f = f.mul(&q);
    }
    let room = dy.saturating_sub(f.deg_y());
    let cof = random_dense(rng, ring, 2, room, h);
    let mut tail = Dense::zero(ring);
    let c = BigRational::from_integer(BigInt::from(rng.gen_range(1..=h)));
    tail.set_add(rng.gen_range(3..9), rng.gen_range(0..=room), &c);
    let g = f.mul(&cof).add(&tail);
    if g.is_zero() || g.deg_y() > dy.max(f.deg_y()) {
        plain
    } else {
        g
    }
}
