//! Residues of quotients of equal value.
//!
//! For a chain with data `(Q_i, β_i)` let `Γ_i` be the group generated by
//! `1, β_1, ..., β_i` and `e_i = [Γ_i : Γ_{i-1}]`. Every `w ∈ Γ_m` has a standard
//! monomial `S_m(w) = x^a Q_1^{γ_1} ... Q_m^{γ_m}` with `0 <= γ_i < e_i`. The
//! residue of `f / S_m(ν_m(f))` is a polynomial in
//! `z_m = res(Q_m^{e_m} / S_{m-1}(e_m β_m))` over the residues of level `m - 1`.
//! For chains whose keys have residual polynomials of degree one, every `z_i`
//! with `i < n` takes a constant value `ζ_i ∈ k`, and the residue field of the
//! full chain is `k(z_n)` (or `k` itself when an ω entry fixes `z_n`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::{swap_frame, MacLaneChain};
use crate::error::{Error, Result};
use crate::exact::{BaseField, BivarPoly, Elem, Value};

/// The residue of a quotient `f / g` with `ν(f) >= ν(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Residue {
    /// The residue is the constant `c ∈ k`.
    Rational(Elem),
    /// The residue is transcendental over `k`.
    Transcendental,
}

/// Exponent vector `x^x Q_1^{q_1} ... Q_n^{q_n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Mono {
    x: i64,
    q: Vec<i64>,
}

impl Mono {
    fn add_scaled(&mut self, other: &Mono, t: i64) {
        self.x += other.x * t;
        for (a, b) in self.q.iter_mut().zip(&other.q) {
            *a += b * t;
        }
    }
}

pub struct ResidueCalc<'a> {
    chain: &'a MacLaneChain,
    field: BaseField,
    /// `D_0, ..., D_n`: `Γ_i = (1/D_i) Z`.
    dens: Vec<BigInt>,
    /// `e_1, ..., e_n`.
    e: Vec<i64>,
    /// `ζ_1, ..., ζ_{n-1}` (and `ζ_n` when an ω entry is present); `None` when the
    /// residual polynomial of the next key has degree above one.
    zeta: Vec<Option<Elem>>,
}

fn horner(p: &[Elem], t: &Elem, field: BaseField) -> Elem {
    p.iter().rev().fold(field.zero(), |acc, c| &(&acc * t) + c)
}

fn is_constant(p: &[Elem]) -> bool {
    p.iter().skip(1).all(Elem::is_zero)
}

fn trim(mut p: Vec<Elem>) -> Vec<Elem> {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    p
}

impl<'a> ResidueCalc<'a> {
    pub fn new(chain: &'a MacLaneChain) -> Self {
        let field = chain.field();
        let n = chain.len();
        let mut dens = vec![BigInt::from(1)];
        let mut e = Vec::with_capacity(n);
        for i in 1..=n {
            let prev = dens[i - 1].clone();
            let d = num_integer::Integer::lcm(&prev, chain.beta(i).denom());
            e.push((&d / &prev).to_i64().expect("ramification index fits in i64"));
            dens.push(d);
        }
        let mut calc = ResidueCalc { chain, field, dens, e, zeta: Vec::new() };
        for i in 1..n {
            let z = calc.root_of_next(i, chain.key(i + 1));
            calc.zeta.push(z);
        }
        if let Some(w) = chain.omega() {
            let z = calc.root_of_next(n, w);
            calc.zeta.push(z);
        }
        calc
    }

    /// The root of the residual polynomial of `key` at `level`, when it is linear.
    fn root_of_next(&self, level: usize, key: &BivarPoly) -> Option<Elem> {
        let (_, rho) = self.initial(level, key).ok()?;
        let rho = trim(rho);
        if rho.len() != 2 {
            return None;
        }
        Some((-&rho[0]).div(&rho[1]).unwrap())
    }

    /// Ramification indices `e_1, ..., e_n`.
    pub fn ramification(&self) -> &[i64] {
        &self.e
    }

    fn beta(&self, i: usize) -> &BigRational {
        self.chain.beta(i)
    }

    fn zero_mono(&self) -> Mono {
        Mono { x: 0, q: vec![0; self.chain.len()] }
    }

    /// `S_m(w)` for `w ∈ Γ_m`.
    fn std_mono(&self, m: usize, w: &BigRational) -> Mono {
        let mut w = w.clone();
        let mut out = self.zero_mono();
        for i in (1..=m).rev() {
            let d_prev = BigRational::from_integer(self.dens[i - 1].clone());
            let mut g = 0;
            while !(&w * &d_prev).is_integer() {
                w -= self.beta(i);
                g += 1;
                assert!(g < self.e[i - 1], "value outside the value group");
            }
            out.q[i - 1] = g;
        }
        assert!(w.is_integer(), "value outside the value group");
        out.x = w.to_integer().to_i64().expect("exponent fits in i64");
        out
    }

    /// The residue of a monomial of value zero involving only `Q_1..Q_m`.
    fn mono_residue(&self, m: usize, mono: &Mono) -> Result<Elem> {
        let mut mono = mono.clone();
        let mut r = self.field.one();
        for i in (1..=m).rev() {
            let delta = mono.q[i - 1];
            if delta == 0 {
                continue;
            }
            let e = self.e[i - 1];
            debug_assert_eq!(delta % e, 0);
            let t = delta / e;
            let z = self.zeta_at(i)?;
            r = &r * &z.pow(t)?;
            mono.q[i - 1] = 0;
            let base = self.std_mono(i - 1, &(self.beta(i) * BigInt::from(e)));
            mono.add_scaled(&base, t);
        }
        debug_assert_eq!(mono.x, 0);
        Ok(r)
    }

    fn zeta_at(&self, i: usize) -> Result<&Elem> {
        match self.zeta.get(i - 1) {
            Some(Some(z)) => Ok(z),
            Some(None) => {
                Err(Error::NonRationalCenter(format!("residual polynomial of key {} has no root of degree one", i + 1)))
            }
            None => Err(Error::NonRationalCenter(format!("level {i} has a free residue"))),
        }
    }

    /// `(ν_m(f), ρ)` with `ρ ∈ k[z_m]` the residue of `f / S_m(ν_m(f))`; `f != 0`.
    fn initial(&self, m: usize, f: &BivarPoly) -> Result<(BigRational, Vec<Elem>)> {
        if m == 0 {
            let c = f.coeff(0);
            return Ok((BigRational::from_integer(BigInt::from(c.ord_int())), vec![c.lowest_coeff()]));
        }
        let parts = f.expand(self.chain.key(m))?;
        let bm = self.beta(m);
        let mut terms = Vec::new();
        for (j, p) in parts.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let (wj, rho) = self.initial(m - 1, p)?;
            let r = if is_constant(&rho) { rho[0].clone() } else { horner(&rho, self.zeta_at(m - 1)?, self.field) };
            let total = &wj + bm * BigInt::from(j as i64);
            terms.push((j as i64, wj, r, total));
        }
        let w = terms.iter().map(|t| &t.3).min().unwrap().clone();
        let em = self.e[m - 1];
        let j0 = terms.iter().filter(|t| t.3 == w).map(|t| t.0).min().unwrap() % em;
        let base = self.std_mono(m - 1, &(&w - bm * BigInt::from(j0)));
        let step = self.std_mono(m - 1, &(bm * BigInt::from(em)));
        let mut rho: Vec<Elem> = Vec::new();
        for (j, wj, r, total) in &terms {
            if *total != w || r.is_zero() {
                continue;
            }
            let t = (j - j0) / em;
            let mut mono = self.std_mono(m - 1, wj);
            mono.add_scaled(&step, t);
            mono.add_scaled(&base, -1);
            let c = r * &self.mono_residue(m - 1, &mono)?;
            let t = t as usize;
            if rho.len() <= t {
                rho.resize(t + 1, self.field.zero());
            }
            rho[t] = &rho[t] + &c;
        }
        Ok((w, trim(rho)))
    }

    /// Residue of `f / g` computed in the chain's own frame.
    pub fn ratio_in_frame(&self, f: &BivarPoly, g: &BivarPoly) -> Result<Residue> {
        let vf = self.chain.value_in_frame(f);
        let vg = self.chain.value_in_frame(g);
        if vg == Value::Infinite {
            return Err(Error::ResidueUndefined("denominator has infinite value".into()));
        }
        if vf > vg {
            return Ok(Residue::Rational(self.field.zero()));
        }
        if vf < vg {
            return Err(Error::ResidueUndefined(format!("quotient has negative value {vf} - {vg}")));
        }
        let n = self.chain.len();
        let (f, g) = match self.chain.omega() {
            Some(w) => (f.rem(w)?, g.rem(w)?),
            None => (f.clone(), g.clone()),
        };
        let (_, rf) = self.initial(n, &f)?;
        let (_, rg) = self.initial(n, &g)?;
        if self.chain.omega().is_some() && !(is_constant(&rf) && is_constant(&rg)) {
            let z = self.zeta_at(n)?;
            let a = horner(&rf, z, self.field);
            let b = horner(&rg, z, self.field);
            return Ok(Residue::Rational(a.div(&b)?));
        }
        let (rf, rg) = (trim(rf), trim(rg));
        if rf.len() != rg.len() {
            return Ok(Residue::Transcendental);
        }
        let lambda = rf.last().unwrap().div(rg.last().unwrap())?;
        if rf.iter().zip(&rg).all(|(a, b)| *a == &lambda * b) {
            Ok(Residue::Rational(lambda))
        } else {
            Ok(Residue::Transcendental)
        }
    }

    /// Residue of `f / g` for `f`, `g` in the caller's coordinates.
    pub fn ratio(&self, f: &BivarPoly, g: &BivarPoly) -> Result<Residue> {
        if !self.chain.swap_xy() {
            return self.ratio_in_frame(f, g);
        }
        let sf = swap_frame(f);
        let sg = swap_frame(g);
        let y = BivarPoly::y(self.field);
        let num = sf.poly.mul(&y.pow(sg.x_shift));
        let den = sg.poly.mul(&y.pow(sf.x_shift));
        let unit = sg.unit_at_zero.div(&sf.unit_at_zero)?;
        Ok(match self.ratio_in_frame(&num, &den)? {
            Residue::Rational(c) => Residue::Rational(&c * &unit),
            Residue::Transcendental => Residue::Transcendental,
        })
    }

    /// The standard monomial `S_{m}(w)` as a polynomial in the chain frame.
    pub fn standard_monomial(&self, m: usize, w: &BigRational) -> BivarPoly {
        let mono = self.std_mono(m, w);
        let mut p = BivarPoly::x_y_power(self.field, mono.x, 0);
        for (i, g) in mono.q.iter().enumerate() {
            if *g > 0 {
                p = p.mul(&self.chain.key(i + 1).pow(*g as u32));
            }
        }
        p
    }

    /// Whether `w` lies in `Γ_m`.
    pub fn in_group(&self, m: usize, w: &BigRational) -> bool {
        (w * BigRational::from_integer(self.dens[m].clone())).is_integer()
    }

    /// The constants `ζ_i`, where known.
    pub fn zetas(&self) -> &[Option<Elem>] {
        &self.zeta
    }
}
