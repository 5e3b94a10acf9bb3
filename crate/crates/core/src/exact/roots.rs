use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{BaseField, Elem};
use super::upoly::UPoly;

/// Roots of `h` lying in the base field, with multiplicities, in increasing order.
pub fn roots_in_field(h: &UPoly) -> Vec<(Elem, u32)> {
    if h.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let candidates = match h.field() {
        BaseField::Rationals => rational_candidates(h),
        BaseField::Prime(p) => prime_candidates(h, p),
    };
    let mut out = Vec::new();
    for c in candidates {
        let lin = UPoly::from_coeffs(h.field(), vec![-&c, h.field().one()]);
        let mut m = 0;
        let mut cur = h.clone();
        loop {
            let (q, r) = cur.divrem(&lin).unwrap();
            if !r.is_zero() {
                break;
            }
            m += 1;
            cur = q;
        }
        if m > 0 {
            out.push((c, m));
        }
    }
    out.sort();
    out.dedup();
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
        if d > BigInt::from(2_000_000) {
            break;
        }
    }
    small.extend(large.into_iter().rev());
    small
}

fn rational_candidates(h: &UPoly) -> Vec<Elem> {
    let mut den = BigInt::one();
    for c in h.coeffs() {
        den = den.lcm(c.as_rational().unwrap().denom());
    }
    let ints: Vec<BigInt> = h
        .coeffs()
        .iter()
        .map(|c| (c.as_rational().unwrap() * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let mut out = Vec::new();
    let k = ints.iter().position(|c| !c.is_zero()).unwrap();
    if k > 0 {
        out.push(h.field().zero());
    }
    let a0 = &ints[k];
    let an = ints.last().unwrap();
    for p in divisors(a0) {
        for q in divisors(an) {
            for s in [1, -1] {
                out.push(Elem::Rat(BigRational::new(&p * BigInt::from(s), q.clone())));
            }
        }
    }
    out
}

fn powmod(base: &UPoly, mut e: u64, m: &UPoly) -> UPoly {
    let mut r = UPoly::one(m.field());
    let mut b = base.divrem(m).unwrap().1;
    while e > 0 {
        if e & 1 == 1 {
            r = r.mul(&b).divrem(m).unwrap().1;
        }
        b = b.mul(&b).divrem(m).unwrap().1;
        e >>= 1;
    }
    r
}

/// Roots of a product of distinct linear factors over `F_p`, splitting by
/// `gcd(g, (t + a)^((p-1)/2) - 1)` for `a = 0, 1, 2, ...`.
fn split_linear(g: &UPoly, p: u64, shift: &mut u64, out: &mut Vec<Elem>) {
    let field = g.field();
    match g.degree() {
        None | Some(0) => {}
        Some(1) => {
            let c = g.monic();
            out.push(-&c.coeff(0));
        }
        Some(_) => loop {
            let a = field.int((*shift % p) as i64);
            *shift += 1;
            let t = UPoly::from_coeffs(field, vec![a, field.one()]);
            let w = powmod(&t, (p - 1) / 2, g).sub(&UPoly::one(field));
            let d = g.gcd(&w);
            let dd = d.degree().unwrap_or(0);
            if dd > 0 && Some(dd) < g.degree() {
                split_linear(&d, p, shift, out);
                split_linear(&g.divrem(&d).unwrap().0, p, shift, out);
                return;
            }
        },
    }
}

fn prime_candidates(h: &UPoly, p: u64) -> Vec<Elem> {
    let field = h.field();
    if p <= 1 << 12 {
        return field.elements().unwrap();
    }
    let mut out = Vec::new();
    let mut h = h.clone();
    if h.coeff(0).is_zero() {
        out.push(field.zero());
        h = h.unshift(h.ord().unwrap());
    }
    let t = UPoly::x(field);
    let frob = powmod(&t, p, &h.monic()).sub(&t);
    let g = h.gcd(&frob);
    split_linear(&g, p, &mut 0, &mut out);
    out
}
