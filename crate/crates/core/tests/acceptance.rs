//! Acceptance criteria 1-8, one PASS/FAIL line each.
//!
//! Run with `cargo test -p valtree --test acceptance`.

mod common;

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{
    bundled_chains, bundled_sequences, random_dense, random_for_chain, to_value, tschirnhaus_exponent,
    violation_fixtures, Dense, OracleChain, Ring,
};
use valtree::blowup::{descent, divisorial_value, first_char_exponent};
use valtree::correspondence::{blowups_to_chain, chain_to_blowups};
use valtree::io::chain_from_json_unchecked;
use valtree::keypoly::epsilon_data;
use valtree::tree::{infimum, leq, segment_end, segment_point, Relation};
use valtree::valuation::Rule;
use valtree::{parse_poly, BaseField, BlowupSeq, BlowupStep, MacLaneChain, Value};

const Q: BaseField = BaseField::Rationals;

type Outcome = Result<(), String>;

type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn criterion_1() -> Outcome {
    let chains = bundled_chains();
    check(chains.len() == 10, || format!("expected 10 bundled chains, found {}", chains.len()))?;
    check(chains.iter().any(|(_, c)| c.omega().is_some()), || "no omega chain".into())?;
    check(chains.iter().any(|(_, c)| c.field() != Q), || "no prime-field chain".into())?;
    let mut r = rng(1);
    for (name, chain) in &chains {
        let oc = OracleChain::from_lib(chain);
        let field = chain.field();
        for _ in 0..500 {
            let f = random_for_chain(&mut r, &oc, 8, 10).to_lib(field);
            let g = random_for_chain(&mut r, &oc, 8, 10).to_lib(field);
            let (vf, vg) = (chain.evaluate(&f), chain.evaluate(&g));
            let vfg = chain.evaluate(&f.mul(&g));
            check(vfg == &vf + &vg, || format!("{name}: nu(fg) = {vfg} != {vf} + {vg} for f = {f}, g = {g}"))?;
            let vs = chain.evaluate(&f.add(&g));
            check(vs >= vf.clone().min(vg.clone()), || format!("{name}: nu(f+g) = {vs} < min({vf}, {vg})"))?;
        }
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    let mut r = rng(2);
    for (name, chain) in &bundled_chains() {
        let oc = OracleChain::from_lib(chain);
        let n = chain.len();
        for _ in 0..300 {
            let f = random_for_chain(&mut r, &oc, 8, 10).to_lib(chain.field());
            let full = chain.evaluate(&f);
            let ladder: Vec<Value> = (1..=n).map(|i| chain.evaluate_truncated(i, &f).unwrap()).collect();
            for w in ladder.windows(2) {
                check(w[0] <= w[1], || format!("{name}: ladder {ladder:?} not monotone at {f}"))?;
            }
            let last = ladder.last().unwrap();
            if chain.omega().is_none() {
                check(*last == full, || format!("{name}: nu_N({f}) = {last} != {full}"))?;
            } else {
                check(*last <= full, || format!("{name}: nu_N({f}) = {last} > {full}"))?;
            }
            let frame = if chain.swap_xy() { f.swap_xy().unwrap() } else { f.clone() };
            let deg = frame.deg_y().unwrap_or(0);
            let mut degrees: Vec<u32> = (1..=n).map(|i| chain.degree(i)).collect();
            if let Some(w) = chain.omega() {
                degrees.push(w.deg_y().unwrap());
            }
            let stab = ladder.iter().position(|v| *v == full).unwrap_or(n);
            check(stab == 0 || degrees[stab] <= deg, || {
                format!("{name}: {f} stabilizes at level {} with key degree {} > {deg}", stab + 1, degrees[stab])
            })?;
        }
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let seqs = bundled_sequences();
    check(seqs.len() == 12, || format!("expected 12 bundled sequences, found {}", seqs.len()))?;
    check(seqs.iter().all(|(_, s)| (1..=6).contains(&s.len())), || "sequence lengths must be 1 to 6".into())?;
    check((1..=6).all(|l| seqs.iter().any(|(_, s)| s.len() == l)), || "every length 1 to 6 must occur".into())?;
    let mut r = rng(3);
    for (name, seq) in &seqs {
        let chain = blowups_to_chain(seq).map_err(|e| format!("{name}: {e}"))?;
        let (back, exact) = chain_to_blowups(&chain, 4 * seq.len() + 8).map_err(|e| format!("{name}: {e}"))?;
        check(exact, || format!("{name}: chain_to_blowups did not terminate on {chain}"))?;
        let ring = Ring::of(seq.field);
        for _ in 0..300 {
            let f = random_dense(&mut r, ring, 8, 6, 10).to_lib(seq.field);
            let dv = divisorial_value(seq, &f).map_err(|e| format!("{name}: {e}"))?;
            let cv = chain.evaluate(&f);
            check(cv == dv, || format!("{name}: chain {chain} gives {cv}, divisor gives {dv} on {f}"))?;
            let bv = divisorial_value(&back, &f).map_err(|e| format!("{name}: {e}"))?;
            check(bv == dv, || format!("{name}: inverse sequence {back} gives {bv} != {dv} on {f}"))?;
        }
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    let v = |s: &str| -> Value { s.parse().unwrap() };
    let cases = [
        ("y^2 - x^3", vec![(2, v("3/2")), (1, Value::Infinite)]),
        ("y^3 - x^5", vec![(3, v("5/3")), (2, v("3/2")), (1, Value::Infinite)]),
        (
            "(y^2 - x^3)^2 - x^7*y",
            vec![(4, v("3/2")), (2, v("9/2")), (2, v("7/2")), (2, v("5/2")), (2, v("3/2")), (1, Value::Infinite)],
        ),
    ];
    for (f, expected) in cases {
        let d = descent(&parse_poly(f, Q).unwrap(), 16).map_err(|e| format!("{f}: {e}"))?;
        let rows: Vec<(u32, Value)> = d.rows.iter().map(|r| (r.mu, r.e.clone())).collect();
        check(rows == expected, || format!("{f}: table {rows:?}, expected {expected:?}"))?;
        for w in rows.windows(2) {
            let ((m0, e0), (m1, e1)) = (&w[0], &w[1]);
            check(m1 < m0 || (m1 == m0 && e1 < e0), || format!("{f}: {rows:?} is not decreasing"))?;
        }
        check(d.seq.len() + 1 == rows.len(), || format!("{f}: {} centers for {} rows", d.seq.len(), rows.len()))?;
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    for (f, expected) in [("y^2 - x^3", "3/2"), ("y^2 - 2*x*y + x^2 - x^5", "5/2"), ("y^2 - x^2", "1")] {
        let poly = parse_poly(f, Q).unwrap();
        let start = Instant::now();
        let e = first_char_exponent(&poly).map_err(|e| format!("{f}: {e}"))?;
        let took = start.elapsed();
        let oracle = to_value(&tschirnhaus_exponent(&Dense::from_lib(&poly)));
        let expected: Value = expected.parse().unwrap();
        check(oracle == expected, || format!("{f}: oracle gives {oracle}, expected {expected}"))?;
        check(e == expected, || format!("{f}: got {e}, expected {expected}"))?;
        check(took < Duration::from_secs(1), || format!("{f}: took {took:?}"))?;
    }
    Ok(())
}

fn random_seq(r: &mut ChaCha8Rng) -> BlowupSeq {
    let len = r.gen_range(0..=5);
    let steps = (0..len)
        .map(|_| if r.gen_bool(0.3) { BlowupStep::Y } else { BlowupStep::X(Q.int(r.gen_range(-2..=2))) })
        .collect();
    BlowupSeq::new(Q, steps).unwrap()
}

fn random_rational(r: &mut ChaCha8Rng, lo: &BigRational, hi: &BigRational) -> BigRational {
    let den = r.gen_range(1..=12i64);
    let k = r.gen_range(0..=den);
    lo + (hi - lo) * BigRational::new(BigInt::from(k), BigInt::from(den))
}

/// Right end of the parameter range sampled on a segment; infinite ends are cut at `r_n + 3`.
fn sample_end(c: &MacLaneChain) -> BigRational {
    match segment_end(c) {
        Value::Finite(h) => h,
        Value::Infinite => c.ratio(c.len()) + BigRational::from_integer(3.into()),
    }
}

fn random_chain(r: &mut ChaCha8Rng, pool: &[MacLaneChain]) -> MacLaneChain {
    match r.gen_range(0..3) {
        0 => pool[r.gen_range(0..pool.len())].clone(),
        1 => blowups_to_chain(&random_seq(r)).unwrap(),
        _ => {
            let base = blowups_to_chain(&random_seq(r)).unwrap();
            let t = random_rational(r, &BigRational::one(), &sample_end(&base));
            segment_point(&base, &Value::Finite(t)).unwrap()
        }
    }
}

fn criterion_6() -> Outcome {
    let bundled = bundled_chains();
    for (name, c) in &bundled {
        let root = MacLaneChain::root(c.field());
        check(leq(&root, c).unwrap(), || format!("root is not below {name}"))?;
    }
    let pool: Vec<MacLaneChain> = bundled.iter().map(|(_, c)| c.clone()).filter(|c| c.field() == Q).collect();
    let mut r = rng(6);
    let one = BigRational::one();
    for _ in 0..100 {
        let a = random_chain(&mut r, &pool);
        let b = random_chain(&mut r, &pool);
        let m = infimum(&a, &b).map_err(|e| format!("inf({a}, {b}): {e}"))?;
        check(leq(&m, &a).unwrap() && leq(&m, &b).unwrap(), || format!("inf({a}, {b}) = {m} is not a lower bound"))?;
        let mut found = 0;
        let mut tries = 0;
        while found < 50 {
            tries += 1;
            check(tries <= 5000, || format!("only {found} common lower bounds of {a} and {b} sampled"))?;
            let (c, other) = if r.gen_bool(0.5) { (&a, &b) } else { (&b, &a) };
            let t = if r.gen_bool(0.25) { one.clone() } else { random_rational(&mut r, &one, &sample_end(c)) };
            let l = segment_point(c, &Value::Finite(t)).unwrap();
            if !leq(&l, other).unwrap() {
                continue;
            }
            found += 1;
            check(leq(&l, &m).unwrap(), || format!("lower bound {l} of {a}, {b} is not below {m}"))?;
        }
        for c in [&a, &b] {
            segment_monotone(&mut r, c)?;
        }
    }
    for (_, c) in &bundled {
        segment_monotone(&mut r, c)?;
    }
    Ok(())
}

fn segment_monotone(r: &mut ChaCha8Rng, c: &MacLaneChain) -> Outcome {
    let one = BigRational::one();
    let start = segment_point(c, &Value::Finite(one.clone())).unwrap();
    let root = MacLaneChain::root(c.field());
    check(leq(&start, &root).unwrap() && leq(&root, &start).unwrap(), || format!("{c}: t = 1 gives {start}"))?;
    let stop = segment_point(c, &segment_end(c)).unwrap();
    check(leq(&stop, c).unwrap() && leq(c, &stop).unwrap(), || format!("{c}: right end gives {stop}"))?;
    let hi = sample_end(c);
    if hi == one {
        return Ok(());
    }
    let mut ts: Vec<BigRational> = Vec::new();
    while ts.len() < 20 {
        let t = random_rational(r, &one, &hi);
        if !ts.contains(&t) {
            ts.push(t);
        }
    }
    ts.sort();
    let pts: Vec<MacLaneChain> = ts.iter().map(|t| segment_point(c, &Value::Finite(t.clone())).unwrap()).collect();
    for (i, w) in pts.windows(2).enumerate() {
        let rel = valtree::tree::compare(&w[0], &w[1]).unwrap().relation;
        check(rel == Relation::Less, || format!("{c}: t = {} and {} give {rel}", ts[i], ts[i + 1]))?;
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    let mut produced: Vec<MacLaneChain> = bundled_chains().into_iter().map(|(_, c)| c).collect();
    for (_, s) in bundled_sequences() {
        produced.push(blowups_to_chain(&s).unwrap());
    }
    let mut r = rng(7);
    for _ in 0..100 {
        let c = blowups_to_chain(&random_seq(&mut r)).unwrap();
        let t = random_rational(&mut r, &BigRational::one(), &sample_end(&c));
        produced.push(segment_point(&c, &Value::Finite(t)).unwrap());
        produced.push(c);
    }
    for c in &produced {
        let v = c.validate();
        check(v.is_empty(), || format!("{c} rejected: {v:?}"))?;
    }
    let expected = [
        ("bad_degree", Rule::BadDegree),
        ("beta_below_one", Rule::NotNormalized),
        ("non_increasing_beta", Rule::ValueNotIncreased),
        ("non_monic", Rule::NonMonic),
        ("omega", Rule::OmegaInconsistent),
        ("shape", Rule::ShapeViolation),
    ];
    let fixtures = violation_fixtures();
    check(fixtures.len() == expected.len(), || format!("found {} fixtures", fixtures.len()))?;
    for ((name, text), (want_name, rule)) in fixtures.iter().zip(expected) {
        check(name == want_name, || format!("unexpected fixture {name}"))?;
        let c = chain_from_json_unchecked(text).map_err(|e| format!("{name}: {e}"))?;
        let v = c.validate();
        check(v.iter().any(|x| x.rule == rule), || format!("{name}: expected {rule}, got {v:?}"))?;
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let chains = bundled_chains();
    let mut r = rng(8);
    for k in 0..200 {
        let (name, chain) = &chains[k % chains.len()];
        let oc = OracleChain::from_lib(chain);
        let field = chain.field();
        let mut p = random_for_chain(&mut r, &oc, 6, 10);
        let frame_deg = |d: &Dense| if chain.swap_xy() { d.swap() } else { d.clone() }.c.len();
        while frame_deg(&p) < 2 {
            p = random_for_chain(&mut r, &oc, 6, 10);
        }
        let lib = epsilon_data(chain, &p.to_lib(field)).map_err(|e| format!("{name}: {e}"))?;
        let (eps, set, b) = oc.epsilon(&p);
        let eps = to_value(&eps);
        check(lib.epsilon == eps && lib.attaining == set && lib.b == b, || {
            format!("{name}: P = {}: library {lib}, oracle epsilon={eps} I={set:?} b={b}", p.to_lib(field))
        })?;
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("valuation axioms", criterion_1),
        ("truncation ladder", criterion_2),
        ("blowup round trip", criterion_3),
        ("lexicographic descent", criterion_4),
        ("first characteristic exponent", criterion_5),
        ("tree axioms", criterion_6),
        ("key polynomial validation", criterion_7),
        ("epsilon data against brute force", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match run() {
            Ok(()) => println!("criterion {} ({name}): PASS in {:.1?}", i + 1, start.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL: {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
