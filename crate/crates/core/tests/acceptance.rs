//! End-to-end acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; the process fails if any does.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use band_kernel::algebra::{Embedding, MonomialModel, Presentation};
use band_kernel::arith::{Field, NonNegRational, Rational};
use band_kernel::band::{
    check_band_axioms, check_morphism, exhaustive_sample, neg_by_search, random_sample, seeded_rng, Band, FormalSum,
    SampleBand,
};
use band_kernel::limits::{check_functoriality, grid_rationals, sample_points, separate, Preset, Target};
use band_kernel::poly::Poly;
use band_kernel::spectra::{maximal_ideal, ExplicitSpec, FreeBand, FreeSpec, IntegerSpec, MonomialIdeal, PrimeSpace};
use band_kernel::tropical::{
    bend_null, forget_signs, is_real_trop_point, is_trop_point, real_trop_of_point, trop_curve_2d, trop_of_point,
};
use band_kernel::zoo::{
    sign_morphism, signed_valuation, trop_valuation, F1Pm, Integers, Krasner, PadicQ, Rationals, RealTropical,
    Residues, Sign, TadicQt, Triangle, TrivialQ, Tropical, ValuedField,
};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const SEED: u64 = 2024;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:.2?}, limit {limit:?}"))
}

fn q(n: i64) -> Rational {
    Rational::from(n)
}

fn axioms_exhaustive<B: Band>(b: &B) -> Result<(), String> {
    let sample = exhaustive_sample(b, 6).ok_or_else(|| format!("{} is not finite", b.id()))?;
    let r = check_band_axioms(b, &sample);
    ensure(r.pass, || format!("{}: {:?}", b.id(), r.witness))
}

fn axioms_sampled<B: SampleBand>(b: &B) -> Result<(), String> {
    let r = check_band_axioms(b, &random_sample(b, 1000, 6, SEED));
    ensure(r.pass, || format!("{}: {:?}", b.id(), r.witness))
}

fn band_axioms() -> Outcome {
    let start = Instant::now();
    axioms_exhaustive(&F1Pm)?;
    axioms_exhaustive(&Krasner)?;
    axioms_exhaustive(&Sign)?;
    axioms_sampled(&Tropical)?;
    axioms_sampled(&RealTropical)?;
    axioms_sampled(&Triangle::new(q(1)).unwrap())?;
    axioms_sampled(&Triangle::new(q(2)).unwrap())?;
    axioms_sampled(&Integers)?;
    axioms_sampled(&Residues::new(6).unwrap())?;
    axioms_sampled(&Rationals)?;
    within(start, Duration::from_secs(10))?;
    Ok(format!("10 bands in {:.2?}", start.elapsed()))
}

fn involutive<B: SampleBand>(b: &B, count: usize) -> Result<(), String> {
    let mut rng = seeded_rng(SEED);
    let elems: Vec<B::Elem> = match b.elements() {
        Some(all) => all,
        None => (0..count).map(|_| b.sample_elem(&mut rng)).collect(),
    };
    for a in &elems {
        let n = b.neg(a).map_err(|e| e.to_string())?;
        let nn = b.neg(&n).map_err(|e| e.to_string())?;
        ensure(nn == *a, || format!("{}: neg(neg({a})) = {nn}", b.id()))?;
        ensure(b.is_null(&b.sum([a.clone(), n.clone()])), || format!("{}: {a} + {n} is not null", b.id()))?;
        if b.is_finite() {
            let found = neg_by_search(b, a).map_err(|e| e.to_string())?;
            ensure(found == n, || format!("{}: search found {found}, neg gave {n}", b.id()))?;
        }
    }
    Ok(())
}

fn neg_laws() -> Outcome {
    let mut rng = seeded_rng(SEED);
    for _ in 0..200 {
        let a = Tropical.sample_elem(&mut rng);
        let n = Tropical.neg(&a).map_err(|e| e.to_string())?;
        ensure(n == a, || format!("neg({a}) = {n} in trop"))?;
    }
    involutive(&F1Pm, 0)?;
    involutive(&Krasner, 0)?;
    involutive(&Sign, 0)?;
    involutive(&Residues::new(6).unwrap(), 0)?;
    involutive(&Residues::new(12).unwrap(), 0)?;
    involutive(&Tropical, 200)?;
    involutive(&RealTropical, 200)?;
    involutive(&Triangle::new(q(2)).unwrap(), 200)?;
    involutive(&Integers, 200)?;
    involutive(&Rationals, 200)?;
    Ok("trop self-inverse on 200 samples, involution on 10 bands".into())
}

/// Null sums a_1 + … + a_k − (a_1 + … + a_k) with 1 ≤ k ≤ 5.
fn ring_null_sums<V: ValuedField>(vf: &V, count: usize) -> Vec<FormalSum<V::F>> {
    let mut rng = seeded_rng(SEED);
    let b = vf.bandified();
    (0..count)
        .map(|_| {
            let k = rng.gen_range(1..=5);
            let mut xs: Vec<V::F> = (0..k).map(|_| vf.sample_elem(&mut rng)).collect();
            let total = xs.iter().fold(V::F::zero(), |acc, x| acc.add(x));
            xs.push(total.neg());
            b.sum(xs)
        })
        .collect()
}

fn pairs<V: ValuedField>(vf: &V, count: usize) -> Vec<(V::F, V::F)> {
    let mut rng = seeded_rng(SEED + 1);
    (0..count).map(|_| (vf.sample_elem(&mut rng), vf.sample_elem(&mut rng))).collect()
}

fn morphisms_for<V: ValuedField>(vf: V) -> Result<usize, String> {
    let nulls = ring_null_sums(&vf, 500);
    let prs = pairs(&vf, 200);
    let mut checked = 0;
    let mut run = |r: Result<_, _>| -> Result<(), String> {
        let r: band_kernel::report::CheckReport = r.map_err(|e: band_kernel::band::BandError| e.to_string())?;
        checked += 1;
        ensure(r.pass, || format!("{}: {:?}", r.subject, r.witness))
    };
    run(check_morphism(&trop_valuation(&vf), &nulls, &prs, Some(SEED)))?;
    if vf.is_ordered() {
        let sign = sign_morphism(&vf).map_err(|e| e.to_string())?;
        run(check_morphism(&sign, &nulls, &prs, Some(SEED)))?;
        let compat: Vec<V::F> = prs.iter().take(60).map(|(a, _)| a.clone()).collect();
        let sv = signed_valuation(&vf, &compat).map_err(|e| e.to_string())?;
        run(check_morphism(&sv, &nulls, &prs, Some(SEED)))?;
    } else {
        ensure(sign_morphism(&vf).is_err(), || format!("{} accepted a sign map", vf.id()))?;
    }
    Ok(checked)
}

fn morphisms() -> Outcome {
    let n = morphisms_for(TrivialQ)? + morphisms_for(PadicQ::new(3).unwrap())? + morphisms_for(TadicQt)?;
    Ok(format!("{n} morphisms on 500 null sums each"))
}

fn unique_maximal<B: Band>(b: B) -> Result<(), String> {
    let id = b.id();
    let m = maximal_ideal(&b).ok_or_else(|| format!("{id} is not finite"))?;
    let spec = ExplicitSpec::new(b);
    let primes = spec.primes().map_err(|e| e.to_string())?;
    let maximal: Vec<_> = primes.iter().filter(|p| primes.iter().all(|r| !p.is_subset(r) || *p == r)).collect();
    ensure(maximal.len() == 1 && *maximal[0] == m, || format!("{id}: maximal primes {maximal:?}, expected {m:?}"))
}

fn spectra() -> Outcome {
    ensure(ExplicitSpec::new(Krasner).primes().unwrap() == vec![BTreeSet::from([0u8])], || "Spec K".into())?;
    ensure(ExplicitSpec::new(Sign).primes().unwrap() == vec![BTreeSet::from([0i8])], || "Spec S".into())?;

    let free = FreeSpec { band: FreeBand::new(F1Pm, vec!["x".into(), "y".into()]) };
    let got: BTreeSet<MonomialIdeal> = free.primes().map_err(|e| e.to_string())?.into_iter().collect();
    let want: BTreeSet<MonomialIdeal> =
        [vec![], vec![0], vec![1], vec![0, 1]].into_iter().map(|vs| MonomialIdeal::variables(2, vs)).collect();
    ensure(got == want, || format!("F1pm[x,y]: {got:?}"))?;

    let z = IntegerSpec { bound: 5 }.primes().map_err(|e| e.to_string())?;
    ensure(z.len() == 8, || format!("Z: {} points", z.len()))?;

    unique_maximal(F1Pm)?;
    unique_maximal(Krasner)?;
    unique_maximal(Sign)?;
    for n in [2, 4, 6, 8, 9, 12, 20] {
        unique_maximal(Residues::new(n).unwrap())?;
    }
    Ok("K, S, F1pm[x,y], Z(5) and 10 finite bands".into())
}

/// Seeded points (x, −1 − x) of V(x + y + 1).
fn line_points<V: ValuedField>(vf: &V, count: usize, seed: u64) -> Vec<Vec<V::F>> {
    let mut rng = seeded_rng(seed);
    (0..count)
        .map(|_| {
            let x = vf.sample_elem(&mut rng);
            let y = V::F::one().add(&x).neg();
            vec![x, y]
        })
        .collect()
}

fn kapranov_for<V: ValuedField>(vf: V) -> Result<usize, String> {
    let p = Presentation::parse(vf.clone(), &["x", "y"], &["x + y + 1"]).map_err(|e| e.to_string())?;
    let m = MonomialModel::new(Embedding::canonical(&p));
    let mut checked = 0;
    for pt in line_points(&vf, 300, SEED) {
        let w = trop_of_point(&m, &pt).map_err(|e| e.to_string())?;
        ensure(is_trop_point(&m, &w).unwrap(), || format!("{}: {w:?} not in the bend locus", vf.id()))?;
        checked += 1;
        if vf.is_ordered() {
            let r = real_trop_of_point(&m, &pt).map_err(|e| e.to_string())?;
            ensure(is_real_trop_point(&m, &r).unwrap(), || format!("{}: {r:?} not real-null", vf.id()))?;
            checked += 1;
        }
    }
    Ok(checked)
}

fn kapranov() -> Outcome {
    let n = kapranov_for(TrivialQ)?
        + kapranov_for(PadicQ::new(2).unwrap())?
        + kapranov_for(PadicQ::new(3).unwrap())?
        + kapranov_for(PadicQ::new(5).unwrap())?
        + kapranov_for(TadicQt)?;
    Ok(format!("{n} images, 0 failures"))
}

/// Brute force: evaluate every term with plain rational arithmetic, take the
/// largest value and count how often it occurs.
fn count_maxima<V: ValuedField>(vf: &V, f: &Poly<V::F>, w: &[Rational]) -> bool {
    let vals: Vec<Rational> = f
        .terms()
        .map(|(e, c)| {
            let mut v = vf.abs(c).into_inner();
            for (k, x) in e.iter().zip(w) {
                for _ in 0..*k {
                    v = &v * x;
                }
            }
            v
        })
        .collect();
    let Some(top) = vals.iter().max() else { return true };
    top.is_zero() || vals.iter().filter(|v| *v == top).count() >= 2
}

fn oracle_for<V: ValuedField>(vf: V, cases: usize, seed: u64) -> Result<(usize, usize), String> {
    let mut rng = seeded_rng(seed);
    let coords = [q(0), Rational::new(1, 3).unwrap(), Rational::new(1, 2).unwrap(), q(1), q(2), q(3), q(4)];
    let mut nulls = 0;
    for _ in 0..cases {
        let n = rng.gen_range(1..=3);
        let terms = (0..rng.gen_range(1..=5))
            .map(|_| {
                let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
                (e, vf.sample_elem(&mut rng))
            })
            .collect::<Vec<_>>();
        let f = Poly::from_terms(n, terms);
        // small coordinate alphabet so ties are common
        let w: Vec<Rational> = (0..n).map(|_| coords[rng.gen_range(0..coords.len())].clone()).collect();
        let wn: Vec<NonNegRational> = w.iter().map(|x| NonNegRational::new(x.clone()).unwrap()).collect();
        let got = bend_null(&vf, &f, &wn);
        let want = count_maxima(&vf, &f, &w);
        ensure(got == want, || format!("{}: f = {f:?}, w = {w:?}: {got} vs {want}", vf.id()))?;
        nulls += usize::from(got);
    }
    Ok((cases, nulls))
}

fn oracle() -> Outcome {
    let (a, na) = oracle_for(TrivialQ, 500, SEED)?;
    let (b, nb) = oracle_for(PadicQ::new(3).unwrap(), 500, SEED + 1)?;
    let (c, nc) = oracle_for(TadicQt, 500, SEED + 2)?;
    Ok(format!("{} evaluations ({} null), exact agreement", a + b + c, na + nb + nc))
}

fn tropical_line() -> Outcome {
    let start = Instant::now();
    let p = Presentation::affine(TrivialQ, &["x", "y"]).unwrap();
    let c = trop_curve_2d(&TrivialQ, &p.poly("x + y + 1").unwrap()).map_err(|e| e.to_string())?;
    ensure(c.vertices == vec![[q(0), q(0)]], || format!("vertices {:?}", c.vertices))?;
    let dirs: BTreeSet<[i64; 2]> = c.rays.iter().map(|r| r.direction).collect();
    ensure(c.rays.len() == 3 && dirs == BTreeSet::from([[1, 1], [-1, 0], [0, -1]]), || format!("rays {dirs:?}"))?;
    ensure(c.edges.is_empty() && c.lines.is_empty(), || "unexpected cells".into())?;

    let p = Presentation::affine(TadicQt, &["x", "y"]).unwrap();
    let c = trop_curve_2d(&TadicQt, &p.poly("x + y + t").unwrap()).map_err(|e| e.to_string())?;
    ensure(c.vertices == vec![[q(-1), q(-1)]], || format!("x + y + t: vertices {:?}", c.vertices))?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("(0,0) and (-1,-1) in {:.2?}", start.elapsed()))
}

fn functoriality_for<V: ValuedField>(vf: V) -> Result<usize, String> {
    let d = Preset::Line.diagram(vf.clone()).map_err(|e| e.to_string())?;
    ensure(d.nodes().len() == 3, || format!("{} nodes", d.nodes().len()))?;
    ensure(!d.compositions().is_empty(), || "no composable pair recorded".into())?;
    let pts = sample_points(Preset::Line, &vf, 100, SEED);
    let mut targets = vec![Target::Trop];
    if vf.is_ordered() {
        targets.push(Target::RealTrop);
    }
    for t in &targets {
        let r = check_functoriality(&d, &pts, *t);
        ensure(r.pass, || format!("{} {}: {:?}", vf.id(), r.check, r.witness))?;
    }
    Ok(targets.len())
}

fn functoriality() -> Outcome {
    let n = functoriality_for(TrivialQ)? + functoriality_for(PadicQ::new(3).unwrap())?;
    Ok(format!("{n} checks on 100 points, compositions coherent"))
}

fn separation_for<V: ValuedField<F = Rational>>(vf: V) -> Result<usize, String> {
    let pres = Presentation::affine(vf, &["t"]).unwrap();
    let iota0 = Embedding::canonical(&pres);
    let grid = grid_rationals(5);
    let mut n = 0;
    for a in &grid {
        for b in &grid {
            if a == b {
                continue;
            }
            let s = separate(std::slice::from_ref(a), std::slice::from_ref(b), &iota0, &[], 3)
                .map_err(|e| format!("{}: {a} vs {b}: {e}", iota0.field().id()))?;
            ensure(s.image_p != s.image_q, || format!("{a} vs {b}: images agree"))?;
            n += 1;
        }
    }
    Ok(n)
}

fn separation() -> Outcome {
    let start = Instant::now();
    let n = separation_for(TrivialQ)? + separation_for(PadicQ::new(3).unwrap())?;
    let pres = Presentation::affine(TrivialQ, &["t"]).unwrap();
    let s = separate(&[q(1)], &[q(-1)], &Embedding::canonical(&pres), &[], 3).map_err(|e| e.to_string())?;
    ensure(s.embedding.describe() == "(t, t + 1)", || format!("P = 1, Q = -1 gave {}", s.embedding.describe()))?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("{n} ordered pairs within depth 3 in {:.2?}", start.elapsed()))
}

fn forgetting_for<V: ValuedField>(vf: V, count: usize) -> Result<usize, String> {
    let p = Presentation::parse(vf.clone(), &["x", "y"], &["x + y + 1"]).unwrap();
    let m = MonomialModel::new(Embedding::canonical(&p));
    for pt in line_points(&vf, count, SEED + 7) {
        let r = real_trop_of_point(&m, &pt).map_err(|e| e.to_string())?;
        ensure(is_real_trop_point(&m, &r).unwrap(), || format!("{r:?} does not pass"))?;
        let w = forget_signs(&r);
        ensure(is_trop_point(&m, &w).unwrap(), || format!("{}: |{r:?}| = {w:?} fails", vf.id()))?;
    }
    Ok(count)
}

fn forgetting() -> Outcome {
    let mut n = forgetting_for(TrivialQ, 150)? + forgetting_for(TadicQt, 150)?;
    // signed candidates on a grid that happen to pass
    let p = Presentation::parse(TrivialQ, &["x", "y"], &["x - 2y + 1"]).unwrap();
    let m = MonomialModel::new(Embedding::canonical(&p));
    let vals: Vec<Rational> = [-2, -1, 0, 1, 2].into_iter().map(q).collect();
    for x in &vals {
        for y in &vals {
            let r = vec![x.clone(), y.clone()];
            if is_real_trop_point(&m, &r).unwrap() {
                ensure(is_trop_point(&m, &forget_signs(&r)).unwrap(), || format!("{r:?}"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} signed points, 0 failures"))
}

fn run_cli(args: &[&str]) -> Result<(Vec<u8>, Vec<u8>), String> {
    let dir = std::env::temp_dir().join(format!("band-kernel-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let json = dir.join("out.json");
    let out = Command::new(env!("CARGO_BIN_EXE_band-kernel"))
        .args(["--seed", "11", "--json"])
        .arg(&json)
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || format!("{args:?} exited with {:?}", out.status.code()))?;
    let file = std::fs::read(&json).map_err(|e| e.to_string())?;
    let _ = std::fs::remove_dir_all(&dir);
    Ok((out.stdout, file))
}

fn determinism() -> Outcome {
    let commands: [&[&str]; 5] = [
        &["axioms", "--band", "trop", "--samples", "200"],
        &["morphism", "--name", "trop-valuation", "--field", "field:Q-padic:3", "--samples", "100"],
        &["spec", "--band", "ring:Z/6"],
        &["limit-demo", "--preset", "line", "--points", "20"],
        &["trop-curve", "--field", "field:Qt-tadic", "--poly", "t*x^2 + x*y + t*y^2 + x + y + t"],
    ];
    for args in commands {
        let first = run_cli(args)?;
        let second = run_cli(args)?;
        ensure(first == second, || format!("{args:?} differs between runs"))?;
        let v: serde_json::Value = serde_json::from_slice(&first.1).map_err(|e| e.to_string())?;
        ensure(v["schema"] == "band-kernel/1", || format!("{args:?}: schema {}", v["schema"]))?;
    }
    Ok(format!("{} commands byte-identical", commands.len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("band axioms", band_axioms),
        ("neg laws", neg_laws),
        ("morphisms", morphisms),
        ("spectra", spectra),
        ("kapranov containment", kapranov),
        ("bend oracle", oracle),
        ("tropical line", tropical_line),
        ("functoriality", functoriality),
        ("separation", separation),
        ("real-tropical forgetting", forgetting),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
