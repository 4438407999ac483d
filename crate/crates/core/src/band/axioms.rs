use rand_chacha::ChaCha8Rng;

use super::{enumerate_sums, fs_add, fs_scale, sample::seeded_rng, Band, FormalSum, Inverse, SampleBand};
use crate::report::CheckReport;

/// Elements and formal sums an axiom check runs over.
#[derive(Clone)]
pub struct AxiomSample<E> {
    pub elements: Vec<E>,
    pub sums: Vec<FormalSum<E>>,
    /// Elements are the whole band, sums every multiset up to the length bound.
    pub exhaustive: bool,
    pub seed: Option<u64>,
}

/// Every element and every sum of nonzero elements with at most `max_len` entries.
pub fn exhaustive_sample<B: Band>(band: &B, max_len: usize) -> Option<AxiomSample<B::Elem>> {
    let elements = band.elements()?;
    let zero = band.zero();
    let nonzero: Vec<_> = elements.iter().filter(|e| **e != zero).cloned().collect();
    Some(AxiomSample { sums: enumerate_sums(&nonzero, max_len), elements, exhaustive: true, seed: None })
}

/// `count` seeded elements, null sums and arbitrary sums.
pub fn random_sample<B: SampleBand>(band: &B, count: usize, max_len: usize, seed: u64) -> AxiomSample<B::Elem> {
    let mut rng: ChaCha8Rng = seeded_rng(seed);
    let mut elements = vec![band.zero(), band.one()];
    elements.extend((0..count).map(|_| band.sample_elem(&mut rng)));
    let mut sums = Vec::with_capacity(2 * count);
    for _ in 0..count {
        sums.push(band.sample_null(&mut rng, max_len));
        sums.push(band.sample_sum(&mut rng, max_len));
    }
    AxiomSample { elements, sums, exhaustive: false, seed: Some(seed) }
}

/// Checks the monoid laws, uniqueness of additive inverses, properness of the
/// null set and its closure under addition and scaling. Failures are reported
/// with the first witness found.
pub fn check_band_axioms<B: Band>(band: &B, sample: &AxiomSample<B::Elem>) -> CheckReport {
    let mut report = CheckReport::new("band-axioms", band.id(), sample.seed);
    report.note(if sample.exhaustive { "exhaustive" } else { "sampled" });
    let zero = band.zero();
    let one = band.one();
    let els = &sample.elements;

    if !band.is_null(&FormalSum::empty()) {
        report.fail("empty-sum-null", "the empty sum is not null");
    }
    let single_one = band.sum([one.clone()]);
    if band.is_null(&single_one) {
        report.fail("proper", format!("{single_one} is null"));
    }

    for (idx, a) in els.iter().enumerate() {
        report.checked += 1;
        if band.mul(&zero, a) != zero || band.mul(a, &zero) != zero {
            report.fail("absorbing-zero", format!("0·{a} ≠ 0"));
        }
        if band.mul(&one, a) != *a {
            report.fail("unit", format!("1·{a} ≠ {a}"));
        }
        if *a != zero && band.is_null(&band.sum([a.clone()])) {
            report.fail("singleton-null", format!("{{{a}}} is null but {a} ≠ 0"));
        }
        match band.neg(a) {
            Err(e) => report.fail("negation", e.to_string()),
            Ok(b) => {
                if !band.is_null(&band.sum([a.clone(), b.clone()])) {
                    report.fail("negation", format!("{{{a}, {b}}} is not null"));
                }
                match band.neg(&b) {
                    Ok(bb) if bb == *a => {}
                    Ok(bb) => report.fail("double-negation", format!("-(-{a}) = {bb}")),
                    Err(e) => report.fail("double-negation", e.to_string()),
                }
                // sampled runs compare against a sliding window of other samples
                let others: &[B::Elem] = if sample.exhaustive { els } else { &els[idx..(idx + 32).min(els.len())] };
                for c in others {
                    if *c != b && band.is_null(&band.sum([a.clone(), c.clone()])) {
                        report.fail("negation-unique", format!("both {{{a}, {b}}} and {{{a}, {c}}} are null"));
                    }
                }
            }
        }
    }

    let triples: Vec<(&B::Elem, &B::Elem, &B::Elem)> = if sample.exhaustive {
        els.iter().flat_map(|a| els.iter().flat_map(move |b| els.iter().map(move |c| (a, b, c)))).collect()
    } else {
        els.windows(3).map(|w| (&w[0], &w[1], &w[2])).collect()
    };
    for (a, b, c) in triples {
        report.checked += 1;
        if band.mul(a, b) != band.mul(b, a) {
            report.fail("commutative", format!("{a}·{b} ≠ {b}·{a}"));
        }
        if band.mul(&band.mul(a, b), c) != band.mul(a, &band.mul(b, c)) {
            report.fail("associative", format!("({a}·{b})·{c} ≠ {a}·({b}·{c})"));
        }
    }

    let nulls: Vec<&FormalSum<B::Elem>> = sample.sums.iter().filter(|s| band.is_null(s)).collect();
    if sample.exhaustive {
        for (i, s) in nulls.iter().enumerate() {
            for t in &nulls[i..] {
                report.checked += 1;
                let st = fs_add(band, s, t);
                if !band.is_null(&st) {
                    report.fail("null-closed-under-addition", format!("{s} + {t} = {st} is not null"));
                }
            }
            for b in els {
                let bs = fs_scale(band, b, s);
                if !band.is_null(&bs) {
                    report.fail("null-absorbs-scaling", format!("{b}·{s} = {bs} is not null"));
                }
            }
        }
    } else {
        for (i, s) in nulls.iter().enumerate() {
            report.checked += 1;
            let t = nulls[(i + 1) % nulls.len()];
            let st = fs_add(band, s, t);
            if !band.is_null(&st) {
                report.fail("null-closed-under-addition", format!("{s} + {t} = {st} is not null"));
            }
            let b = &els[i % els.len()];
            let bs = fs_scale(band, b, s);
            if !band.is_null(&bs) {
                report.fail("null-absorbs-scaling", format!("{b}·{s} = {bs} is not null"));
            }
        }
    }
    report.note(format!("{} null sums among {} sums", nulls.len(), sample.sums.len()));
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tractness {
    Yes,
    No,
    Unknown,
}

/// Whether every nonzero element is a unit. Infinite bands answer only by declaration.
pub fn is_tract<B: Band>(band: &B) -> Tractness {
    match band.elements() {
        Some(all) => {
            let zero = band.zero();
            let ok = all.iter().filter(|a| **a != zero).all(|a| matches!(band.unit_inverse(a), Inverse::Unit(_)));
            if ok {
                Tractness::Yes
            } else {
                Tractness::No
            }
        }
        None => match band.declares_tract() {
            Some(true) => Tractness::Yes,
            Some(false) => Tractness::No,
            None => Tractness::Unknown,
        },
    }
}
