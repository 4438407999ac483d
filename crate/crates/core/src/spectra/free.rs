use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{PrimeSpace, SpecError};
use crate::band::{is_tract, Band, BandError, FormalSum, Inverse, SampleBand, Tractness};

/// c·x^e in a free band; the zero monomial has c = 0 and e = 0.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial<E> {
    pub coeff: E,
    pub exps: Vec<u32>,
}

impl<E: fmt::Display> fmt::Display for Monomial<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)?;
        for (i, k) in self.exps.iter().enumerate() {
            match k {
                0 => {}
                1 => write!(f, "*x{}", i + 1)?,
                _ => write!(f, "*x{}^{k}", i + 1)?,
            }
        }
        Ok(())
    }
}

/// The free B-band B[x_1, …, x_n]. A sum is null when, for each exponent
/// vector, the coefficients carrying it form a null sum of B.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeBand<B> {
    base: B,
    names: Vec<String>,
}

impl<B: Band> FreeBand<B> {
    pub fn new(base: B, names: Vec<String>) -> Self {
        FreeBand { base, names }
    }

    pub fn base(&self) -> &B {
        &self.base
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn monomial(&self, coeff: B::Elem, exps: Vec<u32>) -> Monomial<B::Elem> {
        assert_eq!(exps.len(), self.nvars(), "exponent vector length");
        if coeff == self.base.zero() {
            Monomial { coeff, exps: vec![0; self.nvars()] }
        } else {
            Monomial { coeff, exps }
        }
    }

    pub fn var(&self, i: usize) -> Monomial<B::Elem> {
        let mut e = vec![0; self.nvars()];
        e[i] = 1;
        Monomial { coeff: self.base.one(), exps: e }
    }

    pub fn constant(&self, c: B::Elem) -> Monomial<B::Elem> {
        self.monomial(c, vec![0; self.nvars()])
    }

    pub fn show(&self, m: &Monomial<B::Elem>) -> String {
        let vars: Vec<String> = m
            .exps
            .iter()
            .zip(&self.names)
            .filter(|(k, _)| **k > 0)
            .map(|(k, n)| if *k == 1 { n.clone() } else { format!("{n}^{k}") })
            .collect();
        if vars.is_empty() {
            m.coeff.to_string()
        } else if m.coeff == self.base.one() {
            vars.join("*")
        } else {
            format!("{}*{}", m.coeff, vars.join("*"))
        }
    }
}

impl<B: Band> Band for FreeBand<B> {
    type Elem = Monomial<B::Elem>;

    fn id(&self) -> String {
        format!("{}[{}]", self.base.id(), self.names.join(","))
    }
    fn zero(&self) -> Self::Elem {
        self.constant(self.base.zero())
    }
    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let exps = a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect();
        self.monomial(self.base.mul(&a.coeff, &b.coeff), exps)
    }
    fn is_null(&self, sum: &FormalSum<Self::Elem>) -> bool {
        let mut groups: BTreeMap<&[u32], Vec<B::Elem>> = BTreeMap::new();
        for m in sum.entries() {
            groups.entry(&m.exps).or_default().push(m.coeff.clone());
        }
        let zero = self.base.zero();
        groups.into_values().all(|cs| self.base.is_null(&FormalSum::new(cs, &zero)))
    }
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        if self.names.is_empty() {
            self.base.elements().map(|es| es.into_iter().map(|c| self.constant(c)).collect())
        } else {
            None
        }
    }
    fn neg(&self, a: &Self::Elem) -> Result<Self::Elem, BandError> {
        Ok(self.monomial(self.base.neg(&a.coeff)?, a.exps.clone()))
    }
    fn unit_inverse(&self, a: &Self::Elem) -> Inverse<Self::Elem> {
        if a.exps.iter().any(|&k| k > 0) {
            return Inverse::NonUnit;
        }
        match self.base.unit_inverse(&a.coeff) {
            Inverse::Unit(c) => Inverse::Unit(self.constant(c)),
            Inverse::NonUnit => Inverse::NonUnit,
            Inverse::Unknown => Inverse::Unknown,
        }
    }
    fn declares_tract(&self) -> Option<bool> {
        if self.names.is_empty() {
            self.base.declares_tract()
        } else {
            Some(false)
        }
    }
    fn is_cancellative(&self) -> bool {
        self.base.is_cancellative()
    }
    fn divide(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        if *a == self.zero() {
            return (*b != self.zero()).then(|| self.zero());
        }
        let exps = a.exps.iter().zip(&b.exps).map(|(x, y)| x.checked_sub(*y)).collect::<Option<Vec<u32>>>()?;
        Some(self.monomial(self.base.divide(&a.coeff, &b.coeff)?, exps))
    }
}

impl<B: SampleBand> SampleBand for FreeBand<B> {
    fn sample_elem(&self, rng: &mut ChaCha8Rng) -> Self::Elem {
        let c = self.base.sample_elem(rng);
        let exps = (0..self.nvars()).map(|_| rng.gen_range(0..3)).collect();
        self.monomial(c, exps)
    }

    fn sample_null(&self, rng: &mut ChaCha8Rng, max_len: usize) -> FormalSum<Self::Elem> {
        let s = self.base.sample_null(rng, max_len);
        let exps: Vec<u32> = (0..self.nvars()).map(|_| rng.gen_range(0..3)).collect();
        self.sum(s.into_entries().into_iter().map(|c| self.monomial(c, exps.clone())))
    }
}

/// The m-ideal of a free band over a tract generated by the monomials x^g,
/// g in `gens`, together with 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonomialIdeal {
    pub gens: BTreeSet<Vec<u32>>,
}

impl MonomialIdeal {
    /// ⟨x_j : j ∈ vars⟩ in n variables.
    pub fn variables(n: usize, vars: impl IntoIterator<Item = usize>) -> Self {
        MonomialIdeal { gens: vars.into_iter().map(|j| unit_vector(n, j)).collect() }
    }

    fn divides(g: &[u32], e: &[u32]) -> bool {
        g.iter().zip(e).all(|(a, b)| a <= b)
    }

    pub fn contains_exps(&self, e: &[u32]) -> bool {
        self.gens.iter().any(|g| Self::divides(g, e))
    }
}

fn unit_vector(n: usize, j: usize) -> Vec<u32> {
    let mut e = vec![0; n];
    e[j] = 1;
    e
}

/// Spec of a free band over a tract.
#[derive(Debug, Clone)]
pub struct FreeSpec<B> {
    pub band: FreeBand<B>,
}

impl<B: Band> PrimeSpace for FreeSpec<B> {
    type Elem = Monomial<B::Elem>;
    type Ideal = MonomialIdeal;

    fn band_id(&self) -> String {
        self.band.id()
    }

    fn primes(&self) -> Result<Vec<MonomialIdeal>, SpecError> {
        if is_tract(self.band.base()) != Tractness::Yes {
            return Err(SpecError::Unsupported {
                band: self.band.id(),
                reason: "coefficient band is not a tract".into(),
            });
        }
        let n = self.band.nvars();
        if n > 16 {
            return Err(SpecError::Unsupported { band: self.band.id(), reason: "too many variables".into() });
        }
        let mut out: Vec<MonomialIdeal> =
            (0u32..(1 << n)).map(|mask| MonomialIdeal::variables(n, (0..n).filter(|j| mask >> j & 1 == 1))).collect();
        out.sort_by(|a, b| a.gens.len().cmp(&b.gens.len()).then_with(|| b.cmp(a)));
        Ok(out)
    }

    fn contains(&self, ideal: &MonomialIdeal, a: &Self::Elem) -> bool {
        a.coeff == self.band.base().zero() || ideal.contains_exps(&a.exps)
    }

    fn is_prime(&self, ideal: &MonomialIdeal) -> bool {
        let n = self.band.nvars();
        if ideal.gens.iter().any(|g| g.len() != n || g.iter().all(|&k| k == 0)) {
            return false;
        }
        ideal.gens.iter().all(|g| (0..n).any(|j| g[j] > 0 && ideal.contains_exps(&unit_vector(n, j))))
    }

    fn is_subset(&self, a: &MonomialIdeal, b: &MonomialIdeal) -> bool {
        a.gens.iter().all(|g| b.contains_exps(g))
    }

    /// The squarefree monomials with coefficient 1, and 0.
    fn probes(&self) -> Vec<Self::Elem> {
        let n = self.band.nvars();
        let mut out = vec![self.band.zero()];
        out.extend(
            (0u32..(1 << n.min(12)))
                .map(|mask| self.band.monomial(self.band.base().one(), (0..n).map(|j| mask >> j & 1).collect())),
        );
        out
    }

    fn label(&self, ideal: &MonomialIdeal) -> String {
        let parts: Vec<String> = ideal
            .gens
            .iter()
            .rev()
            .map(|g| self.band.show(&Monomial { coeff: self.band.base().one(), exps: g.clone() }))
            .collect();
        format!("⟨{}⟩", parts.join(", "))
    }

    fn describe(&self, ideal: &MonomialIdeal) -> serde_json::Value {
        let parts: Vec<String> = ideal
            .gens
            .iter()
            .rev()
            .map(|g| self.band.show(&Monomial { coeff: self.band.base().one(), exps: g.clone() }))
            .collect();
        serde_json::json!({ "generated_by": parts })
    }
}
