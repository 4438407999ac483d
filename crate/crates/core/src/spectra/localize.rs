use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::SpecError;
use crate::band::{Band, BandError, BandMorphism, FormalSum, Inverse, DEFAULT_SUM_LENGTH};

/// The class of a/s in a localization.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Frac<E> {
    pub num: E,
    pub den: E,
}

impl<E: fmt::Display> fmt::Display for Frac<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// A multiplicative subset to invert.
#[derive(Debug, Clone)]
pub enum MultSet<E> {
    /// {1, h, h², …}
    Powers(E),
    /// An explicit finite set; must contain 1 and be closed under products.
    Explicit(Vec<E>),
    /// B \ p for a prime p of a finite band.
    Complement(BTreeSet<E>),
}

#[derive(Debug, Clone)]
enum Mode<E> {
    /// Finite band: all classes of B × S precomputed.
    Finite { s: Vec<E>, canon: BTreeMap<(E, E), Frac<E>>, classes: Vec<Frac<E>> },
    /// Cancellative band at the powers of a nonzero h.
    Powers { h: E },
}

/// S⁻¹B with null set generated by the sums Σ aᵢ/1, Σ aᵢ null in B.
///
/// A sum is null exactly when it can be written Σ cᵢ/u over one common
/// denominator u ∈ S with Σ cᵢ null in B. Finite bands search all
/// denominators and representatives, allowing up to `max_len` extra entries
/// that vanish in S⁻¹B; cancellative bands at powers of h clear denominators
/// and also try scaling by h^m for m up to `max_len`.
#[derive(Debug, Clone)]
pub struct Localization<B: Band> {
    base: B,
    mode: Mode<B::Elem>,
    max_len: usize,
    pub warning: Option<String>,
}

fn find<E: Ord + Clone>(parent: &mut BTreeMap<(E, E), (E, E)>, x: &(E, E)) -> (E, E) {
    let p = parent[x].clone();
    if p == *x {
        return p;
    }
    let root = find(parent, &p);
    parent.insert(x.clone(), root.clone());
    root
}

impl<B: Band> Localization<B> {
    fn finite(base: B, s: Vec<B::Elem>, max_len: usize) -> Result<Self, SpecError> {
        let all = base.elements().expect("finite band");
        let set: BTreeSet<B::Elem> = s.iter().cloned().collect();
        if !set.contains(&base.one()) || set.iter().any(|a| set.iter().any(|b| !set.contains(&base.mul(a, b)))) {
            return Err(SpecError::NotMultiplicative(format!("{{{}}}", join(&set))));
        }
        let s: Vec<B::Elem> = set.into_iter().collect();
        let pairs: Vec<(B::Elem, B::Elem)> =
            all.iter().flat_map(|a| s.iter().map(move |u| (a.clone(), u.clone()))).collect();
        let mut parent: BTreeMap<_, _> = pairs.iter().map(|p| (p.clone(), p.clone())).collect();
        for (i, (a, u)) in pairs.iter().enumerate() {
            for (b, v) in &pairs[i + 1..] {
                let related = s.iter().any(|t| base.mul(&base.mul(t, u), b) == base.mul(&base.mul(t, v), a));
                if related {
                    let (ra, rb) =
                        (find(&mut parent, &(a.clone(), u.clone())), find(&mut parent, &(b.clone(), v.clone())));
                    if ra != rb {
                        // prefer representatives a/1
                        let key = |p: &(B::Elem, B::Elem)| (p.1 != base.one(), p.1.clone(), p.0.clone());
                        let (lo, hi) = if key(&ra) < key(&rb) { (ra, rb) } else { (rb, ra) };
                        parent.insert(hi, lo);
                    }
                }
            }
        }
        let mut canon = BTreeMap::new();
        let mut classes = BTreeSet::new();
        for p in &pairs {
            let (num, den) = find(&mut parent, p);
            let f = Frac { num, den };
            classes.insert(f.clone());
            canon.insert(p.clone(), f);
        }
        let warning = s.contains(&base.zero()).then(|| "0 ∈ S: the localization is the trivial band".to_string());
        Ok(Localization {
            base,
            mode: Mode::Finite { s, canon, classes: classes.into_iter().collect() },
            max_len,
            warning,
        })
    }

    pub fn base(&self) -> &B {
        &self.base
    }

    pub fn is_trivial(&self) -> bool {
        self.warning.is_some()
    }

    /// The class of a/s.
    pub fn frac(&self, num: B::Elem, den: B::Elem) -> Frac<B::Elem> {
        match &self.mode {
            Mode::Finite { canon, .. } => {
                canon.get(&(num.clone(), den.clone())).cloned().unwrap_or_else(|| panic!("{num}/{den} is not in B × S"))
            }
            Mode::Powers { h } => {
                let zero = self.base.zero();
                let one = self.base.one();
                if num == zero {
                    return Frac { num: zero, den: one };
                }
                let (mut num, mut den) = (num, den);
                while den != one {
                    match (self.base.divide(&num, h), self.base.divide(&den, h)) {
                        (Some(n), Some(d)) => {
                            num = n;
                            den = d;
                        }
                        _ => break,
                    }
                }
                Frac { num, den }
            }
        }
    }

    pub fn embed(&self, a: &B::Elem) -> Frac<B::Elem> {
        self.frac(a.clone(), self.base.one())
    }

    /// Exponent k with den = h^k.
    fn power_of(&self, h: &B::Elem, den: &B::Elem) -> usize {
        let one = self.base.one();
        let mut d = den.clone();
        let mut k = 0;
        while d != one {
            d = self.base.divide(&d, h).expect("denominator is a power of h");
            k += 1;
        }
        k
    }

    fn pow(&self, h: &B::Elem, k: usize) -> B::Elem {
        (0..k).fold(self.base.one(), |acc, _| self.base.mul(&acc, h))
    }
}

fn join<E: fmt::Display>(items: impl IntoIterator<Item = E>) -> String {
    items.into_iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")
}

/// Tries every choice of one candidate per slot, then up to `pad` extra
/// entries drawn from `padding`, for a null sum of B.
fn search_null<B: Band>(
    base: &B,
    slots: &[Vec<B::Elem>],
    padding: &[B::Elem],
    pad: usize,
    chosen: &mut Vec<B::Elem>,
) -> bool {
    if chosen.len() < slots.len() {
        for c in &slots[chosen.len()] {
            chosen.push(c.clone());
            let found = search_null(base, slots, padding, pad, chosen);
            chosen.pop();
            if found {
                return true;
            }
        }
        return false;
    }
    if base.is_null(&base.sum(chosen.iter().cloned())) {
        return true;
    }
    if pad == 0 {
        return false;
    }
    pad_search(base, padding, 0, pad, chosen)
}

fn pad_search<B: Band>(base: &B, padding: &[B::Elem], from: usize, left: usize, chosen: &mut Vec<B::Elem>) -> bool {
    if left == 0 {
        return false;
    }
    for i in from..padding.len() {
        chosen.push(padding[i].clone());
        let hit = base.is_null(&base.sum(chosen.iter().cloned())) || pad_search(base, padding, i, left - 1, chosen);
        chosen.pop();
        if hit {
            return true;
        }
    }
    false
}

impl<B: Band> Band for Localization<B> {
    type Elem = Frac<B::Elem>;

    fn id(&self) -> String {
        match &self.mode {
            Mode::Finite { s, .. } => format!("{}[S^-1; S = {{{}}}]", self.base.id(), join(s)),
            Mode::Powers { h } => format!("{}[{h}^-1]", self.base.id()),
        }
    }
    fn zero(&self) -> Self::Elem {
        self.embed(&self.base.zero())
    }
    fn one(&self) -> Self::Elem {
        self.embed(&self.base.one())
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.frac(self.base.mul(&a.num, &b.num), self.base.mul(&a.den, &b.den))
    }
    fn is_null(&self, sum: &FormalSum<Self::Elem>) -> bool {
        if self.is_trivial() {
            return true;
        }
        match &self.mode {
            Mode::Finite { s, canon, .. } => {
                let all = self.base.elements().unwrap();
                let zero_class = self.zero();
                s.iter().any(|u| {
                    let slots: Vec<Vec<B::Elem>> = sum
                        .entries()
                        .iter()
                        .map(|x| all.iter().filter(|c| canon[&((*c).clone(), u.clone())] == *x).cloned().collect())
                        .collect();
                    if slots.iter().any(Vec::is_empty) {
                        return false;
                    }
                    let padding: Vec<B::Elem> = all
                        .iter()
                        .filter(|c| **c != self.base.zero() && canon[&((*c).clone(), u.clone())] == zero_class)
                        .cloned()
                        .collect();
                    let pad = self.max_len.saturating_sub(slots.len());
                    search_null(&self.base, &slots, &padding, pad, &mut Vec::new())
                })
            }
            Mode::Powers { h } => {
                let ks: Vec<usize> = sum.entries().iter().map(|x| self.power_of(h, &x.den)).collect();
                let top = ks.iter().copied().max().unwrap_or(0);
                (0..=self.max_len).any(|m| {
                    let cleared =
                        sum.entries().iter().zip(&ks).map(|(x, k)| self.base.mul(&x.num, &self.pow(h, top - k + m)));
                    self.base.is_null(&self.base.sum(cleared))
                })
            }
        }
    }
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        match &self.mode {
            Mode::Finite { classes, .. } => Some(classes.clone()),
            Mode::Powers { .. } => None,
        }
    }
    fn neg(&self, a: &Self::Elem) -> Result<Self::Elem, BandError> {
        Ok(self.frac(self.base.neg(&a.num)?, a.den.clone()))
    }
    fn unit_inverse(&self, a: &Self::Elem) -> Inverse<Self::Elem> {
        match &self.mode {
            Mode::Finite { classes, .. } => {
                let one = self.one();
                classes.iter().find(|c| self.mul(a, c) == one).cloned().map_or(Inverse::NonUnit, Inverse::Unit)
            }
            Mode::Powers { h } => {
                for j in 0..=self.max_len {
                    if let Some(q) = self.base.divide(&self.pow(h, j), &a.num) {
                        return Inverse::Unit(self.frac(self.base.mul(&q, &a.den), self.pow(h, j)));
                    }
                }
                Inverse::Unknown
            }
        }
    }
    fn is_cancellative(&self) -> bool {
        matches!(self.mode, Mode::Powers { .. }) && self.base.is_cancellative()
    }
    fn divide(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        match self.unit_inverse(b) {
            Inverse::Unit(inv) => Some(self.mul(a, &inv)),
            _ => None,
        }
    }
}

/// ι_S: B → S⁻¹B.
pub type LocalizationMap<B> = BandMorphism<B, Localization<B>>;

/// S⁻¹B together with ι_S: a ↦ a/1.
pub fn localize<B>(band: &B, s: MultSet<B::Elem>) -> Result<(Localization<B>, LocalizationMap<B>), SpecError>
where
    B: Band + Clone + Send + Sync + 'static,
{
    let loc = match s {
        MultSet::Powers(h) => {
            if band.elements().is_some() {
                let mut powers = vec![band.one()];
                loop {
                    let next = band.mul(powers.last().unwrap(), &h);
                    if powers.contains(&next) {
                        break;
                    }
                    powers.push(next);
                }
                Localization::finite(band.clone(), powers, DEFAULT_SUM_LENGTH)?
            } else if h == band.zero() {
                return Err(SpecError::Unsupported {
                    band: band.id(),
                    reason: "inverting 0 in an infinite band".into(),
                });
            } else if band.is_cancellative() {
                Localization {
                    base: band.clone(),
                    mode: Mode::Powers { h },
                    max_len: DEFAULT_SUM_LENGTH,
                    warning: None,
                }
            } else {
                return Err(SpecError::Unsupported {
                    band: band.id(),
                    reason: "localization of an infinite band needs cancellation".into(),
                });
            }
        }
        MultSet::Explicit(s) => {
            if band.elements().is_none() {
                return Err(SpecError::Unsupported {
                    band: band.id(),
                    reason: "explicit S needs a finite band".into(),
                });
            }
            Localization::finite(band.clone(), s, DEFAULT_SUM_LENGTH)?
        }
        MultSet::Complement(p) => {
            let Some(all) = band.elements() else {
                return Err(SpecError::Unsupported { band: band.id(), reason: "B \\ p needs a finite band".into() });
            };
            Localization::finite(
                band.clone(),
                all.into_iter().filter(|a| !p.contains(a)).collect(),
                DEFAULT_SUM_LENGTH,
            )?
        }
    };
    let target = loc.clone();
    let iota = BandMorphism::new("iota_S", band.clone(), loc.clone(), move |a: &B::Elem| target.embed(a));
    Ok((loc, iota))
}

/// 𝒪(U_h) = B[h⁻¹].
pub fn sections<B>(band: &B, h: B::Elem) -> Result<Localization<B>, SpecError>
where
    B: Band + Clone + Send + Sync + 'static,
{
    Ok(localize(band, MultSet::Powers(h))?.0)
}

/// The stalk B_p.
pub fn stalk<B>(band: &B, p: BTreeSet<B::Elem>) -> Result<Localization<B>, SpecError>
where
    B: Band + Clone + Send + Sync + 'static,
{
    Ok(localize(band, MultSet::Complement(p))?.0)
}
