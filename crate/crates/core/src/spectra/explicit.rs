use std::collections::BTreeSet;

use super::{PrimeSpace, SpecError};
use crate::band::{is_tract, Band, Inverse, Tractness};

/// Largest subset size searched exhaustively.
const MAX_EXHAUSTIVE: usize = 20;

/// Ideals listed element by element. Finite bands are searched exhaustively;
/// infinite tracts have {0} as their only prime.
#[derive(Debug, Clone)]
pub struct ExplicitSpec<B: Band> {
    pub band: B,
}

impl<B: Band> ExplicitSpec<B> {
    pub fn new(band: B) -> Self {
        ExplicitSpec { band }
    }

    fn is_m_ideal(&self, ideal: &BTreeSet<B::Elem>, all: &[B::Elem]) -> bool {
        ideal.contains(&self.band.zero())
            && !ideal.contains(&self.band.one())
            && ideal.iter().all(|a| all.iter().all(|b| ideal.contains(&self.band.mul(a, b))))
    }
}

/// B \ B^× for a finite band.
pub fn maximal_ideal<B: Band>(band: &B) -> Option<BTreeSet<B::Elem>> {
    let all = band.elements()?;
    Some(all.into_iter().filter(|a| !matches!(band.unit_inverse(a), Inverse::Unit(_))).collect())
}

impl<B: Band> PrimeSpace for ExplicitSpec<B> {
    type Elem = B::Elem;
    type Ideal = BTreeSet<B::Elem>;

    fn band_id(&self) -> String {
        self.band.id()
    }

    fn primes(&self) -> Result<Vec<Self::Ideal>, SpecError> {
        let Some(all) = self.band.elements() else {
            return match is_tract(&self.band) {
                Tractness::Yes => Ok(vec![BTreeSet::from([self.band.zero()])]),
                _ => Err(SpecError::Unsupported {
                    band: self.band.id(),
                    reason: "infinite band that is not a declared tract".into(),
                }),
            };
        };
        let zero = self.band.zero();
        let one = self.band.one();
        let free: Vec<&B::Elem> = all.iter().filter(|a| **a != zero && **a != one).collect();
        if free.len() > MAX_EXHAUSTIVE {
            return Err(SpecError::Unsupported {
                band: self.band.id(),
                reason: format!("{} elements exceed the exhaustive search limit", all.len()),
            });
        }
        let mut out = Vec::new();
        for mask in 0u64..(1 << free.len()) {
            let mut ideal = BTreeSet::from([zero.clone()]);
            ideal.extend((0..free.len()).filter(|i| mask >> i & 1 == 1).map(|i| free[i].clone()));
            if self.is_prime(&ideal) {
                out.push(ideal);
            }
        }
        out.sort_by_key(|p| p.len());
        Ok(out)
    }

    fn contains(&self, ideal: &Self::Ideal, a: &B::Elem) -> bool {
        ideal.contains(a)
    }

    fn is_prime(&self, ideal: &Self::Ideal) -> bool {
        let Some(all) = self.band.elements() else {
            // nonzero elements of a tract are units
            return is_tract(&self.band) == Tractness::Yes && ideal.len() == 1 && ideal.contains(&self.band.zero());
        };
        if !self.is_m_ideal(ideal, &all) {
            return false;
        }
        let complement: Vec<&B::Elem> = all.iter().filter(|a| !ideal.contains(a)).collect();
        complement.iter().all(|a| complement.iter().all(|b| !ideal.contains(&self.band.mul(a, b))))
    }

    fn is_subset(&self, a: &Self::Ideal, b: &Self::Ideal) -> bool {
        a.is_subset(b)
    }

    fn probes(&self) -> Vec<B::Elem> {
        self.band.elements().unwrap_or_else(|| vec![self.band.zero(), self.band.one()])
    }

    fn label(&self, ideal: &Self::Ideal) -> String {
        let items: Vec<String> = ideal.iter().map(ToString::to_string).collect();
        format!("{{{}}}", items.join(", "))
    }

    fn describe(&self, ideal: &Self::Ideal) -> serde_json::Value {
        serde_json::Value::Array(ideal.iter().map(|a| serde_json::Value::String(a.to_string())).collect())
    }
}
