//! Prime m-ideals, spectra with their principal-open basis, localization and
//! induced maps on spectra.
//!
//! An m-ideal is a proper subset I with B·I ⊆ I that contains 0, so that the
//! unique prime of a tract is {0}.

mod explicit;
mod free;
mod integers;
mod localize;

use std::fmt::{Debug, Display};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::band::{Band, BandError, BandMorphism};
use crate::report::SCHEMA;

pub use explicit::{maximal_ideal, ExplicitSpec};
pub use free::{FreeBand, FreeSpec, Monomial, MonomialIdeal};
pub use integers::{IntIdeal, IntegerSpec};
pub use localize::{localize, sections, stalk, Frac, Localization, LocalizationMap, MultSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("primes of {band} cannot be enumerated: {reason}")]
    Unsupported { band: String, reason: String },
    #[error("preimage of {prime} is not among the primes of the domain")]
    PreimageNotPrime { prime: String },
    #[error("continuity fails at h = {h}")]
    Discontinuous { h: String },
    #[error("{0} is not multiplicatively closed or misses 1")]
    NotMultiplicative(String),
    #[error(transparent)]
    Band(#[from] BandError),
}

/// A band whose prime m-ideals can be listed and tested.
pub trait PrimeSpace {
    type Elem: Clone + Debug + Display;
    type Ideal: Clone + PartialEq + Debug;

    fn band_id(&self) -> String;

    fn primes(&self) -> Result<Vec<Self::Ideal>, SpecError>;

    fn contains(&self, ideal: &Self::Ideal, a: &Self::Elem) -> bool;

    /// Proper m-ideal containing 0 whose complement is a multiplicative set.
    fn is_prime(&self, ideal: &Self::Ideal) -> bool;

    fn is_subset(&self, a: &Self::Ideal, b: &Self::Ideal) -> bool;

    /// Finite sample of elements h indexing the reported basic opens U_h.
    fn probes(&self) -> Vec<Self::Elem>;

    fn label(&self, ideal: &Self::Ideal) -> String;

    /// JSON form: an element array or a symbolic descriptor.
    fn describe(&self, ideal: &Self::Ideal) -> serde_json::Value;
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpecPoint {
    pub label: String,
    pub ideal: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicOpen {
    pub h: String,
    pub points: Vec<usize>,
}

/// Spec B as points, specialization order and the basic opens of the probes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpecSpace {
    pub schema: String,
    pub band: String,
    pub points: Vec<SpecPoint>,
    /// Pairs (i, j) with p_i ⊊ p_j, so p_j lies in the closure of p_i.
    pub specialization: Vec<(usize, usize)>,
    /// The prime containing every other prime.
    pub closed_point: Option<usize>,
    pub basis: Vec<BasicOpen>,
}

impl SpecSpace {
    pub fn build<S: PrimeSpace>(space: &S) -> Result<Self, SpecError> {
        let primes = space.primes()?;
        let points = primes.iter().map(|p| SpecPoint { label: space.label(p), ideal: space.describe(p) }).collect();
        let mut specialization = Vec::new();
        for (i, p) in primes.iter().enumerate() {
            for (j, q) in primes.iter().enumerate() {
                if i != j && space.is_subset(p, q) {
                    specialization.push((i, j));
                }
            }
        }
        let closed_point = (0..primes.len()).find(|&j| primes.iter().all(|p| space.is_subset(p, &primes[j])));
        let basis = space
            .probes()
            .iter()
            .map(|h| BasicOpen {
                h: h.to_string(),
                points: (0..primes.len()).filter(|&i| !space.contains(&primes[i], h)).collect(),
            })
            .collect();
        Ok(SpecSpace { schema: SCHEMA.into(), band: space.band_id(), points, specialization, closed_point, basis })
    }

    /// Union of basic opens, as a sorted point list.
    pub fn open_union(&self, hs: &[&str]) -> Vec<usize> {
        let mut out: Vec<usize> =
            self.basis.iter().filter(|b| hs.contains(&b.h.as_str())).flat_map(|b| b.points.iter().copied()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// φ = f*: Spec C → Spec B on enumerated points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecMap {
    pub morphism: String,
    /// (codomain prime label, domain prime label) pairs.
    pub images: Vec<(String, String)>,
    /// Index into the domain prime list, per codomain prime.
    pub indices: Vec<usize>,
    pub probes_checked: usize,
}

/// Matches f⁻¹(q) against the domain primes on the domain's probe elements,
/// then checks φ⁻¹(U_h) = U_{f(h)} for every probe h.
pub fn spec_map<B, C, SB, SC>(f: &BandMorphism<B, C>, dom: &SB, cod: &SC) -> Result<SpecMap, SpecError>
where
    B: Band,
    C: Band,
    SB: PrimeSpace<Elem = B::Elem>,
    SC: PrimeSpace<Elem = C::Elem>,
{
    let dom_primes = dom.primes()?;
    let cod_primes = cod.primes()?;
    let probes = dom.probes();
    let images: Vec<C::Elem> = probes.iter().map(|a| f.apply(a)).collect();
    let mut indices = Vec::with_capacity(cod_primes.len());
    for q in &cod_primes {
        let hit = dom_primes
            .iter()
            .position(|p| probes.iter().zip(&images).all(|(a, fa)| dom.contains(p, a) == cod.contains(q, fa)));
        match hit {
            Some(i) => indices.push(i),
            None => return Err(SpecError::PreimageNotPrime { prime: cod.label(q) }),
        }
    }
    for (h, fh) in probes.iter().zip(&images) {
        for (q, &i) in cod_primes.iter().zip(&indices) {
            if dom.contains(&dom_primes[i], h) != cod.contains(q, fh) {
                return Err(SpecError::Discontinuous { h: h.to_string() });
            }
        }
    }
    Ok(SpecMap {
        morphism: f.name.clone(),
        images: cod_primes.iter().zip(&indices).map(|(q, &i)| (cod.label(q), dom.label(&dom_primes[i]))).collect(),
        indices,
        probes_checked: probes.len(),
    })
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;
    use crate::zoo::{F1Pm, Integers, Residues, Sign};

    #[test]
    fn integers_to_residues_mod_six() {
        let z6 = Residues::new(6).unwrap();
        let f = BandMorphism::new("mod 6", Integers, z6, move |a: &BigInt| z6.reduce(a));
        let map = spec_map(&f, &IntegerSpec { bound: 5 }, &ExplicitSpec::new(z6)).unwrap();
        let mut images: Vec<(String, String)> = map.images.clone();
        images.sort();
        assert_eq!(
            images,
            vec![
                ("{0, 2, 3, 4}".to_string(), "(2) ∪ (3)".to_string()),
                ("{0, 2, 4}".to_string(), "(2)".to_string()),
                ("{0, 3}".to_string(), "(3)".to_string()),
            ]
        );
    }

    #[test]
    fn inclusion_and_identity() {
        let f = BandMorphism::new("incl", F1Pm, Sign, |a: &i8| *a);
        let map = spec_map(&f, &ExplicitSpec::new(F1Pm), &ExplicitSpec::new(Sign)).unwrap();
        assert_eq!(map.images, vec![("{0}".to_string(), "{0}".to_string())]);
        let z6 = Residues::new(6).unwrap();
        let id = BandMorphism::identity(z6);
        let map = spec_map(&id, &ExplicitSpec::new(z6), &ExplicitSpec::new(z6)).unwrap();
        assert_eq!(map.indices, vec![0, 1, 2]);
    }

    #[test]
    fn non_morphism_is_diagnosed() {
        // sends the prime {0, 3} to a non-prime preimage
        let z6 = Residues::new(6).unwrap();
        let f = BandMorphism::new("bad", z6, z6, |a: &u64| if *a == 3 { 1 } else { *a });
        assert!(spec_map(&f, &ExplicitSpec::new(z6), &ExplicitSpec::new(z6)).is_err());
    }

    #[test]
    fn spec_space_of_residues() {
        let space = SpecSpace::build(&ExplicitSpec::new(Residues::new(6).unwrap())).unwrap();
        assert_eq!(space.points.len(), 3);
        let closed = space.closed_point.unwrap();
        assert_eq!(space.points[closed].label, "{0, 2, 3, 4}");
        // U_1 is everything, U_0 is empty
        assert_eq!(space.basis.iter().find(|b| b.h == "1").unwrap().points.len(), 3);
        assert!(space.basis.iter().find(|b| b.h == "0").unwrap().points.is_empty());
        assert_eq!(space.open_union(&["2", "3"]).len(), 2);
    }
}
