//! Bands: pointed monoids with a null set in their ambient semiring.
//!
//! A band is described by a [`Band`] implementation. Elements are plain values
//! of the associated `Elem` type in canonical form, so structural equality is
//! band equality. Formal sums (elements of the ambient semiring B⁺) are kept as
//! sorted multisets with the zero element removed, which realizes the
//! identification `Σ aᵢ ~ 0 + Σ aᵢ`.

mod axioms;
mod morphism;
mod sample;
mod table;

use std::fmt::{self, Debug, Display};
use std::hash::Hash;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use axioms::{check_band_axioms, exhaustive_sample, is_tract, random_sample, AxiomSample, Tractness};
pub use morphism::{check_morphism, BandMorphism};
pub use sample::{seeded_rng, SampleBand};
pub use table::TableBand;

/// Default bound on the length of enumerated formal sums.
pub const DEFAULT_SUM_LENGTH: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BandError {
    #[error("element {element} has no additive inverse in {band}")]
    NoInverse { band: String, element: String },
    #[error("element {element} has several additive inverses in {band}: {candidates}")]
    InverseNotUnique { band: String, element: String, candidates: String },
    #[error("sums belong to different bands ({left} vs {right})")]
    BandMismatch { left: String, right: String },
    #[error("sample {0} is not a null sum of the domain")]
    SampleNotNull(String),
    #[error("operation not supported for {band}: {reason}")]
    Unsupported { band: String, reason: String },
    #[error("invalid element `{element}` for {band}")]
    InvalidElement { band: String, element: String },
    #[error("unknown band id `{0}`")]
    UnknownBand(String),
}

/// Multiplicative inverse lookup result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Inverse<E> {
    Unit(E),
    NonUnit,
    Unknown,
}

pub trait Band {
    type Elem: Clone + Eq + Ord + Hash + Debug + Display + Send + Sync;

    /// Identifier used in reports and serialized sums.
    fn id(&self) -> String;

    fn zero(&self) -> Self::Elem;

    fn one(&self) -> Self::Elem;

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Membership of a canonical formal sum in the null set.
    fn is_null(&self, sum: &FormalSum<Self::Elem>) -> bool;

    /// The full element list, for finite bands.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    /// The unique b with a + b null. Finite bands fall back to exhaustive search.
    fn neg(&self, a: &Self::Elem) -> Result<Self::Elem, BandError> {
        neg_by_search(self, a)
    }

    fn unit_inverse(&self, a: &Self::Elem) -> Inverse<Self::Elem> {
        match self.elements() {
            Some(all) => {
                let one = self.one();
                all.into_iter().find(|c| self.mul(a, c) == one).map_or(Inverse::NonUnit, Inverse::Unit)
            }
            None => Inverse::Unknown,
        }
    }

    /// Analytic declaration of tract-ness for infinite bands.
    fn declares_tract(&self) -> Option<bool> {
        None
    }

    /// ab = ac with a ≠ 0 implies b = c.
    fn is_cancellative(&self) -> bool {
        false
    }

    /// Some q with q·b = a, when the band can compute one.
    fn divide(&self, _a: &Self::Elem, _b: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    fn sum(&self, entries: impl IntoIterator<Item = Self::Elem>) -> FormalSum<Self::Elem>
    where
        Self: Sized,
    {
        FormalSum::new(entries, &self.zero())
    }

    fn is_finite(&self) -> bool {
        self.elements().is_some()
    }
}

/// Exhaustive additive-inverse search over a finite element list.
pub fn neg_by_search<B: Band + ?Sized>(band: &B, a: &B::Elem) -> Result<B::Elem, BandError> {
    let Some(all) = band.elements() else {
        return Err(BandError::Unsupported {
            band: band.id(),
            reason: "no closed-form negation and no finite element list".into(),
        });
    };
    let zero = band.zero();
    let candidates: Vec<B::Elem> =
        all.into_iter().filter(|b| band.is_null(&FormalSum::new([a.clone(), b.clone()], &zero))).collect();
    match candidates.len() {
        1 => Ok(candidates.into_iter().next().unwrap()),
        0 => Err(BandError::NoInverse { band: band.id(), element: a.to_string() }),
        _ => Err(BandError::InverseNotUnique {
            band: band.id(),
            element: a.to_string(),
            candidates: candidates.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
        }),
    }
}

/// An element of the ambient semiring: a finite multiset without zero entries.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FormalSum<E> {
    entries: Vec<E>,
}

impl<E: Ord + Clone> FormalSum<E> {
    pub fn new(entries: impl IntoIterator<Item = E>, zero: &E) -> Self {
        let mut entries: Vec<E> = entries.into_iter().filter(|e| e != zero).collect();
        entries.sort();
        FormalSum { entries }
    }

    pub fn empty() -> Self {
        FormalSum { entries: Vec::new() }
    }

    pub fn entries(&self) -> &[E] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn into_entries(self) -> Vec<E> {
        self.entries
    }
}

impl<E: Display> Display for FormalSum<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl<E: Display> Debug for FormalSum<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(self, f)
    }
}

/// Ambient-semiring addition: multiset union.
pub fn fs_add<B: Band>(band: &B, s: &FormalSum<B::Elem>, t: &FormalSum<B::Elem>) -> FormalSum<B::Elem> {
    band.sum(s.entries.iter().chain(t.entries.iter()).cloned())
}

/// Module action of a band element on a formal sum.
pub fn fs_scale<B: Band>(band: &B, b: &B::Elem, s: &FormalSum<B::Elem>) -> FormalSum<B::Elem> {
    band.sum(s.entries.iter().map(|e| band.mul(b, e)))
}

/// Product in the ambient semiring, distributing over both sums.
pub fn fs_mul<B: Band>(band: &B, s: &FormalSum<B::Elem>, t: &FormalSum<B::Elem>) -> FormalSum<B::Elem> {
    band.sum(s.entries.iter().flat_map(|a| t.entries.iter().map(move |b| band.mul(a, b))))
}

/// All multisets of nonzero elements of size at most `max_len`.
pub fn enumerate_sums<E: Clone + Ord>(nonzero: &[E], max_len: usize) -> Vec<FormalSum<E>> {
    fn rec<E: Clone + Ord>(
        items: &[E],
        start: usize,
        remaining: usize,
        current: &mut Vec<E>,
        out: &mut Vec<FormalSum<E>>,
    ) {
        out.push(FormalSum { entries: current.clone() });
        if remaining == 0 {
            return;
        }
        for i in start..items.len() {
            current.push(items[i].clone());
            rec(items, i, remaining - 1, current, out);
            current.pop();
        }
    }
    let mut items = nonzero.to_vec();
    items.sort();
    items.dedup();
    let mut out = Vec::new();
    rec(&items, 0, max_len, &mut Vec::new(), &mut out);
    out
}
