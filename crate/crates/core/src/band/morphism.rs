use std::fmt;
use std::sync::Arc;

use super::{Band, BandError, FormalSum};
use crate::report::CheckReport;

type ElemMap<B, C> = dyn Fn(&<B as Band>::Elem) -> <C as Band>::Elem + Send + Sync;

/// A map of underlying monoids between two bands, checked against the
/// morphism axioms by [`check_morphism`].
pub struct BandMorphism<B: Band, C: Band> {
    pub name: String,
    pub domain: B,
    pub codomain: C,
    map: Arc<ElemMap<B, C>>,
}

impl<B: Band + Clone, C: Band + Clone> Clone for BandMorphism<B, C> {
    fn clone(&self) -> Self {
        BandMorphism {
            name: self.name.clone(),
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            map: Arc::clone(&self.map),
        }
    }
}

impl<B: Band, C: Band> fmt::Debug for BandMorphism<B, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} -> {}", self.name, self.domain.id(), self.codomain.id())
    }
}

impl<B: Band, C: Band> BandMorphism<B, C> {
    pub fn new(
        name: impl Into<String>,
        domain: B,
        codomain: C,
        map: impl Fn(&B::Elem) -> C::Elem + Send + Sync + 'static,
    ) -> Self {
        BandMorphism { name: name.into(), domain, codomain, map: Arc::new(map) }
    }

    pub fn apply(&self, a: &B::Elem) -> C::Elem {
        (self.map)(a)
    }

    pub fn push_forward(&self, s: &FormalSum<B::Elem>) -> FormalSum<C::Elem> {
        FormalSum::new(s.entries().iter().map(|a| self.apply(a)), &self.codomain.zero())
    }
}

impl<B: Band + Clone> BandMorphism<B, B> {
    pub fn identity(band: B) -> Self {
        BandMorphism::new("id", band.clone(), band, |a: &B::Elem| a.clone())
    }
}

/// Checks that every sampled null sum pushes forward to a null sum and that the
/// map is a morphism of pointed monoids on the sampled pairs.
///
/// Samples that are not null in the domain are rejected as input errors.
pub fn check_morphism<B: Band, C: Band>(
    f: &BandMorphism<B, C>,
    null_samples: &[FormalSum<B::Elem>],
    pairs: &[(B::Elem, B::Elem)],
    seed: Option<u64>,
) -> Result<CheckReport, BandError> {
    if let Some(bad) = null_samples.iter().find(|s| !f.domain.is_null(s)) {
        return Err(BandError::SampleNotNull(bad.to_string()));
    }
    let mut report =
        CheckReport::new("morphism", format!("{}: {} -> {}", f.name, f.domain.id(), f.codomain.id()), seed);
    if f.apply(&f.domain.zero()) != f.codomain.zero() {
        report.fail("preserves-zero", format!("f(0) = {}", f.apply(&f.domain.zero())));
    }
    if f.apply(&f.domain.one()) != f.codomain.one() {
        report.fail("preserves-one", format!("f(1) = {}", f.apply(&f.domain.one())));
    }
    for s in null_samples {
        report.checked += 1;
        let image = f.push_forward(s);
        if !f.codomain.is_null(&image) {
            report.fail("null-pushforward", format!("{s} is null but its image {image} is not"));
        }
    }
    for (a, b) in pairs {
        report.checked += 1;
        let lhs = f.apply(&f.domain.mul(a, b));
        let rhs = f.codomain.mul(&f.apply(a), &f.apply(b));
        if lhs != rhs {
            report.fail("multiplicative", format!("f({a}·{b}) = {lhs} but f({a})·f({b}) = {rhs}"));
        }
    }
    Ok(report)
}
