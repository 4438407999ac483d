//! Valued (and possibly ordered) fields, and the band morphisms they induce
//! into 𝕋, 𝕊 and ℝ𝕋.

use std::fmt::Debug;

use rand_chacha::ChaCha8Rng;

use super::rings::{RationalFunctions, Rationals};
use super::small::Sign;
use super::tropical::{RealTropical, Tropical};
use crate::arith::{Field, LaurentFrac, NonNegRational, Rational, TOrder};
use crate::band::{Band, BandError, BandMorphism, SampleBand};

/// A field with a multiplicative non-Archimedean absolute value.
///
/// Absolute values are powers of [`ValuedField::base`], so the additive
/// value `log_base |x|` is always a rational.
pub trait ValuedField: Clone + Debug + Send + Sync + 'static {
    type F: Field;
    type Bandified: Band<Elem = Self::F> + SampleBand + Clone + Send + Sync + 'static;

    fn id(&self) -> String;

    fn bandified(&self) -> Self::Bandified;

    fn base(&self) -> u64;

    /// `log_base |x|`, or `None` for x = 0.
    fn log_abs(&self, x: &Self::F) -> Option<Rational>;

    fn abs(&self, x: &Self::F) -> NonNegRational {
        match self.log_abs(x) {
            None => NonNegRational::zero(),
            Some(e) => {
                let exp: i64 = e.numer().try_into().expect("integral exponent");
                NonNegRational::new(Rational::from(self.base() as i64).pow(exp).unwrap()).unwrap()
            }
        }
    }

    /// The sign under the field's ordering, if it has one.
    fn sign(&self, x: &Self::F) -> Option<i8>;

    fn is_ordered(&self) -> bool;

    fn sample_elem(&self, rng: &mut ChaCha8Rng) -> Self::F {
        self.bandified().sample_elem(rng)
    }
}

/// Q with the trivial absolute value and its usual order.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TrivialQ;

impl ValuedField for TrivialQ {
    type F = Rational;
    type Bandified = Rationals;

    fn id(&self) -> String {
        "field:Q-trivial".into()
    }
    fn bandified(&self) -> Rationals {
        Rationals
    }
    fn base(&self) -> u64 {
        2
    }
    fn log_abs(&self, x: &Rational) -> Option<Rational> {
        (!x.is_zero()).then(Rational::zero)
    }
    fn sign(&self, x: &Rational) -> Option<i8> {
        Some(x.signum())
    }
    fn is_ordered(&self) -> bool {
        true
    }
}

/// Q with |x|_p = p^(-v_p(x)). Unordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PadicQ {
    p: u64,
}

impl PadicQ {
    pub fn new(p: u64) -> Result<Self, BandError> {
        let prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
        if !prime {
            return Err(BandError::Unsupported {
                band: format!("field:Q-padic:{p}"),
                reason: "p must be prime".into(),
            });
        }
        Ok(PadicQ { p })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }
}

impl ValuedField for PadicQ {
    type F = Rational;
    type Bandified = Rationals;

    fn id(&self) -> String {
        format!("field:Q-padic:{}", self.p)
    }
    fn bandified(&self) -> Rationals {
        Rationals
    }
    fn base(&self) -> u64 {
        self.p
    }
    fn log_abs(&self, x: &Rational) -> Option<Rational> {
        x.padic_valuation(self.p).map(|v| Rational::from(-v))
    }
    fn sign(&self, _x: &Rational) -> Option<i8> {
        None
    }
    fn is_ordered(&self) -> bool {
        false
    }
}

/// Q(t) with |f| = 2^(-ord_t f), ordered by the sign as t -> 0+.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TadicQt;

impl ValuedField for TadicQt {
    type F = LaurentFrac;
    type Bandified = RationalFunctions;

    fn id(&self) -> String {
        "field:Qt-tadic".into()
    }
    fn bandified(&self) -> RationalFunctions {
        RationalFunctions
    }
    fn base(&self) -> u64 {
        2
    }
    fn log_abs(&self, x: &LaurentFrac) -> Option<Rational> {
        match x.t_order() {
            TOrder::Infinite => None,
            TOrder::Finite(k) => Some(Rational::from(-k)),
        }
    }
    fn sign(&self, x: &LaurentFrac) -> Option<i8> {
        Some(x.leading_sign())
    }
    fn is_ordered(&self) -> bool {
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("field {0} has no ordering")]
    Unordered(String),
    #[error("valuation is not compatible with the order: 0 <= {a} <= {b} but |{a}| > |{b}|")]
    Incompatible { a: String, b: String },
    #[error("unknown field id `{0}`")]
    UnknownField(String),
}

/// x ↦ |x| as a band morphism k → 𝕋.
pub fn trop_valuation<V: ValuedField>(vf: &V) -> BandMorphism<V::Bandified, Tropical> {
    let v = vf.clone();
    BandMorphism::new(format!("abs[{}]", vf.id()), vf.bandified(), Tropical, move |x| v.abs(x))
}

/// x ↦ sign(x) as a band morphism k → 𝕊.
pub fn sign_morphism<V: ValuedField>(vf: &V) -> Result<BandMorphism<V::Bandified, Sign>, FieldError> {
    if !vf.is_ordered() {
        return Err(FieldError::Unordered(vf.id()));
    }
    let v = vf.clone();
    Ok(BandMorphism::new(format!("sign[{}]", vf.id()), vf.bandified(), Sign, move |x| v.sign(x).unwrap()))
}

/// Checks 0 <= a <= b implies |a| <= |b| on all ordered pairs of `samples`.
pub fn check_compatibility<V: ValuedField>(vf: &V, samples: &[V::F]) -> Result<(), FieldError> {
    if !vf.is_ordered() {
        return Err(FieldError::Unordered(vf.id()));
    }
    let nonneg: Vec<&V::F> = samples.iter().filter(|x| vf.sign(x).unwrap() >= 0).collect();
    for a in &nonneg {
        for b in &nonneg {
            let le = vf.sign(&b.sub(a)).unwrap() >= 0;
            if le && vf.abs(a) > vf.abs(b) {
                return Err(FieldError::Incompatible { a: a.to_string(), b: b.to_string() });
            }
        }
    }
    Ok(())
}

/// x ↦ sign(x)·|x| as a band morphism k → ℝ𝕋, after checking order
/// compatibility on `compat_samples`.
pub fn signed_valuation<V: ValuedField>(
    vf: &V,
    compat_samples: &[V::F],
) -> Result<BandMorphism<V::Bandified, RealTropical>, FieldError> {
    check_compatibility(vf, compat_samples)?;
    let v = vf.clone();
    Ok(BandMorphism::new(format!("signed-abs[{}]", vf.id()), vf.bandified(), RealTropical, move |x| signed_abs(&v, x)))
}

pub fn signed_abs<V: ValuedField>(vf: &V, x: &V::F) -> Rational {
    let s = vf.sign(x).expect("ordered field");
    let a = vf.abs(x).into_inner();
    if s < 0 {
        -a
    } else {
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::UniPoly;
    use crate::band::{check_morphism, random_sample, seeded_rng};

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn nn(s: &str) -> NonNegRational {
        s.parse().unwrap()
    }

    fn tpow(k: u32) -> LaurentFrac {
        LaurentFrac::from_poly(UniPoly::monomial(Rational::one(), k))
    }

    #[test]
    fn absolute_values() {
        let p3 = PadicQ::new(3).unwrap();
        assert_eq!(p3.abs(&q("6")), nn("1/3"));
        assert_eq!(p3.abs(&q("1/3")), nn("3"));
        assert_eq!(TrivialQ.abs(&q("7")), nn("1"));
        assert_eq!(TrivialQ.abs(&q("0")), nn("0"));
        assert_eq!(TadicQt.abs(&tpow(2)), nn("1/4"));
        assert!(PadicQ::new(6).is_err());
    }

    #[test]
    fn signs_and_signed_values() {
        assert_eq!(TrivialQ.sign(&q("-7")), Some(-1));
        let t_minus_t2 = LaurentFrac::t().sub(&tpow(2));
        assert_eq!(TadicQt.sign(&t_minus_t2), Some(1));
        assert_eq!(signed_abs(&TadicQt, &LaurentFrac::t().neg()), q("-1/2"));
        assert_eq!(signed_abs(&TrivialQ, &q("5")), q("1"));
        assert_eq!(signed_abs(&TrivialQ, &q("-5")), q("-1"));
        assert_eq!(signed_abs(&TrivialQ, &q("0")), q("0"));
        assert!(sign_morphism(&PadicQ::new(3).unwrap()).is_err());
    }

    #[test]
    fn three_adic_pushforward_example() {
        let f = trop_valuation(&PadicQ::new(3).unwrap());
        let s = Rationals.sum([q("1"), q("2"), q("-3")]);
        assert_eq!(f.push_forward(&s), Tropical.sum([nn("1"), nn("1"), nn("1/3")]));
        let report = check_morphism(&f, &[s], &[], None).unwrap();
        assert!(report.pass);
        let not_null = Rationals.sum([q("1")]);
        assert!(check_morphism(&f, &[not_null], &[], None).is_err());
    }

    #[test]
    fn compatibility_holds_for_ordered_fields() {
        let mut rng = seeded_rng(3);
        let qs: Vec<Rational> = (0..60).map(|_| TrivialQ.sample_elem(&mut rng)).collect();
        assert!(check_compatibility(&TrivialQ, &qs).is_ok());
        let ts: Vec<LaurentFrac> = (0..60).map(|_| TadicQt.sample_elem(&mut rng)).collect();
        assert!(check_compatibility(&TadicQt, &ts).is_ok());
    }

    #[test]
    fn valuation_morphisms_pass_on_samples() {
        let sample = random_sample(&Rationals, 200, 5, 11);
        let nulls: Vec<_> = sample.sums.iter().filter(|s| Rationals.is_null(s)).cloned().collect();
        let f = trop_valuation(&PadicQ::new(2).unwrap());
        assert!(check_morphism(&f, &nulls, &[], Some(11)).unwrap().pass);
    }
}
