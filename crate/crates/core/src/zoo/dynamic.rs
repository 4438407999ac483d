use std::fmt;

use num_bigint::BigInt;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::fields::{PadicQ, TadicQt, TrivialQ};
use super::rings::{Integers, RationalFunctions, Rationals, Residues};
use super::small::{F1Pm, Krasner, Sign};
use super::tropical::{RealTropical, Triangle, Tropical};
use crate::arith::{LaurentFrac, NonNegRational, Rational};
use crate::band::{
    check_band_axioms, exhaustive_sample, random_sample, Band, BandError, FormalSum, Inverse, SampleBand,
};
use crate::poly::parse_expr;
use crate::report::CheckReport;

/// An element of any zoo band.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Value {
    Sign(i8),
    Bit(u8),
    Residue(u64),
    Int(BigInt),
    Rat(Rational),
    NonNeg(NonNegRational),
    Frac(LaurentFrac),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Sign(v) => write!(f, "{v}"),
            Value::Bit(v) => write!(f, "{v}"),
            Value::Residue(v) => write!(f, "{v}"),
            Value::Int(v) => write!(f, "{v}"),
            Value::Rat(v) => write!(f, "{v}"),
            Value::NonNeg(v) => write!(f, "{v}"),
            Value::Frac(v) => write!(f, "{v}"),
        }
    }
}

trait Codec: Band + SampleBand + Sized {
    fn wrap(&self, e: Self::Elem) -> Value;
    fn unwrap(&self, v: &Value) -> Option<Self::Elem>;
    fn parse(&self, s: &str) -> Option<Self::Elem>;
}

fn parse_sign(s: &str) -> Option<i8> {
    match s {
        "0" => Some(0),
        "1" | "+1" => Some(1),
        "-1" => Some(-1),
        _ => None,
    }
}

macro_rules! codec {
    ($band:ty, $variant:ident, |$this:ident, $s:ident| $parse:expr) => {
        impl Codec for $band {
            fn wrap(&self, e: Self::Elem) -> Value {
                Value::$variant(e)
            }
            fn unwrap(&self, v: &Value) -> Option<Self::Elem> {
                match v {
                    Value::$variant(e) => Some(e.clone()),
                    _ => None,
                }
            }
            fn parse(&self, $s: &str) -> Option<Self::Elem> {
                let $this = self;
                $parse
            }
        }
    };
}

codec!(F1Pm, Sign, |_b, s| parse_sign(s));
codec!(Sign, Sign, |_b, s| parse_sign(s));
codec!(Krasner, Bit, |_b, s| match s {
    "0" => Some(0),
    "1" => Some(1),
    _ => None,
});
codec!(Tropical, NonNeg, |_b, s| s.parse().ok());
codec!(RealTropical, Rat, |_b, s| s.parse().ok());
codec!(Triangle, NonNeg, |_b, s| s.parse().ok());
codec!(Integers, Int, |_b, s| s.parse().ok());
codec!(Residues, Residue, |b, s| s.parse::<BigInt>().ok().map(|v| b.reduce(&v)));
codec!(Rationals, Rat, |_b, s| s.parse().ok());
codec!(RationalFunctions, Frac, |_b, s| parse_expr(s).ok()?.to_field().ok());

/// Band selected at runtime from its id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZooBand {
    F1Pm,
    Krasner,
    Sign,
    Trop,
    RealTrop,
    Triangle(Triangle),
    Integers,
    Residues(Residues),
    Rationals,
    /// The bandification of a valued field, keeping the field id.
    Field(FieldKind),
}

/// The supported valued fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    Trivial,
    Padic(PadicQ),
    Tadic,
}

impl FieldKind {
    pub fn id(&self) -> String {
        use super::fields::ValuedField;
        match self {
            FieldKind::Trivial => TrivialQ.id(),
            FieldKind::Padic(p) => p.id(),
            FieldKind::Tadic => TadicQt.id(),
        }
    }
}

/// Parses `field:Q-trivial`, `field:Q-padic:<p>` or `field:Qt-tadic`.
pub fn parse_field(id: &str) -> Result<FieldKind, BandError> {
    match id {
        "field:Q-trivial" => Ok(FieldKind::Trivial),
        "field:Qt-tadic" => Ok(FieldKind::Tadic),
        _ => {
            let p = id
                .strip_prefix("field:Q-padic:")
                .and_then(|p| p.parse::<u64>().ok())
                .ok_or_else(|| BandError::UnknownBand(id.to_string()))?;
            Ok(FieldKind::Padic(PadicQ::new(p)?))
        }
    }
}

macro_rules! dispatch {
    ($self:expr, |$b:ident| $body:expr) => {
        match $self {
            ZooBand::F1Pm => {
                let $b = &F1Pm;
                $body
            }
            ZooBand::Krasner => {
                let $b = &Krasner;
                $body
            }
            ZooBand::Sign => {
                let $b = &Sign;
                $body
            }
            ZooBand::Trop => {
                let $b = &Tropical;
                $body
            }
            ZooBand::RealTrop => {
                let $b = &RealTropical;
                $body
            }
            ZooBand::Triangle(t) => {
                let $b = t;
                $body
            }
            ZooBand::Integers => {
                let $b = &Integers;
                $body
            }
            ZooBand::Residues(r) => {
                let $b = r;
                $body
            }
            ZooBand::Rationals | ZooBand::Field(FieldKind::Trivial) | ZooBand::Field(FieldKind::Padic(_)) => {
                let $b = &Rationals;
                $body
            }
            ZooBand::Field(FieldKind::Tadic) => {
                let $b = &RationalFunctions;
                $body
            }
        }
    };
}

fn unwrap_elem<B: Codec>(b: &B, v: &Value) -> B::Elem {
    b.unwrap(v).expect("value belongs to this band")
}

fn wrap_sum<B: Codec>(b: &B, s: &FormalSum<B::Elem>) -> FormalSum<Value> {
    FormalSum::new(s.entries().iter().map(|e| b.wrap(e.clone())), &b.wrap(b.zero()))
}

impl ZooBand {
    pub fn parse(id: &str) -> Result<Self, BandError> {
        let id = id.trim();
        Ok(match id {
            "f1pm" => ZooBand::F1Pm,
            "krasner" => ZooBand::Krasner,
            "sign" => ZooBand::Sign,
            "trop" => ZooBand::Trop,
            "rtrop" => ZooBand::RealTrop,
            "ring:Z" => ZooBand::Integers,
            "ring:Q" => ZooBand::Rationals,
            _ if id.starts_with("field:") => ZooBand::Field(parse_field(id)?),
            _ => {
                if let Some(q) = id.strip_prefix("triangle:q=") {
                    let q: Rational = q.parse().map_err(|_| BandError::UnknownBand(id.to_string()))?;
                    ZooBand::Triangle(Triangle::new(q)?)
                } else if let Some(n) = id.strip_prefix("ring:Z/") {
                    let n: u64 = n.parse().map_err(|_| BandError::UnknownBand(id.to_string()))?;
                    ZooBand::Residues(Residues::new(n)?)
                } else {
                    return Err(BandError::UnknownBand(id.to_string()));
                }
            }
        })
    }

    pub fn parse_elem(&self, s: &str) -> Result<Value, BandError> {
        let s = s.trim();
        dispatch!(self, |b| b.parse(s).map(|e| b.wrap(e)))
            .ok_or_else(|| BandError::InvalidElement { band: self.id(), element: s.to_string() })
    }

    /// Parses a comma-separated list of elements into a formal sum.
    pub fn parse_sum(&self, csv: &str) -> Result<FormalSum<Value>, BandError> {
        let entries = csv
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| self.parse_elem(s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.sum(entries))
    }

    pub fn contains(&self, v: &Value) -> bool {
        dispatch!(self, |b| b.unwrap(v).is_some())
    }

    pub fn tag(&self, s: &FormalSum<Value>) -> TaggedSum {
        TaggedSum { band: self.id(), entries: s.entries().iter().map(ToString::to_string).collect() }
    }

    pub fn untag(&self, t: &TaggedSum) -> Result<FormalSum<Value>, BandError> {
        if t.band != self.id() {
            return Err(BandError::BandMismatch { left: self.id(), right: t.band.clone() });
        }
        let entries = t.entries.iter().map(|e| self.parse_elem(e)).collect::<Result<Vec<_>, _>>()?;
        Ok(self.sum(entries))
    }

    /// Exhaustive check for finite bands, `count` seeded samples otherwise.
    pub fn check_axioms(&self, count: usize, max_len: usize, seed: u64) -> CheckReport {
        dispatch!(self, |b| match exhaustive_sample(b, max_len) {
            Some(sample) => check_band_axioms(b, &sample),
            None => check_band_axioms(b, &random_sample(b, count, max_len, seed)),
        })
        .with_subject(self.id())
    }
}

impl Band for ZooBand {
    type Elem = Value;

    fn id(&self) -> String {
        match self {
            ZooBand::Field(k) => k.id(),
            _ => dispatch!(self, |b| b.id()),
        }
    }
    fn zero(&self) -> Value {
        dispatch!(self, |b| b.wrap(b.zero()))
    }
    fn one(&self) -> Value {
        dispatch!(self, |b| b.wrap(b.one()))
    }
    fn mul(&self, a: &Value, c: &Value) -> Value {
        dispatch!(self, |b| { b.wrap(b.mul(&unwrap_elem(b, a), &unwrap_elem(b, c))) })
    }
    fn is_null(&self, sum: &FormalSum<Value>) -> bool {
        dispatch!(self, |b| { b.is_null(&b.sum(sum.entries().iter().map(|v| unwrap_elem(b, v)))) })
    }
    fn elements(&self) -> Option<Vec<Value>> {
        dispatch!(self, |b| b.elements().map(|es| es.into_iter().map(|e| b.wrap(e)).collect()))
    }
    fn neg(&self, a: &Value) -> Result<Value, BandError> {
        dispatch!(self, |b| b.neg(&unwrap_elem(b, a)).map(|e| b.wrap(e)))
    }
    fn unit_inverse(&self, a: &Value) -> Inverse<Value> {
        dispatch!(self, |b| match b.unit_inverse(&unwrap_elem(b, a)) {
            Inverse::Unit(e) => Inverse::Unit(b.wrap(e)),
            Inverse::NonUnit => Inverse::NonUnit,
            Inverse::Unknown => Inverse::Unknown,
        })
    }
    fn declares_tract(&self) -> Option<bool> {
        dispatch!(self, |b| b.declares_tract())
    }
    fn is_cancellative(&self) -> bool {
        dispatch!(self, |b| b.is_cancellative())
    }
    fn divide(&self, a: &Value, c: &Value) -> Option<Value> {
        dispatch!(self, |b| b.divide(&b.unwrap(a)?, &b.unwrap(c)?).map(|e| b.wrap(e)))
    }
}

impl SampleBand for ZooBand {
    fn sample_elem(&self, rng: &mut ChaCha8Rng) -> Value {
        dispatch!(self, |b| b.wrap(b.sample_elem(rng)))
    }
    fn sample_null(&self, rng: &mut ChaCha8Rng, max_len: usize) -> FormalSum<Value> {
        dispatch!(self, |b| wrap_sum(b, &b.sample_null(rng, max_len)))
    }
    fn sample_sum(&self, rng: &mut ChaCha8Rng, max_len: usize) -> FormalSum<Value> {
        dispatch!(self, |b| wrap_sum(b, &b.sample_sum(rng, max_len)))
    }
}

/// Serialized formal sum: `{"band": id, "entries": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedSum {
    pub band: String,
    pub entries: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::band::fs_add;

    #[test]
    fn ids_roundtrip() {
        for id in [
            "f1pm",
            "krasner",
            "sign",
            "trop",
            "rtrop",
            "triangle:q=2",
            "triangle:q=1/2",
            "ring:Z",
            "ring:Z/6",
            "ring:Q",
            "field:Q-trivial",
            "field:Q-padic:3",
            "field:Qt-tadic",
        ] {
            assert_eq!(ZooBand::parse(id).unwrap().id(), id);
        }
        assert!(ZooBand::parse("ring:Z/1").is_err());
        assert!(ZooBand::parse("field:Q-padic:4").is_err());
        assert!(matches!(ZooBand::parse("nope"), Err(BandError::UnknownBand(_))));
    }

    #[test]
    fn dynamic_null_and_neg() {
        let trop = ZooBand::parse("trop").unwrap();
        assert!(trop.is_null(&trop.parse_sum("2,2,1").unwrap()));
        let z4 = ZooBand::parse("ring:Z/4").unwrap();
        assert!(z4.is_null(&z4.parse_sum("2,2").unwrap()));
        let qt = ZooBand::parse("field:Qt-tadic").unwrap();
        assert!(qt.is_null(&qt.parse_sum("t, -t").unwrap()));
        assert_eq!(qt.neg(&qt.parse_elem("(t+1)/t").unwrap()).unwrap(), qt.parse_elem("-(t+1)/t").unwrap());
        assert!(ZooBand::parse("sign").unwrap().parse_elem("2").is_err());
    }

    #[test]
    fn tagged_sums() {
        let sign = ZooBand::parse("sign").unwrap();
        let s = sign.parse_sum("1,-1,0").unwrap();
        let tagged = sign.tag(&s);
        let json = serde_json::to_string(&tagged).unwrap();
        let back: TaggedSum = serde_json::from_str(&json).unwrap();
        assert_eq!(sign.untag(&back).unwrap(), s);
        let err = ZooBand::parse("trop").unwrap().untag(&back).unwrap_err();
        assert!(matches!(err, BandError::BandMismatch { .. }));
        let t = fs_add(&sign, &s, &sign.sum([]));
        assert_eq!(t, s);
    }

    #[test]
    fn axioms_through_dynamic_layer() {
        for id in ["sign", "trop", "ring:Z/6"] {
            let b = ZooBand::parse(id).unwrap();
            assert!(b.check_axioms(100, 4, 0).pass, "{id}");
        }
    }
}
