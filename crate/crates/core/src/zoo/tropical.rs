//! The tropical, real-tropical and triangle bands over exact rationals.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{NonNegRational, Rational};
use crate::band::{Band, BandError, FormalSum, Inverse, SampleBand};

pub(crate) fn random_nonneg(rng: &mut ChaCha8Rng) -> NonNegRational {
    if rng.gen_ratio(1, 12) {
        return NonNegRational::zero();
    }
    let n: i64 = rng.gen_range(1..=12);
    let d: i64 = rng.gen_range(1..=4);
    NonNegRational::new(Rational::new(n, d).unwrap()).unwrap()
}

pub(crate) fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let v = random_nonneg(rng).into_inner();
    if rng.gen_bool(0.5) {
        -v
    } else {
        v
    }
}

/// Nonnegative rationals under multiplication; a sum is null when its
/// maximum occurs at least twice.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tropical;

impl Tropical {
    /// Null test on values that may include zeros.
    pub fn max_attained_twice(values: &[NonNegRational]) -> bool {
        let Some(max) = values.iter().max() else {
            return true;
        };
        if max.is_zero() {
            return true;
        }
        values.iter().filter(|v| *v == max).count() >= 2
    }
}

impl Band for Tropical {
    type Elem = NonNegRational;

    fn id(&self) -> String {
        "trop".into()
    }
    fn zero(&self) -> NonNegRational {
        NonNegRational::zero()
    }
    fn one(&self) -> NonNegRational {
        NonNegRational::one()
    }
    fn mul(&self, a: &NonNegRational, b: &NonNegRational) -> NonNegRational {
        a * b
    }
    fn is_null(&self, sum: &FormalSum<NonNegRational>) -> bool {
        Self::max_attained_twice(sum.entries())
    }
    fn neg(&self, a: &NonNegRational) -> Result<NonNegRational, BandError> {
        Ok(a.clone())
    }
    fn unit_inverse(&self, a: &NonNegRational) -> Inverse<NonNegRational> {
        a.recip().map_or(Inverse::NonUnit, Inverse::Unit)
    }
    fn declares_tract(&self) -> Option<bool> {
        Some(true)
    }
    fn is_cancellative(&self) -> bool {
        true
    }
    fn divide(&self, a: &NonNegRational, b: &NonNegRational) -> Option<NonNegRational> {
        b.recip().ok().map(|r| a * &r)
    }
}

impl SampleBand for Tropical {
    fn sample_elem(&self, rng: &mut ChaCha8Rng) -> NonNegRational {
        random_nonneg(rng)
    }

    fn sample_null(&self, rng: &mut ChaCha8Rng, max_len: usize) -> FormalSum<NonNegRational> {
        let k = rng.gen_range(1..max_len.max(2));
        let mut entries: Vec<_> = (0..k).map(|_| random_nonneg(rng)).collect();
        let max = entries.iter().max().cloned().unwrap();
        entries.push(max);
        self.sum(entries)
    }
}

/// Signed rationals under multiplication; a sum is null when its maximal
/// absolute value occurs with both signs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RealTropical;

impl RealTropical {
    pub fn null_values(values: &[Rational]) -> bool {
        let Some(max) = values.iter().map(Rational::abs).max() else {
            return true;
        };
        if max.is_zero() {
            return true;
        }
        let pos = values.contains(&max);
        let neg = values.iter().any(|v| v.signum() < 0 && v.abs() == max);
        pos && neg
    }
}

impl Band for RealTropical {
    type Elem = Rational;

    fn id(&self) -> String {
        "rtrop".into()
    }
    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn is_null(&self, sum: &FormalSum<Rational>) -> bool {
        Self::null_values(sum.entries())
    }
    fn neg(&self, a: &Rational) -> Result<Rational, BandError> {
        Ok(-a)
    }
    fn unit_inverse(&self, a: &Rational) -> Inverse<Rational> {
        a.recip().map_or(Inverse::NonUnit, Inverse::Unit)
    }
    fn declares_tract(&self) -> Option<bool> {
        Some(true)
    }
    fn is_cancellative(&self) -> bool {
        true
    }
    fn divide(&self, a: &Rational, b: &Rational) -> Option<Rational> {
        b.recip().ok().map(|r| a * &r)
    }
}

impl SampleBand for RealTropical {
    fn sample_elem(&self, rng: &mut ChaCha8Rng) -> Rational {
        random_rational(rng)
    }

    fn sample_null(&self, rng: &mut ChaCha8Rng, max_len: usize) -> FormalSum<Rational> {
        let k = rng.gen_range(1..max_len.max(2));
        let mut entries: Vec<_> = (0..k).map(|_| random_rational(rng)).collect();
        let top = entries.iter().max_by_key(|v| v.abs()).cloned().unwrap();
        entries.push(-top);
        self.sum(entries)
    }
}

/// The q-triangle band. Elements are stored in root form: the element r
/// stands for the nonnegative real r^q, so products multiply roots and the
/// polygon inequality compares roots exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    q: Rational,
}

impl Triangle {
    pub fn new(q: Rational) -> Result<Self, BandError> {
        if q.signum() <= 0 {
            return Err(BandError::Unsupported {
                band: format!("triangle:q={q}"),
                reason: "q must be positive".into(),
            });
        }
        Ok(Triangle { q })
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    /// Root form of a rational value; exact only when the value is a q-th
    /// power of a rational, which is always the case for q = 1.
    pub fn root_of_value(&self, value: &NonNegRational) -> Option<NonNegRational> {
        if self.q.is_one() {
            return Some(value.clone());
        }
        if !self.q.is_integer() {
            return None;
        }
        let k = self.q.numer().try_into().ok()?;
        let n = nth_root(value.value().numer(), k)?;
        let d = nth_root(value.value().denom(), k)?;
        NonNegRational::new(Rational::new(n, d).ok()?).ok()
    }

    pub fn polygon_inequality(roots: &[NonNegRational]) -> bool {
        let Some(max) = roots.iter().max() else {
            return true;
        };
        let total = roots.iter().fold(Rational::zero(), |acc, r| acc + r.value().clone());
        // max <= sum of the others
        max.value() <= &(total - max.value().clone())
    }
}

fn nth_root(n: &num_bigint::BigInt, k: u32) -> Option<num_bigint::BigInt> {
    if n.sign() == num_bigint::Sign::Minus {
        return None;
    }
    let r = n.nth_root(k);
    (num_traits::pow(r.clone(), k as usize) == *n).then_some(r)
}

impl Band for Triangle {
    type Elem = NonNegRational;

    fn id(&self) -> String {
        format!("triangle:q={}", self.q)
    }
    fn zero(&self) -> NonNegRational {
        NonNegRational::zero()
    }
    fn one(&self) -> NonNegRational {
        NonNegRational::one()
    }
    fn mul(&self, a: &NonNegRational, b: &NonNegRational) -> NonNegRational {
        a * b
    }
    fn is_null(&self, sum: &FormalSum<NonNegRational>) -> bool {
        Self::polygon_inequality(sum.entries())
    }
    fn neg(&self, a: &NonNegRational) -> Result<NonNegRational, BandError> {
        Ok(a.clone())
    }
    fn unit_inverse(&self, a: &NonNegRational) -> Inverse<NonNegRational> {
        a.recip().map_or(Inverse::NonUnit, Inverse::Unit)
    }
    fn declares_tract(&self) -> Option<bool> {
        Some(true)
    }
    fn is_cancellative(&self) -> bool {
        true
    }
    fn divide(&self, a: &NonNegRational, b: &NonNegRational) -> Option<NonNegRational> {
        b.recip().ok().map(|r| a * &r)
    }
}

impl SampleBand for Triangle {
    fn sample_elem(&self, rng: &mut ChaCha8Rng) -> NonNegRational {
        random_nonneg(rng)
    }

    fn sample_null(&self, rng: &mut ChaCha8Rng, max_len: usize) -> FormalSum<NonNegRational> {
        let k = rng.gen_range(1..max_len.max(2));
        let mut entries: Vec<_> = (0..k).map(|_| random_nonneg(rng)).collect();
        let max = entries.iter().max().unwrap().value().clone();
        let total = entries.iter().fold(Rational::zero(), |acc, r| acc + r.value().clone());
        // any r in [max, total] closes the polygon
        let steps: i64 = 8;
        let i = rng.gen_range(0..=steps);
        let r = &max + &(&(&total - &max) * &Rational::new(i, steps).unwrap());
        entries.push(NonNegRational::new(r).unwrap());
        self.sum(entries)
    }
}
