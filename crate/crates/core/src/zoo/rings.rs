//! Bandifications of rings: the monoid (R, ·) with null sums the entry
//! lists that add up to zero in R.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::tropical::random_rational;
use crate::arith::{LaurentFrac, Rational, UniPoly};
use crate::band::{Band, BandError, FormalSum, Inverse, SampleBand};

/// The bandified integers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Integers;

impl Band for Integers {
    type Elem = BigInt;

    fn id(&self) -> String {
        "ring:Z".into()
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_null(&self, sum: &FormalSum<BigInt>) -> bool {
        sum.entries().iter().sum::<BigInt>().is_zero()
    }
    fn neg(&self, a: &BigInt) -> Result<BigInt, BandError> {
        Ok(-a)
    }
    fn unit_inverse(&self, a: &BigInt) -> Inverse<BigInt> {
        if a.abs().is_one() {
            Inverse::Unit(a.clone())
        } else {
            Inverse::NonUnit
        }
    }
    fn declares_tract(&self) -> Option<bool> {
        Some(false)
    }
    fn is_cancellative(&self) -> bool {
        true
    }
    fn divide(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }
}

impl SampleBand for Integers {
    fn sample_elem(&self, rng: &mut ChaCha8Rng) -> BigInt {
        BigInt::from(rng.gen_range(-12i64..=12))
    }

    fn sample_null(&self, rng: &mut ChaCha8Rng, max_len: usize) -> FormalSum<BigInt> {
        let k = rng.gen_range(1..max_len.max(2));
        let mut entries: Vec<BigInt> = (0..k).map(|_| self.sample_elem(rng)).collect();
        let total: BigInt = entries.iter().sum();
        entries.push(-total);
        self.sum(entries)
    }
}

/// The bandified residue ring Z/nZ, elements as residues in `0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Residues {
    n: u64,
}

impl Residues {
    pub fn new(n: u64) -> Result<Self, BandError> {
        if n < 2 {
            return Err(BandError::Unsupported {
                band: format!("ring:Z/{n}"),
                reason: "modulus must be at least 2".into(),
            });
        }
        Ok(Residues { n })
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn reduce(&self, a: &BigInt) -> u64 {
        let r = a.mod_floor(&BigInt::from(self.n));
        r.try_into().unwrap()
    }
}

impl Band for Residues {
    type Elem = u64;

    fn id(&self) -> String {
        format!("ring:Z/{}", self.n)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.n as u128) as u64
    }
    fn is_null(&self, sum: &FormalSum<u64>) -> bool {
        sum.entries().iter().fold(0u128, |acc, a| (acc + *a as u128) % self.n as u128) == 0
    }
    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.n).collect())
    }
    fn neg(&self, a: &u64) -> Result<u64, BandError> {
        Ok((self.n - a % self.n) % self.n)
    }
}

impl SampleBand for Residues {
    fn sample_elem(&self, rng: &mut ChaCha8Rng) -> u64 {
        rng.gen_range(0..self.n)
    }

    fn sample_null(&self, rng: &mut ChaCha8Rng, max_len: usize) -> FormalSum<u64> {
        let k = rng.gen_range(1..max_len.max(2));
        let mut entries: Vec<u64> = (0..k).map(|_| self.sample_elem(rng)).collect();
        let total = entries.iter().fold(0u64, |acc, a| (acc + a) % self.n);
        entries.push(self.neg(&total).unwrap());
        self.sum(entries)
    }
}

/// The bandified rational numbers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Band for Rationals {
    type Elem = Rational;

    fn id(&self) -> String {
        "ring:Q".into()
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
        sum.entries().iter().fold(Rational::zero(), |acc, a| acc + a.clone()).is_zero()
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
        a.checked_div(b).ok()
    }
}

impl SampleBand for Rationals {
    fn sample_elem(&self, rng: &mut ChaCha8Rng) -> Rational {
        random_rational(rng)
    }

    fn sample_null(&self, rng: &mut ChaCha8Rng, max_len: usize) -> FormalSum<Rational> {
        let k = rng.gen_range(1..max_len.max(2));
        let mut entries: Vec<Rational> = (0..k).map(|_| random_rational(rng)).collect();
        let total = entries.iter().fold(Rational::zero(), |acc, a| acc + a.clone());
        entries.push(-total);
        self.sum(entries)
    }
}

/// The bandified field Q(t).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RationalFunctions;

pub(crate) fn random_laurent(rng: &mut ChaCha8Rng) -> LaurentFrac {
    if rng.gen_ratio(1, 12) {
        return LaurentFrac::zero();
    }
    let mut poly = || {
        let terms = rng.gen_range(1..=2);
        UniPoly::from_terms((0..terms).map(|_| (rng.gen_range(0..3u32), Rational::from(rng.gen_range(-3i64..=3)))))
    };
    let num = poly();
    let den = poly();
    if num.is_zero() || den.is_zero() {
        return LaurentFrac::from_poly(UniPoly::monomial(Rational::one(), 1));
    }
    LaurentFrac::new(num, den).unwrap()
}

impl Band for RationalFunctions {
    type Elem = LaurentFrac;

    fn id(&self) -> String {
        "field:Qt-tadic".into()
    }
    fn zero(&self) -> LaurentFrac {
        LaurentFrac::zero()
    }
    fn one(&self) -> LaurentFrac {
        LaurentFrac::one()
    }
    fn mul(&self, a: &LaurentFrac, b: &LaurentFrac) -> LaurentFrac {
        a.mul(b)
    }
    fn is_null(&self, sum: &FormalSum<LaurentFrac>) -> bool {
        sum.entries().iter().fold(LaurentFrac::zero(), |acc, a| acc.add(a)).is_zero()
    }
    fn neg(&self, a: &LaurentFrac) -> Result<LaurentFrac, BandError> {
        Ok(a.neg())
    }
    fn unit_inverse(&self, a: &LaurentFrac) -> Inverse<LaurentFrac> {
        a.recip().map_or(Inverse::NonUnit, Inverse::Unit)
    }
    fn declares_tract(&self) -> Option<bool> {
        Some(true)
    }
    fn is_cancellative(&self) -> bool {
        true
    }
    fn divide(&self, a: &LaurentFrac, b: &LaurentFrac) -> Option<LaurentFrac> {
        a.checked_div(b).ok()
    }
}

impl SampleBand for RationalFunctions {
    fn sample_elem(&self, rng: &mut ChaCha8Rng) -> LaurentFrac {
        random_laurent(rng)
    }

    fn sample_null(&self, rng: &mut ChaCha8Rng, max_len: usize) -> FormalSum<LaurentFrac> {
        let k = rng.gen_range(1..max_len.max(2));
        let mut entries: Vec<LaurentFrac> = (0..k).map(|_| random_laurent(rng)).collect();
        let total = entries.iter().fold(LaurentFrac::zero(), |acc, a| acc.add(a));
        entries.push(total.neg());
        self.sum(entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::band::{check_morphism, enumerate_sums, is_tract, BandMorphism, Tractness};

    fn z(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn null_examples() {
        assert!(Integers.is_null(&Integers.sum([z(2), z(3), z(-5)])));
        let z4 = Residues::new(4).unwrap();
        assert!(z4.is_null(&z4.sum([2, 2])));
        assert!(!Rationals.is_null(&Rationals.sum([Rational::one()])));
        assert_eq!(Integers.neg(&z(5)).unwrap(), z(-5));
    }

    #[test]
    fn tract_status() {
        assert_eq!(is_tract(&Integers), Tractness::No);
        assert_eq!(is_tract(&Residues::new(5).unwrap()), Tractness::Yes);
        assert_eq!(is_tract(&Residues::new(6).unwrap()), Tractness::No);
        assert_eq!(Integers.unit_inverse(&z(2)), Inverse::NonUnit);
    }

    #[test]
    fn reduction_mod_n_is_a_morphism() {
        let entries: Vec<BigInt> = (-5..=5).filter(|v| *v != 0).map(z).collect();
        let nulls: Vec<FormalSum<BigInt>> =
            enumerate_sums(&entries, 4).into_iter().filter(|s| Integers.is_null(s)).collect();
        assert!(!nulls.is_empty());
        let pairs: Vec<(BigInt, BigInt)> = (-5..=5).flat_map(|a| (-5..=5).map(move |b| (z(a), z(b)))).collect();
        for n in 2..=7 {
            let target = Residues::new(n).unwrap();
            let f = BandMorphism::new("mod", Integers, target, move |a: &BigInt| target.reduce(a));
            let report = check_morphism(&f, &nulls, &pairs, None).unwrap();
            assert!(report.pass, "{report:?}");
        }
    }
}
