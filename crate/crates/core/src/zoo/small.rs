//! The finite bands F₁±, 𝕂 and 𝕊.

use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;

use crate::band::{Band, BandError, FormalSum, Inverse, SampleBand};

fn count(entries: &[i8], v: i8) -> usize {
    entries.iter().filter(|&&e| e == v).count()
}

fn sign_product(a: i8, b: i8) -> i8 {
    a * b
}

fn sign_inverse(a: i8) -> Inverse<i8> {
    if a == 0 {
        Inverse::NonUnit
    } else {
        Inverse::Unit(a)
    }
}

/// The regular partial field {0, 1, -1}; null sums are n·1 + n·(-1).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct F1Pm;

impl Band for F1Pm {
    type Elem = i8;

    fn id(&self) -> String {
        "f1pm".into()
    }
    fn zero(&self) -> i8 {
        0
    }
    fn one(&self) -> i8 {
        1
    }
    fn mul(&self, a: &i8, b: &i8) -> i8 {
        sign_product(*a, *b)
    }
    fn is_null(&self, sum: &FormalSum<i8>) -> bool {
        count(sum.entries(), 1) == count(sum.entries(), -1)
    }
    fn elements(&self) -> Option<Vec<i8>> {
        Some(vec![-1, 0, 1])
    }
    fn neg(&self, a: &i8) -> Result<i8, BandError> {
        Ok(-a)
    }
    fn unit_inverse(&self, a: &i8) -> Inverse<i8> {
        sign_inverse(*a)
    }
    fn is_cancellative(&self) -> bool {
        true
    }
    fn divide(&self, a: &i8, b: &i8) -> Option<i8> {
        (*b != 0).then(|| a * b)
    }
}

/// The Krasner band {0, 1}; null sums are n·1 with n ≠ 1.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Krasner;

impl Band for Krasner {
    type Elem = u8;

    fn id(&self) -> String {
        "krasner".into()
    }
    fn zero(&self) -> u8 {
        0
    }
    fn one(&self) -> u8 {
        1
    }
    fn mul(&self, a: &u8, b: &u8) -> u8 {
        a & b
    }
    fn is_null(&self, sum: &FormalSum<u8>) -> bool {
        sum.len() != 1
    }
    fn elements(&self) -> Option<Vec<u8>> {
        Some(vec![0, 1])
    }
    fn neg(&self, a: &u8) -> Result<u8, BandError> {
        Ok(*a)
    }
    fn unit_inverse(&self, a: &u8) -> Inverse<u8> {
        if *a == 1 {
            Inverse::Unit(1)
        } else {
            Inverse::NonUnit
        }
    }
    fn is_cancellative(&self) -> bool {
        true
    }
    fn divide(&self, a: &u8, b: &u8) -> Option<u8> {
        (*b == 1).then_some(*a)
    }
}

/// The sign band {0, 1, -1}; null sums contain both signs or are empty.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Sign;

impl Band for Sign {
    type Elem = i8;

    fn id(&self) -> String {
        "sign".into()
    }
    fn zero(&self) -> i8 {
        0
    }
    fn one(&self) -> i8 {
        1
    }
    fn mul(&self, a: &i8, b: &i8) -> i8 {
        sign_product(*a, *b)
    }
    fn is_null(&self, sum: &FormalSum<i8>) -> bool {
        let (n, m) = (count(sum.entries(), 1), count(sum.entries(), -1));
        n * m != 0 || n + m == 0
    }
    fn elements(&self) -> Option<Vec<i8>> {
        Some(vec![-1, 0, 1])
    }
    fn neg(&self, a: &i8) -> Result<i8, BandError> {
        Ok(-a)
    }
    fn unit_inverse(&self, a: &i8) -> Inverse<i8> {
        sign_inverse(*a)
    }
    fn is_cancellative(&self) -> bool {
        true
    }
    fn divide(&self, a: &i8, b: &i8) -> Option<i8> {
        (*b != 0).then(|| a * b)
    }
}

macro_rules! finite_sampler {
    ($band:ty) => {
        impl SampleBand for $band {
            fn sample_elem(&self, rng: &mut ChaCha8Rng) -> Self::Elem {
                *self.elements().unwrap().choose(rng).unwrap()
            }
        }
    };
}

finite_sampler!(F1Pm);
finite_sampler!(Krasner);
finite_sampler!(Sign);
