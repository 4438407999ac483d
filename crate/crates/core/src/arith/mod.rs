//! Exact value domains: rationals, nonnegative rationals and Q(t).

mod laurent;
mod rational;

use std::fmt::{Debug, Display};
use std::hash::Hash;

use thiserror::Error;

pub use laurent::{LaurentFrac, TOrder, UniPoly};
pub use rational::{NonNegRational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("expected a nonnegative value, got {0}")]
    Negative(String),
    #[error("cannot parse number `{0}`")]
    Parse(String),
}

/// A field with exact arithmetic, used as coefficient domain for polynomials.
pub trait Field: Clone + Eq + Ord + Hash + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn from_rational(c: Rational) -> Self;

    /// Named transcendental parameter of the field, if any (`t` for Q(t)).
    fn parameter(_name: &str) -> Option<Self> {
        None
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        self.recip().ok()
    }
    fn from_rational(c: Rational) -> Self {
        c
    }
    fn pow(&self, exp: u32) -> Self {
        Rational::pow(self, exp as i64).unwrap()
    }
}

impl Field for LaurentFrac {
    fn zero() -> Self {
        LaurentFrac::zero()
    }
    fn one() -> Self {
        LaurentFrac::one()
    }
    fn is_zero(&self) -> bool {
        LaurentFrac::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        LaurentFrac::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        LaurentFrac::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        LaurentFrac::mul(self, other)
    }
    fn neg(&self) -> Self {
        LaurentFrac::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        self.recip().ok()
    }
    fn from_rational(c: Rational) -> Self {
        LaurentFrac::from_rational(c)
    }
    fn parameter(name: &str) -> Option<Self> {
        (name == "t").then(LaurentFrac::t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rational() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| Rational::new(n, d).unwrap())
    }

    fn laurent() -> impl Strategy<Value = LaurentFrac> {
        let poly = proptest::collection::vec((0u32..4, -5i64..6), 0..4)
            .prop_map(|ts| UniPoly::from_terms(ts.into_iter().map(|(e, c)| (e, Rational::from(c)))));
        (poly.clone(), poly.prop_filter("nonzero", |p| !p.is_zero())).prop_map(|(n, d)| LaurentFrac::new(n, d).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn rational_add_sub_roundtrip(a in rational(), b in rational()) {
            prop_assert_eq!(&(&a + &b) - &b, a);
        }

        #[test]
        fn t_order_and_sign_multiplicative(f in laurent(), g in laurent()) {
            let fg = f.mul(&g);
            let expected = match (f.t_order(), g.t_order()) {
                (TOrder::Finite(a), TOrder::Finite(b)) => TOrder::Finite(a + b),
                _ => TOrder::Infinite,
            };
            prop_assert_eq!(fg.t_order(), expected);
            prop_assert_eq!(fg.leading_sign(), f.leading_sign() * g.leading_sign());
        }

        #[test]
        fn order_is_total_on_nonzero(f in laurent(), g in laurent()) {
            // f > g iff leading_sign(f - g) = +1; exactly one of >, =, < holds.
            let d = f.sub(&g).leading_sign();
            let r = g.sub(&f).leading_sign();
            prop_assert_eq!(d, -r);
            prop_assert_eq!(d == 0, f == g);
        }
    }
}
