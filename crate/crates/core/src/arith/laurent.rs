//! The rational function field Q(t), ordered and valued at t = 0.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{ArithError, Rational};

/// Sparse univariate polynomial over Q, exponent -> nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UniPoly(BTreeMap<u32, Rational>);

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly(BTreeMap::new())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, exp: u32) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(exp, c);
        }
        UniPoly(m)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, Rational)>) -> Self {
        let mut p = UniPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exp: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(exp).or_insert_with(Rational::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.0.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &Rational)> {
        self.0.iter()
    }

    pub fn degree(&self) -> Option<u32> {
        self.0.keys().next_back().copied()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn order(&self) -> Option<u32> {
        self.0.keys().next().copied()
    }

    pub fn lowest_coeff(&self) -> Option<&Rational> {
        self.0.values().next()
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.0.values().next_back()
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let mut r = self.clone();
        for (e, c) in &other.0 {
            r.add_term(*e, c.clone());
        }
        r
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly(self.0.iter().map(|(e, c)| (*e, -c)).collect())
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        let mut r = UniPoly::zero();
        for (e1, c1) in &self.0 {
            for (e2, c2) in &other.0 {
                r.add_term(e1 + e2, c1 * c2);
            }
        }
        r
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly(self.0.iter().map(|(e, v)| (*e, v * c)).collect())
    }

    /// Euclidean division; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lc = divisor.leading_coeff().unwrap().clone();
        let mut q = UniPoly::zero();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let coeff = r.leading_coeff().unwrap().clone() / lc.clone();
            let term = UniPoly::monomial(coeff, rd - dd);
            r = r.sub(&term.mul(divisor));
            q = q.add(&term);
        }
        (q, r)
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading_coeff() {
            None => UniPoly::zero(),
            Some(lc) => self.scale(&lc.recip().unwrap()),
        }
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, (e, c)| acc + c * &t.pow(*e as i64).unwrap())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.0 {
            let neg = c.signum() < 0;
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}*t")?,
                (_, true) => write!(f, "t^{e}")?,
                (_, false) => write!(f, "{mag}*t^{e}")?,
            }
        }
        Ok(())
    }
}

/// t-adic order of an element of Q(t).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TOrder {
    Finite(i64),
    Infinite,
}

/// Element of Q(t), kept as a reduced fraction with monic denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "LaurentRepr", into = "LaurentRepr")]
pub struct LaurentFrac {
    num: UniPoly,
    den: UniPoly,
}

#[derive(Serialize, Deserialize)]
struct LaurentRepr {
    num: UniPoly,
    #[serde(default = "unit_poly")]
    den: UniPoly,
}

fn unit_poly() -> UniPoly {
    UniPoly::constant(Rational::one())
}

impl TryFrom<LaurentRepr> for LaurentFrac {
    type Error = ArithError;
    fn try_from(r: LaurentRepr) -> Result<Self, Self::Error> {
        LaurentFrac::new(r.num, r.den)
    }
}

impl From<LaurentFrac> for LaurentRepr {
    fn from(f: LaurentFrac) -> Self {
        LaurentRepr { num: f.num, den: f.den }
    }
}

impl LaurentFrac {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lc = den.leading_coeff().unwrap().recip().unwrap();
        Ok(LaurentFrac { num: num.scale(&lc), den: den.scale(&lc) })
    }

    pub fn zero() -> Self {
        LaurentFrac { num: UniPoly::zero(), den: unit_poly() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn t() -> Self {
        LaurentFrac { num: UniPoly::monomial(Rational::one(), 1), den: unit_poly() }
    }

    pub fn from_rational(c: Rational) -> Self {
        LaurentFrac { num: UniPoly::constant(c), den: unit_poly() }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        LaurentFrac { num: p, den: unit_poly() }
    }

    pub fn numerator(&self) -> &UniPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        LaurentFrac::new(num, self.den.mul(&other.den)).unwrap()
    }

    pub fn neg(&self) -> Self {
        LaurentFrac { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        LaurentFrac::new(self.num.mul(&other.num), self.den.mul(&other.den)).unwrap()
    }

    pub fn recip(&self) -> Result<Self, ArithError> {
        LaurentFrac::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ArithError> {
        Ok(self.mul(&other.recip()?))
    }

    /// ord_t(numerator) - ord_t(denominator).
    pub fn t_order(&self) -> TOrder {
        match self.num.order() {
            None => TOrder::Infinite,
            Some(n) => TOrder::Finite(n as i64 - self.den.order().unwrap() as i64),
        }
    }

    /// Sign as t -> 0+.
    pub fn leading_sign(&self) -> i8 {
        match self.num.lowest_coeff() {
            None => 0,
            Some(c) => c.signum() * self.den.lowest_coeff().unwrap().signum(),
        }
    }
}

impl fmt::Display for LaurentFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == unit_poly() {
            let single = self.num.terms().count() <= 1;
            if single {
                write!(f, "{}", self.num)
            } else {
                write!(f, "({})", self.num)
            }
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for LaurentFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
