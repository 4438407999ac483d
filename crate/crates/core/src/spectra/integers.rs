use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{PrimeSpace, SpecError};

/// The m-ideal {0} ∪ ⋃ (g) of the bandified integers, generators kept
/// nonnegative.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntIdeal {
    gens: BTreeSet<BigInt>,
}

impl IntIdeal {
    pub fn new(gens: impl IntoIterator<Item = BigInt>) -> Self {
        IntIdeal { gens: gens.into_iter().map(|g| g.abs()).filter(|g| !g.is_zero()).collect() }
    }

    /// ⋃ (p) over the given primes.
    pub fn from_primes(primes: impl IntoIterator<Item = u64>) -> Self {
        Self::new(primes.into_iter().map(BigInt::from))
    }

    pub fn generators(&self) -> &BTreeSet<BigInt> {
        &self.gens
    }

    pub fn contains(&self, a: &BigInt) -> bool {
        a.is_zero() || self.gens.iter().any(|g| a.is_multiple_of(g))
    }

    /// Proper, and every generator has a prime factor that lies in the ideal.
    /// A union of principal ideals is prime exactly in this case: primality
    /// puts some prime factor of each generator into the ideal, and then the
    /// ideal is the union of the prime ideals it contains.
    pub fn is_prime(&self) -> bool {
        if self.gens.iter().any(One::is_one) {
            return false;
        }
        self.gens.iter().all(|g| prime_factors(g).iter().any(|p| self.contains(p)))
    }
}

impl fmt::Display for IntIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "(0)");
        }
        let parts: Vec<String> = self.gens.iter().map(|g| format!("({g})")).collect();
        write!(f, "{}", parts.join(" ∪ "))
    }
}

fn prime_factors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            out.push(d.clone());
            while n.is_multiple_of(&d) {
                n /= &d;
            }
        }
        d += 1;
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

fn primes_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)).collect()
}

/// Spec of the bandified integers truncated to primes at most `bound`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntegerSpec {
    pub bound: u64,
}

/// Enumerating 2^k points is refused beyond this many primes.
const MAX_PRIMES: usize = 16;

impl PrimeSpace for IntegerSpec {
    type Elem = BigInt;
    type Ideal = IntIdeal;

    fn band_id(&self) -> String {
        "ring:Z".into()
    }

    fn primes(&self) -> Result<Vec<IntIdeal>, SpecError> {
        let ps = primes_up_to(self.bound);
        if ps.len() > MAX_PRIMES {
            return Err(SpecError::Unsupported {
                band: self.band_id(),
                reason: format!("{} primes below the bound give too many points", ps.len()),
            });
        }
        let mut out: Vec<IntIdeal> = (0u32..(1 << ps.len()))
            .map(|mask| IntIdeal::from_primes((0..ps.len()).filter(|i| mask >> i & 1 == 1).map(|i| ps[i])))
            .collect();
        out.sort_by(|a, b| a.gens.len().cmp(&b.gens.len()).then_with(|| a.cmp(b)));
        Ok(out)
    }

    fn contains(&self, ideal: &IntIdeal, a: &BigInt) -> bool {
        ideal.contains(a)
    }

    fn is_prime(&self, ideal: &IntIdeal) -> bool {
        ideal.is_prime()
    }

    fn is_subset(&self, a: &IntIdeal, b: &IntIdeal) -> bool {
        a.gens.iter().all(|g| b.contains(g))
    }

    /// Every integer in [-P, P], P the product of the primes in range.
    fn probes(&self) -> Vec<BigInt> {
        let p: i64 = primes_up_to(self.bound).iter().map(|&p| p as i64).product::<i64>().min(1000);
        (-p..=p).map(BigInt::from).collect()
    }

    fn label(&self, ideal: &IntIdeal) -> String {
        ideal.to_string()
    }

    fn describe(&self, ideal: &IntIdeal) -> serde_json::Value {
        serde_json::json!({ "union_of_multiples": ideal.gens.iter().map(ToString::to_string).collect::<Vec<_>>() })
    }
}
