use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Band, FormalSum};

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seeded random generation of elements and null sums.
pub trait SampleBand: Band {
    fn sample_elem(&self, rng: &mut ChaCha8Rng) -> Self::Elem;

    /// A random null sum with at most `max_len` entries.
    ///
    /// The default builds `a + (-a)` plus a scaled copy of another such pair,
    /// which stays null in every band.
    fn sample_null(&self, rng: &mut ChaCha8Rng, max_len: usize) -> FormalSum<Self::Elem>
    where
        Self: Sized,
    {
        let mut entries = Vec::new();
        while entries.len() + 2 <= max_len.max(2) {
            let a = self.sample_elem(rng);
            let b = self.neg(&a).expect("zoo bands have inverses");
            entries.push(a);
            entries.push(b);
            if rng.gen_bool(0.5) {
                break;
            }
        }
        self.sum(entries)
    }

    /// A random formal sum, usually not null.
    fn sample_sum(&self, rng: &mut ChaCha8Rng, max_len: usize) -> FormalSum<Self::Elem>
    where
        Self: Sized,
    {
        let len = rng.gen_range(0..=max_len);
        self.sum((0..len).map(|_| self.sample_elem(rng)))
    }
}
