//! Seeded random streams.
//!
//! Every stochastic operation takes an explicit [`RngStream`]; there is no
//! global RNG state. Streams are ChaCha8 generators whose 64-bit seeds are
//! derived by chaining a SplitMix64 finalizer over the master seed and a
//! path of identifiers, so each (sweep point, trajectory) pair owns an
//! independent, replayable stream regardless of scheduling order. Standard
//! normal variates use `rand_distr`'s ziggurat, which is deterministic for
//! a fixed crate version.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// SplitMix64 finalizer. Bijective on u64, good avalanche.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A seeded, splittable random stream.
#[derive(Clone, Debug)]
pub struct RngStream(ChaCha8Rng);

impl RngStream {
    pub fn from_seed(seed: u64) -> Self {
        RngStream(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Derive an independent stream from a master seed and a path of
    /// identifiers (model tag, parameter bits, trajectory index, ...).
    pub fn derive(master_seed: u64, path: &[u64]) -> Self {
        let mut s = mix64(master_seed);
        for &p in path {
            s = mix64(s ^ mix64(p));
        }
        Self::from_seed(s)
    }

    /// One standard normal draw.
    pub fn normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.0)
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.0.next_u32()
    }
    fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }
    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.0.fill_bytes(dest)
    }
    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> std::result::Result<(), rand::Error> {
        self.0.try_fill_bytes(dest)
    }
}
