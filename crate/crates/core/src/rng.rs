//! Seeded randomness.
//!
//! Every random draw in the crate comes from [`ChaCha8Rng`] seeded with
//! `SeedableRng::seed_from_u64`. A Bernoulli(q) draw takes the top 53 bits
//! of the next `u64` as a uniform in `[0, 1)` and succeeds when it is `< q`.
//! Sub-seeds for attempts, blocks and trials are derived with [`derive_seed`].

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Stream tags separating the seed families derived from one master seed.
pub mod tag {
    pub const LEMMA_ATTEMPT: u64 = 0x4c45_4d4d_4131; // "LEMMA1"
    pub const CHAIN_BLOCK: u64 = 0x4348_4149_4e42; // "CHAINB"
    pub const TRIAL: u64 = 0x5452_4941_4c53; // "TRIALS"
}

pub struct Rng(ChaCha8Rng);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Uniform in `[0, 1)` with 53 bits of resolution.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    #[inline]
    pub fn bernoulli(&mut self, q: f64) -> bool {
        self.uniform() < q
    }
}

/// SplitMix64 output function.
#[inline]
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// `splitmix64(splitmix64(master ^ splitmix64(tag)) ^ index)`.
pub fn derive_seed(master: u64, tag: u64, index: u64) -> u64 {
    splitmix64(splitmix64(master ^ splitmix64(tag)) ^ index)
}
