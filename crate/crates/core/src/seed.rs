//! Seeding and sub-seed derivation.
//!
//! Every random draw in the crate comes from a [`ChaCha8Rng`] built with
//! `SeedableRng::seed_from_u64`, which is value-stable across platforms.
//! Sub-seeds are derived by folding indices through the SplitMix64
//! finalizer:
//!
//! ```text
//! derive(s, i) = mix(s ^ mix(i + 0x9E3779B97F4A7C15))
//! ```
//!
//! so `derive(seed, c).derive(i)` gives the per-(condition, image) seed and
//! a further `.derive(step_index)` gives the per-step seed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Seed(pub u64);

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl Seed {
    pub fn derive(self, index: u64) -> Seed {
        Seed(mix(self.0 ^ mix(index.wrapping_add(GOLDEN_GAMMA))))
    }

    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }
}

impl From<u64> for Seed {
    fn from(v: u64) -> Self {
        Seed(v)
    }
}
