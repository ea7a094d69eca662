//! Counter-based random substreams.
//!
//! Draw `index` of a computation seeded with `master_seed` always comes from
//! the same ChaCha8 keystream, whatever order (or thread) the draws are made
//! in. The key is the master seed, the stream id is the index.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SampleStream {
    pub master_seed: u64,
    pub index: u64,
}

impl SampleStream {
    pub fn new(master_seed: u64, index: u64) -> Self {
        Self { master_seed, index }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.index);
        rng
    }

    /// A stream whose master seed is derived from this one and a tag, for
    /// carving independent sub-experiments out of one seed.
    pub fn child(&self, tag: u64) -> SampleStream {
        SampleStream::new(
            derive_seed(derive_seed(self.master_seed, self.index), tag),
            0,
        )
    }
}

/// SplitMix64 finalizer applied to the pair. Used to derive seeds for
/// independent sub-computations from one master seed.
pub fn derive_seed(seed: u64, tag: u64) -> u64 {
    let mut z = seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15).rotate_left(17);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
