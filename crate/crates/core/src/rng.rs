//! Deterministic seeded RNG substreams for property campaigns.
//!
//! Campaigns derive one substream per trial from a (seed, trial) pair, so
//! serial and parallel evaluation orders see identical randomness and the
//! aggregate is reproducible byte for byte.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent RNG for trial `index` of a campaign keyed by `seed`.
pub fn substream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
