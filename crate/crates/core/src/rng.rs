use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Counter-based stream keyed by `(seed, index)`: the same pair yields the
/// same draws regardless of which thread or in which order it is consumed.
pub(crate) fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
