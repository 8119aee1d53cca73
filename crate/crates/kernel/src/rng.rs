use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Random source used by every simulation.
pub type SimRng = ChaCha8Rng;

/// Independent deterministic stream for `(seed, stream)`.
///
/// ChaCha is counter based: the seed picks the key and the stream id picks a
/// separate 64-bit nonce, so distinct ids never overlap.
pub fn rng_stream(seed: u64, stream: u64) -> SimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Packs a repetition index and a sub-stream (agent, purpose) into one id.
pub fn stream_id(repetition: u64, sub: u32) -> u64 {
    (repetition << 32) | sub as u64
}
