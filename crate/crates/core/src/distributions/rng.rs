use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seedable, splittable pseudo-random state (ChaCha8).
///
/// Identical seeds give bit-identical sequences. Independent streams for
/// parallel workers come from [`RngState::stream`], which selects one of the
/// 2⁶⁴ ChaCha streams under the same key, or from [`RngState::split`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RngState {
    inner: ChaCha8Rng,
}

impl RngState {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Stream `index` of the generator keyed by `seed`.
    pub fn stream(seed: u64, index: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(index);
        Self { inner }
    }

    /// Derive an independent child generator, advancing `self`.
    pub fn split(&mut self) -> Self {
        let mut key = [0u8; 32];
        self.inner.fill_bytes(&mut key);
        Self {
            inner: ChaCha8Rng::from_seed(key),
        }
    }
}

impl RngCore for RngState {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}
