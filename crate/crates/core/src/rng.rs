//! Deterministic pseudo-randomness for generators and batch studies.
//!
//! The contract is fixed so that seeded outputs never change: the generator
//! keeps 64 bits of state, advances by the golden-ratio increment and
//! finalizes with the mix below; `stream` derives independent per-trial
//! generators from a base seed. Uniform doubles use the top 53 bits.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// SplitMix-style generator: 64-bit state, splittable per trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Independent generator for trial `stream` of base seed `seed`.
    pub fn stream(seed: u64, stream: u64) -> Self {
        Self::new(mix(
            seed ^ mix(stream.wrapping_mul(GOLDEN).wrapping_add(GOLDEN))
        ))
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix(self.state)
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    #[inline]
    pub fn next_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform index in `0..n`. Panics if `n == 0`.
    #[inline]
    pub fn next_index(&mut self, n: usize) -> usize {
        assert!(n > 0, "next_index needs a nonempty range");
        ((self.next_f64() * n as f64) as usize).min(n - 1)
    }
}
