//! SplitMix64, the seedable generator behind every stochastic routine.
//!
//! The reference stream for seed 0 starts
//! `0xe220a8397b1dcdaf, 0x6e789e6aa1b965f4, 0x06c45d188009454f, 0xf88bb8a8724c81ec`.
//!
//! Parallel work splits a seed into independent streams: stream `i` of seed
//! `s` is a fresh SplitMix64 seeded with output `i` (zero-based) of
//! `SplitMix64::new(s)`. Any implementation of SplitMix64 reproduces the
//! same streams.

use crate::spherical::UniformPair;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub const fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Generator for worker stream `index` derived from `seed`.
    pub fn stream(seed: u64, index: u64) -> Self {
        Self::new(mix(
            seed.wrapping_add(GOLDEN_GAMMA.wrapping_mul(index.wrapping_add(1)))
        ))
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix(self.state)
    }

    /// Uniform double in `[0, 1)` from the top 53 bits.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
        (self.next_u64() >> 11) as f64 * SCALE
    }

    /// Two consecutive doubles as `(u1, u2)`.
    #[inline]
    pub fn next_pair(&mut self) -> UniformPair {
        let u1 = self.next_f64();
        let u2 = self.next_f64();
        UniformPair::new(u1, u2).expect("next_f64 is in [0, 1)")
    }
}

#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
