//! Seeded, splittable random streams.
//!
//! Every random draw in the crate comes from a `xoshiro256++` generator.
//! Stream `i` of master seed `s` is seeded with the first output of a
//! `splitmix64` generator started at `s + i * 0x9E3779B97F4A7C15` (wrapping);
//! the `xoshiro256++` state is then expanded from that value with `splitmix64`
//! as well. A Rademacher draw is the top bit of one `next_u64` call (1 → +1).

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::{SplitMix64, Xoshiro256PlusPlus};

/// Identifier written into every CSV header comment.
pub const RNG_ALGORITHM: &str = "xoshiro256++/splitmix64-split";

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

pub type StreamRng = Xoshiro256PlusPlus;

/// Seed for stream `index` of `seed`.
pub fn stream_seed(seed: u64, index: u64) -> u64 {
    let mut mixer = SplitMix64::seed_from_u64(seed.wrapping_add(index.wrapping_mul(GOLDEN_GAMMA)));
    mixer.next_u64()
}

/// The independent generator for stream `index` of `seed`.
pub fn stream(seed: u64, index: u64) -> StreamRng {
    Xoshiro256PlusPlus::seed_from_u64(stream_seed(seed, index))
}

/// A uniform draw from `{-1, +1}`.
pub fn rademacher_draw<R: RngCore>(rng: &mut R) -> f64 {
    if rng.next_u64() >> 63 == 1 {
        1.0
    } else {
        -1.0
    }
}

/// `+1` with probability `p_plus`, else `-1`.
pub fn biased_sign_draw<R: RngCore>(rng: &mut R, p_plus: f64) -> f64 {
    // 53 random bits mapped into [0, 1)
    let u = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
    if u < p_plus {
        1.0
    } else {
        -1.0
    }
}
