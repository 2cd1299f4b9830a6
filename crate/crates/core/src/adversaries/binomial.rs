use crate::error::{Error, Result};
use crate::exec::Exec;

/// Largest `T` for which every sign sequence is enumerated.
pub const ENUMERATION_CAP: u32 = 24;

/// An exact probability `count / 2^T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TailProbability {
    pub count: u64,
    pub rounds: u32,
}

impl TailProbability {
    pub fn total(&self) -> u64 {
        1u64 << self.rounds
    }

    pub fn value(&self) -> f64 {
        self.count as f64 / self.total() as f64
    }

    /// Whether this probability equals `num / den` exactly.
    pub fn equals_ratio(&self, num: u64, den: u64) -> bool {
        u128::from(self.count) * u128::from(den) == u128::from(num) * u128::from(self.total())
    }
}

/// Counts the sign sequences in `{-1, +1}^T` whose sum is at least
/// `threshold`, by visiting every one of them.
pub fn binom_tail_bruteforce(rounds: u32, threshold: f64, exec: Exec) -> Result<TailProbability> {
    if rounds > ENUMERATION_CAP {
        return Err(Error::EnumerationTooLarge {
            requested: rounds,
            cap: ENUMERATION_CAP,
        });
    }
    let total = 1u64 << rounds;
    const CHUNK: u64 = 1 << 14;
    let chunks = total.div_ceil(CHUNK);
    let count = exec.count(chunks, |c| {
        let lo = c * CHUNK;
        let hi = (lo + CHUNK).min(total);
        (lo..hi)
            .filter(|&mask| {
                let sum: i64 = (0..rounds)
                    .map(|bit| if mask >> bit & 1 == 1 { 1 } else { -1 })
                    .sum();
                sum as f64 >= threshold
            })
            .count() as u64
    });
    Ok(TailProbability { count, rounds })
}
