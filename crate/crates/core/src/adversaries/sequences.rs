use std::fmt;
use std::str::FromStr;

use crate::error::{config, Error, Result};
use crate::rng;

/// The fixed families of adversarial gradient sequences.
#[derive(Debug, Clone, PartialEq)]
pub enum SequenceKind {
    /// i.i.d. uniform on `{-1, +1}`.
    Rademacher,
    AllOnes,
    /// `+1, -1, +1, ...`
    Alternating,
    /// `+1` for the first half, `-1` for the second (trailing 0 when odd).
    FtrlBad1,
    /// `+1` for the first half, `0` for the second (trailing 0 when odd).
    FtrlBad2,
    Custom(Vec<f64>),
}

impl SequenceKind {
    pub fn name(&self) -> &'static str {
        match self {
            SequenceKind::Rademacher => "rademacher",
            SequenceKind::AllOnes => "all_ones",
            SequenceKind::Alternating => "alternating",
            SequenceKind::FtrlBad1 => "ftrl_bad_1",
            SequenceKind::FtrlBad2 => "ftrl_bad_2",
            SequenceKind::Custom(_) => "custom",
        }
    }

    pub fn is_random(&self) -> bool {
        matches!(self, SequenceKind::Rademacher)
    }
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SequenceKind {
    type Err = Error;

    /// Parses every kind except `custom`, which needs data.
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "rademacher" => SequenceKind::Rademacher,
            "all_ones" => SequenceKind::AllOnes,
            "alternating" => SequenceKind::Alternating,
            "ftrl_bad_1" => SequenceKind::FtrlBad1,
            "ftrl_bad_2" => SequenceKind::FtrlBad2,
            other => return Err(config(format!("unknown sequence kind `{other}`"))),
        })
    }
}

/// A fully determined gradient sequence: `(kind, T, seed)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceSpec {
    pub kind: SequenceKind,
    pub rounds: usize,
    pub seed: u64,
}

impl SequenceSpec {
    pub fn new(kind: SequenceKind, rounds: usize, seed: u64) -> Self {
        Self { kind, rounds, seed }
    }

    /// The scalar sequence. For `custom`, `rounds` truncates the data.
    pub fn generate(&self) -> Vec<f64> {
        self.generate_stream(0)
    }

    fn generate_stream(&self, stream: u64) -> Vec<f64> {
        let t = self.rounds;
        match &self.kind {
            SequenceKind::Rademacher => rademacher_stream(t, self.seed, stream),
            SequenceKind::AllOnes => vec![1.0; t],
            SequenceKind::Alternating => (0..t).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect(),
            SequenceKind::FtrlBad1 => ftrl_bad_sequences(t).0,
            SequenceKind::FtrlBad2 => ftrl_bad_sequences(t).1,
            SequenceKind::Custom(values) => values.iter().copied().take(t).collect(),
        }
    }

    /// An `n`-dimensional sequence: every coordinate follows the same kind;
    /// random kinds draw coordinate `i` from stream `i` of the seed.
    pub fn generate_vec(&self, dim: usize) -> Vec<Vec<f64>> {
        let columns: Vec<Vec<f64>> = (0..dim).map(|i| self.generate_stream(i as u64)).collect();
        let rounds = columns.first().map_or(0, Vec::len);
        (0..rounds).map(|t| columns.iter().map(|c| c[t]).collect()).collect()
    }
}

/// `T` i.i.d. Rademacher gradients from stream 0 of `seed`.
pub fn rademacher(rounds: usize, seed: u64) -> Vec<f64> {
    rademacher_stream(rounds, seed, 0)
}

/// `T` i.i.d. Rademacher gradients from stream `stream` of `seed`.
pub fn rademacher_stream(rounds: usize, seed: u64, stream: u64) -> Vec<f64> {
    let mut r = rng::stream(seed, stream);
    (0..rounds).map(|_| rng::rademacher_draw(&mut r)).collect()
}

/// The two sequences that defeat fixed-regularizer FTRL, for `T = 2M (+1)`:
/// `(+1 x M, -1 x M)` and `(+1 x M, 0 x M)`, each with a trailing 0 when `T` is odd.
pub fn ftrl_bad_sequences(rounds: usize) -> (Vec<f64>, Vec<f64>) {
    let half = rounds / 2;
    let mut up_down = vec![1.0; half];
    up_down.extend(std::iter::repeat_n(-1.0, half));
    let mut up_flat = vec![1.0; half];
    up_flat.extend(std::iter::repeat_n(0.0, half));
    if rounds % 2 == 1 {
        up_down.push(0.0);
        up_flat.push(0.0);
    }
    (up_down, up_flat)
}
