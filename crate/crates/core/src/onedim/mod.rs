//! One-dimensional reward-doubling learners.

mod guess;
mod potential;
mod rd1d;
mod smooth;
mod sweep;

pub use guess::RewardDoubling1DGuess;
pub use potential::{eps_tilde, eps_series_partial_sums, min_reward, smooth_step_size};
pub use rd1d::{rd1d_reward_floor, RewardDoubling1D};
pub use smooth::{smooth_reward_floor, SmoothRewardDoubling};
pub use sweep::{verify_smooth_lemmas, LemmaGrid, LemmaKind, LemmaPoint, SweepReport, MARGIN_TOLERANCE};
