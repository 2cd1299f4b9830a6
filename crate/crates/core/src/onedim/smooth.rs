use super::potential::{min_reward, smooth_step_size};
use crate::constants::{SMOOTH_OVERHEAD, SMOOTH_SHIFT};
use crate::error::{config, Result};
use crate::learner::Learner;

/// Epoch-free reward doubling: after `t` rounds with `G = g_{1:t} != 0` it
/// plays `eta * sign(G) * B(|G|, t + 5)`, and 0 whenever `G = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothRewardDoubling {
    eta: f64,
    rounds: u64,
    g_sum: f64,
}

impl SmoothRewardDoubling {
    pub fn new(eta: f64) -> Result<Self> {
        if !(eta > 0.0 && eta.is_finite()) {
            return Err(config(format!("learning rate must be positive, got {eta}")));
        }
        Ok(Self {
            eta,
            rounds: 0,
            g_sum: 0.0,
        })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// Rounds observed so far.
    pub fn rounds(&self) -> u64 {
        self.rounds
    }

    pub fn gradient_sum(&self) -> f64 {
        self.g_sum
    }
}

impl Learner for SmoothRewardDoubling {
    type Point = f64;

    fn play(&self) -> f64 {
        if self.g_sum == 0.0 {
            return 0.0;
        }
        let tau = (self.rounds + SMOOTH_SHIFT) as f64;
        self.eta * self.g_sum.signum() * smooth_step_size(self.g_sum.abs(), tau)
    }

    fn observe(&mut self, g: &f64) {
        self.g_sum += g;
        self.rounds += 1;
    }
}

/// Reward floor at the end of round `t`: `eta * N(G_t, t + 5) - 1.76 eta`.
pub fn smooth_reward_floor(eta: f64, g_abs: f64, t: u64) -> f64 {
    eta * min_reward(g_abs, (t + SMOOTH_SHIFT) as f64) - SMOOTH_OVERHEAD * eta
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learner::run;
    use proptest::prelude::*;

    #[test]
    fn plays_zero_first_and_on_zero_sum() {
        let mut l = SmoothRewardDoubling::new(1.0).unwrap();
        assert_eq!(l.step(&1.0), 0.0);
        assert!((l.play() - 0.102_346_525_634_350_58).abs() < 1e-15);
        l.observe(&-1.0);
        assert_eq!(l.play(), 0.0);
        l.observe(&-0.5);
        assert!(l.play() < 0.0);
    }

    #[test]
    fn eta_scales_plays() {
        let gs = [0.3, 1.0, -0.2, 0.9, 1.0];
        let a = run(&mut SmoothRewardDoubling::new(1.0).unwrap(), gs).unwrap();
        let b = run(&mut SmoothRewardDoubling::new(4.0).unwrap(), gs).unwrap();
        for (x, y) in a.plays().iter().zip(b.plays()) {
            assert_eq!(4.0 * x, *y);
        }
    }

    proptest! {
        #[test]
        fn per_round_floor(gs in prop::collection::vec(-1.0f64..=1.0, 1..2000)) {
            let eta = 1.0;
            let trace = run(&mut SmoothRewardDoubling::new(eta).unwrap(), &gs).unwrap();
            let mut g_sum = 0.0;
            for (t, (r, g)) in trace.running_rewards().iter().zip(&gs).enumerate() {
                g_sum += g;
                prop_assert!(g_sum.abs() <= (t + 1) as f64);
                prop_assert!(*r >= smooth_reward_floor(eta, g_sum.abs(), t as u64 + 1) - 1e-9);
            }
        }
    }
}
