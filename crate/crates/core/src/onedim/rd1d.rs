use crate::constants::reward_exponent_rate;
use crate::error::{config, Result};
use crate::learner::Learner;

/// Gradient descent in epochs, doubling the learning rate each time the
/// epoch's reward reaches `eta_i * H̄`.
///
/// On the round that closes an epoch the iterate restarts at the origin and
/// takes one step with the doubled rate along the most recent gradient.
#[derive(Debug, Clone, PartialEq)]
pub struct RewardDoubling1D {
    eta1: f64,
    hbar: f64,
    epoch: u32,
    eta: f64,
    epoch_reward: f64,
    next: f64,
    h_seen: f64,
}

impl RewardDoubling1D {
    pub fn new(eta1: f64, hbar: f64) -> Result<Self> {
        if !(eta1 > 0.0 && eta1.is_finite()) {
            return Err(config(format!("initial learning rate must be positive, got {eta1}")));
        }
        if !(hbar > 0.0 && hbar.is_finite()) {
            return Err(config(format!("squared-gradient bound must be positive, got {hbar}")));
        }
        Ok(Self {
            eta1,
            hbar,
            epoch: 1,
            eta: eta1,
            epoch_reward: 0.0,
            next: 0.0,
            h_seen: 0.0,
        })
    }

    /// `H̄ = T` and `eta_1 = 1/T`: constant loss against the origin over `T` rounds.
    pub fn for_horizon(rounds: usize) -> Result<Self> {
        if rounds == 0 {
            return Err(config("horizon must be at least one round"));
        }
        let t = rounds as f64;
        Self::new(1.0 / t, t)
    }

    pub fn eta1(&self) -> f64 {
        self.eta1
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Current epoch, starting at 1.
    pub fn epoch(&self) -> u32 {
        self.epoch
    }

    /// Learning rate of the current epoch, `2^(epoch-1) * eta_1`.
    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// Reward accumulated so far in the current epoch (`Q_i`).
    pub fn epoch_reward(&self) -> f64 {
        self.epoch_reward
    }

    /// Reward an epoch must reach before the rate doubles.
    pub fn epoch_target(&self) -> f64 {
        self.eta * self.hbar
    }

    /// Running sum of squared gradients.
    pub fn squared_gradient_sum(&self) -> f64 {
        self.h_seen
    }

    /// True once the observed squared gradients exceed `H̄`, voiding the reward floor.
    pub fn budget_exceeded(&self) -> bool {
        self.h_seen > self.hbar
    }
}

impl Learner for RewardDoubling1D {
    type Point = f64;

    fn play(&self) -> f64 {
        self.next
    }

    fn observe(&mut self, &g: &f64) {
        let x = self.next;
        self.epoch_reward += x * g;
        self.h_seen += g * g;
        if self.epoch_reward < self.eta * self.hbar {
            self.next = x + self.eta * g;
        } else {
            self.epoch += 1;
            self.eta *= 2.0;
            self.epoch_reward = 0.0;
            self.next = self.eta * g;
        }
    }
}

/// Reward floor of [`RewardDoubling1D`] when `sum g^2 <= H̄`:
/// `(1/4) eta_1 H̄ exp(a |g_{1:T}| / sqrt(H̄)) - eta_1 H̄`.
pub fn rd1d_reward_floor(eta1: f64, hbar: f64, g_abs_sum: f64) -> f64 {
    let scale = eta1 * hbar;
    0.25 * scale * (reward_exponent_rate() * g_abs_sum / hbar.sqrt()).exp() - scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learner::run;
    use proptest::prelude::*;

    #[test]
    fn hand_simulated_all_ones() {
        let mut l = RewardDoubling1D::new(1.0, 4.0).unwrap();
        assert_eq!(l.step(&1.0), 0.0);
        assert_eq!(l.epoch_reward(), 0.0);
        assert_eq!(l.play(), 1.0);
        for expected in [1.0, 2.0, 3.0] {
            assert_eq!(l.step(&1.0), expected);
        }
        // Q = 0 + 1 + 2 + 3 = 6 >= 4 closes epoch 1
        assert_eq!(l.epoch(), 2);
        assert_eq!(l.eta(), 2.0);
        assert_eq!(l.epoch_reward(), 0.0);
        assert_eq!(l.play(), 2.0);

        let mut fresh = RewardDoubling1D::new(1.0, 4.0).unwrap();
        let t = run(&mut fresh, [1.0; 4]).unwrap();
        assert_eq!(t.plays(), &[0.0, 1.0, 2.0, 3.0]);
        assert_eq!(t.cumulative_reward(), 6.0);
    }

    #[test]
    fn zero_gradients_stay_put() {
        let mut l = RewardDoubling1D::new(0.5, 10.0).unwrap();
        let t = run(&mut l, [0.0; 20]).unwrap();
        assert!(t.plays().iter().all(|&x| x == 0.0));
        assert_eq!(t.cumulative_reward(), 0.0);
        assert_eq!(l.epoch(), 1);
    }

    #[test]
    fn rejects_nonpositive_parameters() {
        assert!(RewardDoubling1D::new(0.0, 1.0).is_err());
        assert!(RewardDoubling1D::new(1.0, -1.0).is_err());
        assert!(RewardDoubling1D::for_horizon(0).is_err());
        let l = RewardDoubling1D::for_horizon(100).unwrap();
        assert_eq!((l.eta1(), l.hbar()), (0.01, 100.0));
    }

    #[test]
    fn floor_examples() {
        assert_eq!(rd1d_reward_floor(1.0, 1.0, 0.0), -0.75);
        // oracle: 0.25*4*exp(0.4001887*2) - 4, evaluated independently
        assert!((rd1d_reward_floor(1.0, 4.0, 4.0) - (-1.773_618_943_602_068_4)).abs() < 1e-12);
        let base = rd1d_reward_floor(1.0, 9.0, 2.0);
        assert!((rd1d_reward_floor(3.5, 9.0, 2.0) - 3.5 * base).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn epoch_trigger_is_sound(gs in prop::collection::vec(-1.0f64..=1.0, 1..300),
                                  eta1 in 0.001f64..1.0, hbar in 1.0f64..50.0) {
            let mut l = RewardDoubling1D::new(eta1, hbar).unwrap();
            for g in gs {
                let before_epoch = l.epoch();
                let target = l.epoch_target();
                let x = l.play();
                let q_after = l.epoch_reward() + x * g;
                l.observe(&g);
                if l.epoch() == before_epoch {
                    prop_assert!(q_after < target);
                } else {
                    prop_assert_eq!(l.epoch(), before_epoch + 1);
                    prop_assert!(q_after >= target);
                }
                prop_assert_eq!(l.eta(), eta1 * 2f64.powi(l.epoch() as i32 - 1));
            }
        }

        #[test]
        fn reward_floor_holds_within_budget(gs in prop::collection::vec(-1.0f64..=1.0, 1..400),
                                            eta1 in 0.001f64..1.0) {
            let hbar = gs.iter().map(|g| g * g).sum::<f64>().max(1e-3);
            let mut l = RewardDoubling1D::new(eta1, hbar).unwrap();
            let t = run(&mut l, &gs).unwrap();
            let g_abs = gs.iter().sum::<f64>().abs();
            prop_assert!(t.cumulative_reward() >= rd1d_reward_floor(eta1, hbar, g_abs) - 1e-9);
        }
    }
}
