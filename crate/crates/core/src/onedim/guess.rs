use super::RewardDoubling1D;
use crate::error::{config, Result};
use crate::learner::Learner;

/// Reward doubling without a known `H̄`: era `i` runs [`RewardDoubling1D`]
/// with `H̄_i = 2^(i-1)` and `eta_1 = eps * 2^(-2i)`.
///
/// The gradient that pushes an era's squared-gradient sum past `H̄_i` is
/// still processed by that era's learner; the next era starts at the origin
/// on the following round.
#[derive(Debug, Clone, PartialEq)]
pub struct RewardDoubling1DGuess {
    eps: f64,
    era: u32,
    era_h: f64,
    inner: RewardDoubling1D,
}

impl RewardDoubling1DGuess {
    pub fn new(eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(config(format!("origin-regret budget must be positive, got {eps}")));
        }
        Ok(Self {
            eps,
            era: 1,
            era_h: 0.0,
            inner: Self::era_learner(eps, 1),
        })
    }

    /// `H̄_i = 2^(i-1)`.
    pub fn era_budget(era: u32) -> f64 {
        2f64.powi(era as i32 - 1)
    }

    /// `eta_1^i = eps * 2^(-2i)`.
    pub fn era_initial_rate(eps: f64, era: u32) -> f64 {
        eps * 2f64.powi(-2 * era as i32)
    }

    fn era_learner(eps: f64, era: u32) -> RewardDoubling1D {
        RewardDoubling1D::new(Self::era_initial_rate(eps, era), Self::era_budget(era))
            .expect("era parameters are positive")
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn era(&self) -> u32 {
        self.era
    }

    /// Sum of squared gradients seen in the current era.
    pub fn era_squared_gradients(&self) -> f64 {
        self.era_h
    }

    pub fn inner(&self) -> &RewardDoubling1D {
        &self.inner
    }
}

impl Learner for RewardDoubling1DGuess {
    type Point = f64;

    fn play(&self) -> f64 {
        self.inner.play()
    }

    fn observe(&mut self, g: &f64) {
        self.inner.observe(g);
        self.era_h += g * g;
        if self.era_h > Self::era_budget(self.era) {
            self.era += 1;
            self.era_h = 0.0;
            self.inner = Self::era_learner(self.eps, self.era);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learner::run;
    use proptest::prelude::*;

    #[test]
    fn first_two_eras() {
        let mut l = RewardDoubling1DGuess::new(1.0).unwrap();
        assert_eq!(l.era(), 1);
        assert_eq!(l.inner().hbar(), 1.0);
        assert_eq!(l.inner().eta1(), 0.25);
        l.observe(&1.0);
        assert_eq!(l.era(), 1);
        l.observe(&-1.0);
        // era_h = 2 > 1 closes era 1
        assert_eq!(l.era(), 2);
        assert_eq!(l.inner().hbar(), 2.0);
        assert_eq!(l.inner().eta1(), 1.0 / 16.0);
        assert_eq!(l.play(), 0.0);
    }

    #[test]
    fn zero_gradients_never_advance() {
        let mut l = RewardDoubling1DGuess::new(0.5).unwrap();
        let t = run(&mut l, [0.0; 50]).unwrap();
        assert_eq!(l.era(), 1);
        assert!(t.plays().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn rejects_bad_eps() {
        assert!(RewardDoubling1DGuess::new(0.0).is_err());
        assert!(RewardDoubling1DGuess::new(f64::INFINITY).is_err());
    }

    proptest! {
        #[test]
        fn era_schedule_and_overshoot(gs in prop::collection::vec(-1.0f64..=1.0, 0..500),
                                      eps in 0.01f64..10.0) {
            let mut l = RewardDoubling1DGuess::new(eps).unwrap();
            let mut era_h = 0.0;
            for g in &gs {
                let era = l.era();
                l.observe(g);
                era_h += g * g;
                // the overflowing gradient is counted in the closing era
                prop_assert!(era_h <= RewardDoubling1DGuess::era_budget(era) + 1.0);
                if l.era() != era {
                    era_h = 0.0;
                }
                prop_assert_eq!(l.inner().hbar(), 2f64.powi(l.era() as i32 - 1));
                prop_assert_eq!(l.inner().eta1(), eps * 2f64.powi(-2 * l.era() as i32));
            }
            let t = run(&mut RewardDoubling1DGuess::new(eps).unwrap(), &gs).unwrap();
            prop_assert!(-t.cumulative_reward() <= eps + 1e-9);
        }
    }
}
