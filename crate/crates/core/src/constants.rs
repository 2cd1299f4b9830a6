//! Fixed numeric constants of the reward-doubling analysis.

use std::f64::consts::LN_2;

/// Exponent rate of the known-`H̄` reward floor, `ln 2 / sqrt 3`.
pub fn reward_exponent_rate() -> f64 {
    LN_2 / 3f64.sqrt()
}

/// Reciprocal of [`reward_exponent_rate`], `sqrt 3 / ln 2` (< 2.5).
pub fn regret_scale() -> f64 {
    3f64.sqrt() / LN_2
}

/// Era summation factor `sqrt 2 / (sqrt 2 - 1)` (< 3.42).
pub fn era_factor() -> f64 {
    let r2 = 2f64.sqrt();
    r2 / (r2 - 1.0)
}

/// `P[G_6 >= sqrt 6] = 7/64`, the smallest single-block tail probability.
pub const BINOMIAL_TAIL_BASE: f64 = 7.0 / 64.0;

/// Coefficient of the one-dimensional lower bound.
pub const LOWER_BOUND_COEF: f64 = 0.336;

/// Constant origin-loss overhead of the epoch-free learner, in units of `eta`.
pub const SMOOTH_OVERHEAD: f64 = 1.76;

/// Round shift used by the epoch-free learner's step size.
pub const SMOOTH_SHIFT: u64 = 5;

/// All constants gathered in one value, for reporting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub p: f64,
    pub lower_coef: f64,
    pub smooth_overhead: f64,
    pub smooth_shift: u64,
}

impl Default for Constants {
    fn default() -> Self {
        Self {
            a: reward_exponent_rate(),
            b: regret_scale(),
            c: era_factor(),
            p: BINOMIAL_TAIL_BASE,
            lower_coef: LOWER_BOUND_COEF,
            smooth_overhead: SMOOTH_OVERHEAD,
            smooth_shift: SMOOTH_SHIFT,
        }
    }
}
