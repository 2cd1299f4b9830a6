//! Potential functions behind the epoch-free learner.

use crate::constants::SMOOTH_SHIFT;

/// Minimum-reward potential `N(G, t) = exp(G / sqrt t) / t`.
pub fn min_reward(g_abs: f64, t: f64) -> f64 {
    (g_abs / t.sqrt()).exp() / t
}

/// Step size `B(G, t) = t^(-3/2) exp(G / sqrt t)`.
pub fn smooth_step_size(g_abs: f64, t: f64) -> f64 {
    (g_abs / t.sqrt()).exp() / (t * t.sqrt())
}

/// Per-round slack paid when the running gradient sum changes sign:
/// `exp(1/sqrt(tau+1))/(tau+1) - 1/tau + tau^(-3/2)`.
pub fn eps_tilde(tau: f64) -> f64 {
    min_reward(1.0, tau + 1.0) - 1.0 / tau + 1.0 / (tau * tau.sqrt())
}

/// Partial sums `eps_{1:t}` for `t = 1..=rounds`, with
/// `eps_1 = N(1, 6)` and `eps_{t+1} = eps_tilde(t + 5)`.
pub fn eps_series_partial_sums(rounds: usize) -> Vec<f64> {
    let shift = SMOOTH_SHIFT as f64;
    let mut sums = Vec::with_capacity(rounds);
    let mut acc = 0.0;
    for t in 1..=rounds {
        acc += if t == 1 {
            min_reward(1.0, 1.0 + shift)
        } else {
            eps_tilde((t - 1) as f64 + shift)
        };
        sums.push(acc);
    }
    sums
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    #[test]
    fn step_size_examples() {
        assert_eq!(smooth_step_size(0.0, 1.0), 1.0);
        assert_eq!(smooth_step_size(0.0, 4.0), 0.125);
        assert!((smooth_step_size(3.0, 9.0) - E / 27.0).abs() < 1e-15);
        assert!((smooth_step_size(1.0, 6.0) - 0.102_346_525_634_350_58).abs() < 1e-15);
    }

    #[test]
    fn min_reward_examples() {
        for t in [1.0, 2.0, 7.5, 1e6] {
            assert_eq!(min_reward(0.0, t), 1.0 / t);
        }
        assert!((min_reward(1.0, 1.0) - E).abs() < 1e-15);
        assert!((min_reward(2.0, 4.0) - E / 4.0).abs() < 1e-15);
    }

    #[test]
    fn eps_tilde_values() {
        // independent evaluation: (1/7)e^(1/sqrt 7) - 1/6 + 6^(-3/2)
        assert!((eps_tilde(6.0) - 0.109_847_728_937_733_34).abs() < 1e-15);
        assert!(eps_tilde(1e6) < 1e-6 * E);
        for tau in 1..=1_000_000u32 {
            assert!(eps_tilde(tau as f64) > 0.0, "eps_tilde({tau}) <= 0");
        }
    }

    #[test]
    fn series_starts_with_n_1_6() {
        let s = eps_series_partial_sums(3);
        assert!((s[0] - 0.250_696_764_750_837_35).abs() < 1e-15);
        assert!((s[1] - s[0] - eps_tilde(6.0)).abs() < 1e-15);
        assert!((s[2] - s[1] - eps_tilde(7.0)).abs() < 1e-15);
    }
}
