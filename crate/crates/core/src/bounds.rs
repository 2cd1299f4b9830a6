//! Closed-form reward and regret bounds, and the reward/regret duality.
//!
//! All logarithms are natural. Bounds are returned as computed, including
//! negative values for small comparators.

use std::fmt;

use crate::constants::{era_factor, regret_scale, LOWER_BOUND_COEF, SMOOTH_OVERHEAD};
use crate::error::{config, Error, Result};

/// Parameters of a reward floor `kappa * exp(gamma * |g_{1:T}|) - eps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RewardBoundParams {
    pub kappa: f64,
    pub gamma: f64,
    pub eps: f64,
}

impl RewardBoundParams {
    pub fn new(kappa: f64, gamma: f64, eps: f64) -> Result<Self> {
        if !(kappa > 0.0 && gamma > 0.0 && eps >= 0.0) {
            return Err(config(format!(
                "need kappa > 0, gamma > 0, eps >= 0; got ({kappa}, {gamma}, {eps})"
            )));
        }
        Ok(Self { kappa, gamma, eps })
    }
}

/// A measured quantity against an analytic upper bound.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub name: String,
    pub measured: f64,
    pub bound: f64,
    /// `bound - measured`; nonnegative when the bound holds.
    pub slack: f64,
}

impl BoundReport {
    pub fn new(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            bound,
            slack: bound - measured,
        }
    }

    /// Whether `slack >= -tolerance`.
    pub fn holds(&self, tolerance: f64) -> bool {
        self.slack >= -tolerance
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: measured {:?} <= bound {:?} (slack {:?})",
            self.name, self.measured, self.bound, self.slack
        )
    }
}

/// `x ln(x / y)` with `0 ln 0 = 0`.
fn xlogx_over(x: f64, y: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * (x / y).ln()
    }
}

/// Regret ceiling implied by the reward floor:
/// `(R/gamma)(ln(R/(kappa gamma)) - 1) + eps`.
pub fn regret_bound_from_reward(params: &RewardBoundParams, radius: f64) -> f64 {
    let RewardBoundParams { kappa, gamma, eps } = *params;
    (xlogx_over(radius, kappa * gamma) - radius) / gamma + eps
}

/// Reward floor implied by the regret ceiling: `kappa exp(gamma G) - eps`.
pub fn reward_bound_from_regret(params: &RewardBoundParams, g_abs: f64) -> f64 {
    params.kappa * (params.gamma * g_abs).exp() - params.eps
}

/// Regret of the known-`H̄` learner against any `|x| <= R`:
/// `b R sqrt(H̄)(ln(4 R b sqrt(H̄) / eta_1) - 1) + eta_1 H̄`.
pub fn rd1d_regret_bound(eta1: f64, hbar: f64, radius: f64) -> f64 {
    let b = regret_scale();
    let scale = b * radius * hbar.sqrt();
    xlogx_over(scale, eta1 / 4.0) - scale + eta1 * hbar
}

/// Regret of the era-doubling learner:
/// `c R sqrt(H+1)(ln((R/eps)(2H+2)^(5/2)) - 1) + eps`.
pub fn guess_regret_bound(eps: f64, h: f64, radius: f64) -> f64 {
    if radius == 0.0 {
        return eps;
    }
    let c = era_factor();
    c * radius * (h + 1.0).sqrt() * ((radius / eps * (2.0 * h + 2.0).powf(2.5)).ln() - 1.0) + eps
}

/// The two `n`-dimensional regret bounds of the per-coordinate composite
/// with `eps_i = eps / n`: the coordinate sum, and its Cauchy-Schwarz relaxation.
pub fn ndim_regret_bound(eps: f64, h_per_coord: &[f64], comparator: &[f64]) -> Result<(f64, f64)> {
    let n = comparator.len();
    if h_per_coord.len() != n {
        return Err(Error::ShapeMismatch {
            expected: n,
            actual: h_per_coord.len(),
        });
    }
    if n == 0 {
        return Err(config("comparator must have at least one coordinate"));
    }
    let c = era_factor();
    let nf = n as f64;
    let per_coord: f64 = comparator
        .iter()
        .zip(h_per_coord)
        .map(|(&x, &h)| {
            let r = x.abs();
            if r == 0.0 {
                0.0
            } else {
                r * (h + 1.0).sqrt() * ((nf / eps * r * (2.0 * h + 2.0).powf(2.5)).ln() - 1.0)
            }
        })
        .sum();
    let l2 = comparator.iter().map(|x| x * x).sum::<f64>().sqrt();
    let h_total: f64 = h_per_coord.iter().sum();
    let relaxed = if l2 == 0.0 {
        0.0
    } else {
        l2 * (h_total + nf).sqrt() * ((nf / eps * l2 * l2 * (2.0 * h_total + 2.0).powf(2.5)).ln() - 1.0)
    };
    Ok((eps + c * per_coord, eps + c * relaxed))
}

/// Regret of the epoch-free learner: `R sqrt(T)(ln(R T^(3/2) / eta) - 1) + 1.76 eta`.
pub fn smooth_regret_bound(eta: f64, radius: f64, rounds: f64) -> f64 {
    let s = rounds.sqrt();
    if radius == 0.0 {
        return SMOOTH_OVERHEAD * eta;
    }
    radius * s * ((radius * rounds * s / eta).ln() - 1.0) + SMOOTH_OVERHEAD * eta
}

/// Lower bound on the worst-case regret of any learner with origin-regret at
/// most `eps`: `0.336 R sqrt(T ln(R sqrt(T) / eps))`.
pub fn lower_bound_value(radius: f64, eps: f64, rounds: f64) -> Result<f64> {
    if radius == 0.0 {
        return Ok(0.0);
    }
    let ratio = radius * rounds.sqrt() / eps;
    if !(ratio > 1.0) {
        return Err(Error::Inapplicable(format!(
            "R sqrt(T) / eps = {ratio} must exceed 1"
        )));
    }
    Ok(LOWER_BOUND_COEF * radius * (rounds * ratio.ln()).sqrt())
}

/// Coordinate sum of [`lower_bound_value`].
pub fn lower_bound_value_ndim(comparator: &[f64], eps: f64, rounds: f64) -> Result<f64> {
    comparator
        .iter()
        .map(|x| lower_bound_value(x.abs(), eps, rounds))
        .sum()
}

/// Order-of-magnitude bound `R sqrt(T ln 2n)` of normalized exponentiated
/// gradient on the L1 ball. The signed construction runs over `2n` weights,
/// which keeps the bound nonzero at `n = 1`.
pub fn eg_pm_regret_bound(radius: f64, rounds: f64, dim: usize) -> f64 {
    radius * (rounds * (2.0 * dim as f64).ln()).sqrt()
}

/// Linear-regret floor for fixed-regularizer FTRL.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FtrlFloor {
    /// `((T - 1) / 2)(|x| - eps_T)`.
    pub general: f64,
    /// `(T / 2)(|x| - eps_T)`, for even `T`.
    pub even: Option<f64>,
}

pub fn ftrl_bad_regret_floor(rounds: usize, comparator_abs: f64, eps_t: f64) -> Result<FtrlFloor> {
    let gap = comparator_abs - eps_t;
    if !(gap > 0.0) {
        return Err(Error::Inapplicable(format!(
            "|x| = {comparator_abs} must exceed eps_T = {eps_t}"
        )));
    }
    let t = rounds as f64;
    Ok(FtrlFloor {
        general: 0.5 * (t - 1.0) * gap,
        even: rounds.is_multiple_of(2).then_some(0.5 * t * gap),
    })
}

/// Grid maximizers of the two conjugate objectives against their closed forms.
#[derive(Debug, Clone, PartialEq)]
pub struct DualityReport {
    pub params: RewardBoundParams,
    pub radius: f64,
    pub g_abs: f64,
    /// `(1/gamma) ln(R / (gamma kappa))`.
    pub g_star: f64,
    pub g_star_grid: f64,
    pub g_step: f64,
    /// `gamma kappa exp(gamma G)`.
    pub r_star: f64,
    pub r_star_grid: f64,
    pub r_step: f64,
    /// Max over the `G` grid of `R G - kappa exp(gamma G) + eps`.
    pub regret_max_grid: f64,
    /// Max over the `R` grid of `R G - regret_bound_from_reward(R)`.
    pub reward_max_grid: f64,
}

impl DualityReport {
    pub fn argmax_within_one_step(&self) -> bool {
        (self.g_star_grid - self.g_star).abs() <= self.g_step
            && (self.r_star_grid - self.r_star).abs() <= self.r_step
    }

    /// Whether the grid maxima reproduce the closed-form bounds (never exceeding them).
    pub fn values_consistent(&self, rel_tol: f64) -> bool {
        let regret = regret_bound_from_reward(&self.params, self.radius);
        let reward = reward_bound_from_regret(&self.params, self.g_abs);
        let close = |grid: f64, exact: f64| {
            grid <= exact + 1e-12 * (1.0 + exact.abs()) && (exact - grid).abs() <= rel_tol * (1.0 + exact.abs())
        };
        close(self.regret_max_grid, regret) && close(self.reward_max_grid, reward)
    }
}

fn grid_argmax(lo: f64, hi: f64, points: usize, f: impl Fn(f64) -> f64) -> (f64, f64, f64) {
    let step = (hi - lo) / (points - 1) as f64;
    let (mut best_x, mut best_v) = (lo, f(lo));
    for i in 1..points {
        let x = lo + step * i as f64;
        let v = f(x);
        if v > best_v {
            best_x = x;
            best_v = v;
        }
    }
    (best_x, best_v, step)
}

/// Checks by grid search that the regret-direction objective
/// `R G - kappa e^(gamma G) + eps` peaks at `G*`, and the reward-direction
/// objective `R G - (R/gamma)(ln(R/(gamma kappa)) - 1) - eps` peaks at `R*`.
///
/// Grid ranges are set from the inputs' magnitudes, not from the closed forms.
pub fn duality_roundtrip_check(
    params: &RewardBoundParams,
    radius: f64,
    g_abs: f64,
    grid_points: usize,
) -> Result<DualityReport> {
    if !(radius > 0.0) || !(g_abs >= 0.0) {
        return Err(config("duality check needs R > 0 and G >= 0"));
    }
    if grid_points < 3 {
        return Err(config("duality grid needs at least 3 points"));
    }
    let RewardBoundParams { kappa, gamma, eps } = *params;
    let g_star = (radius / (gamma * kappa)).ln() / gamma;
    let r_star = gamma * kappa * (gamma * g_abs).exp();

    let half_width = (radius.ln().abs() + (gamma * kappa).ln().abs() + 1.0) / gamma;
    let (g_star_grid, regret_max_grid, g_step) = grid_argmax(-half_width, half_width, grid_points, |g| {
        radius * g - kappa * (gamma * g).exp() + eps
    });

    let r_hi = gamma * kappa * (gamma * g_abs + 2.0).exp();
    let (r_star_grid, reward_max_grid, r_step) = grid_argmax(0.0, r_hi, grid_points, |r| {
        r * g_abs - regret_bound_from_reward(params, r)
    });

    Ok(DualityReport {
        params: *params,
        radius,
        g_abs,
        g_star,
        g_star_grid,
        g_step,
        r_star,
        r_star_grid,
        r_step,
        regret_max_grid,
        reward_max_grid,
    })
}
