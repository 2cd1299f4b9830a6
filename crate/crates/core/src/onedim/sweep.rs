//! Grid sweeps of the two one-round inequalities that drive the epoch-free
//! learner's reward floor:
//!
//! * same-sign step (`tau >= 6`, `G > 0`, `G + g >= 0`):
//!   `N(G, tau) + g B(G, tau) - N(G + g, tau + 1) >= 0`
//! * sign change (`tau >= 1`, `g in [-1, 0]`, `G >= 0`, `G + g <= 0`):
//!   `N(G, tau) + g B(G, tau) >= N(-g - G, tau + 1) - eps_tilde(tau)`

use std::fmt;

use super::potential::{eps_tilde, min_reward, smooth_step_size};
use crate::error::{config, Result};
use crate::exec::Exec;

/// Margins below this are violations; anything above is rounding noise.
pub const MARGIN_TOLERANCE: f64 = -1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LemmaKind {
    SameSign,
    SignChange,
}

impl fmt::Display for LemmaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LemmaKind::SameSign => "rinv",
            LemmaKind::SignChange => "od",
        })
    }
}

/// Integer lattice for the sweep: `G` and `g` move in steps of `1 / steps_per_unit`.
#[derive(Debug, Clone, PartialEq)]
pub struct LemmaGrid {
    pub same_sign_tau_min: u32,
    pub sign_change_tau_min: u32,
    pub tau_max: u32,
    pub steps_per_unit: u32,
    /// Largest `G` for the same-sign lemma, in lattice steps.
    pub g_abs_max_steps: u32,
}

impl Default for LemmaGrid {
    fn default() -> Self {
        Self {
            same_sign_tau_min: 6,
            sign_change_tau_min: 1,
            tau_max: 1000,
            steps_per_unit: 100,
            g_abs_max_steps: 1000,
        }
    }
}

impl LemmaGrid {
    fn validate(&self) -> Result<()> {
        if self.same_sign_tau_min < 6 {
            return Err(config("same-sign lemma needs tau >= 6"));
        }
        if self.sign_change_tau_min < 1 {
            return Err(config("sign-change lemma needs tau >= 1"));
        }
        if self.steps_per_unit == 0 {
            return Err(config("grid needs at least one step per unit"));
        }
        if self.g_abs_max_steps == 0 {
            return Err(config("same-sign lemma needs G > 0; G range is empty"));
        }
        if self.tau_max < self.same_sign_tau_min.max(self.sign_change_tau_min) {
            return Err(config("tau_max is below the lemmas' minimum tau"));
        }
        Ok(())
    }
}

/// One evaluated grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LemmaPoint {
    pub lemma: LemmaKind,
    pub tau: f64,
    pub g_abs: f64,
    pub g: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

impl LemmaPoint {
    pub fn same_sign(tau: f64, g_abs: f64, g: f64) -> Self {
        let lhs = min_reward(g_abs, tau) + g * smooth_step_size(g_abs, tau);
        let rhs = min_reward(g_abs + g, tau + 1.0);
        Self::new(LemmaKind::SameSign, tau, g_abs, g, lhs, rhs)
    }

    pub fn sign_change(tau: f64, g_abs: f64, g: f64) -> Self {
        let lhs = min_reward(g_abs, tau) + g * smooth_step_size(g_abs, tau);
        let rhs = min_reward(-g - g_abs, tau + 1.0) - eps_tilde(tau);
        Self::new(LemmaKind::SignChange, tau, g_abs, g, lhs, rhs)
    }

    fn new(lemma: LemmaKind, tau: f64, g_abs: f64, g: f64, lhs: f64, rhs: f64) -> Self {
        Self {
            lemma,
            tau,
            g_abs,
            g,
            lhs,
            rhs,
            margin: lhs - rhs,
        }
    }

    pub fn is_violation(&self) -> bool {
        !(self.margin >= MARGIN_TOLERANCE)
    }
}

#[derive(Debug, Clone, Default)]
pub struct SweepReport {
    pub violations: Vec<LemmaPoint>,
    pub worst_same_sign: Option<LemmaPoint>,
    pub worst_sign_change: Option<LemmaPoint>,
    pub same_sign_points: u64,
    pub sign_change_points: u64,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn merge(mut self, other: SweepReport) -> SweepReport {
        self.violations.extend(other.violations);
        self.worst_same_sign = min_margin(self.worst_same_sign, other.worst_same_sign);
        self.worst_sign_change = min_margin(self.worst_sign_change, other.worst_sign_change);
        self.same_sign_points += other.same_sign_points;
        self.sign_change_points += other.sign_change_points;
        self
    }

    fn record(&mut self, p: LemmaPoint) {
        if p.is_violation() {
            self.violations.push(p);
        }
        match p.lemma {
            LemmaKind::SameSign => {
                self.same_sign_points += 1;
                self.worst_same_sign = min_margin(self.worst_same_sign, Some(p));
            }
            LemmaKind::SignChange => {
                self.sign_change_points += 1;
                self.worst_sign_change = min_margin(self.worst_sign_change, Some(p));
            }
        }
    }
}

fn min_margin(a: Option<LemmaPoint>, b: Option<LemmaPoint>) -> Option<LemmaPoint> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if y.margin < x.margin { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Evaluates both inequalities at every lattice point; violations are listed
/// in `tau`-major order regardless of `exec`.
pub fn verify_smooth_lemmas(grid: &LemmaGrid, exec: Exec) -> Result<SweepReport> {
    grid.validate()?;
    let tau_lo = grid.same_sign_tau_min.min(grid.sign_change_tau_min);
    let steps = grid.steps_per_unit as i64;
    let unit = grid.steps_per_unit as f64;
    let taus: Vec<u32> = (tau_lo..=grid.tau_max).collect();

    let partials = exec.map_slice(&taus, |&tau| {
        let mut report = SweepReport::default();
        let t = tau as f64;
        if tau >= grid.same_sign_tau_min {
            for k in 1..=grid.g_abs_max_steps as i64 {
                let g_abs = k as f64 / unit;
                for j in -steps..=steps {
                    if k + j < 0 {
                        continue;
                    }
                    report.record(LemmaPoint::same_sign(t, g_abs, j as f64 / unit));
                }
            }
        }
        if tau >= grid.sign_change_tau_min {
            for j in -steps..=0 {
                // G ranges over [0, -g]
                for k in 0..=-j {
                    report.record(LemmaPoint::sign_change(t, k as f64 / unit, j as f64 / unit));
                }
            }
        }
        report
    });
    Ok(partials.into_iter().fold(SweepReport::default(), SweepReport::merge))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_sign_with_zero_step_is_decrease_in_t() {
        let p = LemmaPoint::same_sign(6.0, 1.0, 0.0);
        assert!((p.lhs - min_reward(1.0, 6.0)).abs() == 0.0);
        assert!(p.margin > 0.0);
    }

    #[test]
    fn sign_change_is_tight_at_origin() {
        let p = LemmaPoint::sign_change(6.0, 0.0, -1.0);
        // N(0,6) - B(0,6) and N(1,7) - eps_tilde(6) agree analytically
        assert!(p.margin.abs() < 1e-15, "margin {}", p.margin);
        assert!(!p.is_violation());
    }

    #[test]
    fn grid_preconditions() {
        let bad = LemmaGrid {
            same_sign_tau_min: 5,
            ..LemmaGrid::default()
        };
        assert!(verify_smooth_lemmas(&bad, Exec::Sequential).is_err());
        let bad = LemmaGrid {
            sign_change_tau_min: 0,
            ..LemmaGrid::default()
        };
        assert!(verify_smooth_lemmas(&bad, Exec::Sequential).is_err());
        let bad = LemmaGrid {
            steps_per_unit: 0,
            ..LemmaGrid::default()
        };
        assert!(verify_smooth_lemmas(&bad, Exec::Sequential).is_err());
    }

    #[test]
    fn small_grid_passes_in_both_modes() {
        let grid = LemmaGrid {
            tau_max: 40,
            steps_per_unit: 20,
            g_abs_max_steps: 100,
            ..LemmaGrid::default()
        };
        let seq = verify_smooth_lemmas(&grid, Exec::Sequential).unwrap();
        let par = verify_smooth_lemmas(&grid, Exec::default()).unwrap();
        assert!(seq.passed());
        assert_eq!(seq.same_sign_points, par.same_sign_points);
        assert_eq!(seq.worst_sign_change, par.worst_sign_change);
        // 35 taus x 100 G values x (41 g values minus those with G+g<0)
        assert_eq!(seq.same_sign_points, 35 * (100 * 41 - (1..20).sum::<u64>()));
    }

    #[test]
    fn flags_a_false_inequality() {
        // below tau = 6 the same-sign lemma is not claimed; it fails at tau = 1
        let p = LemmaPoint::same_sign(1.0, 0.01, -1.0 + 0.01);
        assert!(p.is_violation());
    }
}
