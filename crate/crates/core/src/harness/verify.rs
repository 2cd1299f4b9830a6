use std::fmt;
use std::str::FromStr;

use super::sweep::lemma_checks;
use super::{CheckLine, Status};
use crate::adversaries::{binom_tail_bruteforce, ftrl_bad_sequences, rademacher_stream};
use crate::baselines::{gd_reward_closed_form, FixedFtrl, FtrlSign, GradientDescent};
use crate::bounds::{
    duality_roundtrip_check, ftrl_bad_regret_floor, guess_regret_bound, ndim_regret_bound, RewardBoundParams,
};
use crate::constants::SMOOTH_OVERHEAD;
use crate::error::{config, Error, Result};
use crate::exec::Exec;
use crate::learner::{run, Learner};
use crate::multidim::{compose, regret_coordinatewise, regret_decomposition, EpsSchedule};
use crate::onedim::{
    eps_series_partial_sums, rd1d_reward_floor, smooth_reward_floor, verify_smooth_lemmas, LemmaGrid,
    RewardDoubling1D, RewardDoubling1DGuess, SmoothRewardDoubling,
};
use crate::report::fmt_f64;
use crate::rng::{self, biased_sign_draw, rademacher_draw};
use crate::trace::{origin_regret, regret, Comparator};

/// The verification suites, by command-line name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Lemma1,
    Lemma2,
    Thm2,
    Thm3,
    Thm4,
    LemmaP,
    Thm7,
    Duality,
    SmoothLemmas,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Lemma1,
        Suite::Lemma2,
        Suite::Thm2,
        Suite::Thm3,
        Suite::Thm4,
        Suite::LemmaP,
        Suite::Thm7,
        Suite::Duality,
        Suite::SmoothLemmas,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma1 => "lemma1",
            Suite::Lemma2 => "lemma2",
            Suite::Thm2 => "thm2",
            Suite::Thm3 => "thm3",
            Suite::Thm4 => "thm4",
            Suite::LemmaP => "lemma-p",
            Suite::Thm7 => "thm7",
            Suite::Duality => "duality",
            Suite::SmoothLemmas => "smooth-lemmas",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|suite| suite.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
            config(format!("unknown suite `{s}`; expected one of {}", names.join(", ")))
        })
    }
}

/// Parameters of every suite. The defaults are the acceptance settings.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Relative tolerance for identities, absolute margin for inequalities.
    pub tolerance: f64,
    pub exec: Exec,

    pub gd_sequences: usize,
    pub gd_rounds: usize,
    pub gd_rates: Vec<f64>,

    pub rd1d_sequences: usize,
    pub rd1d_horizons: Vec<usize>,

    pub guess_sequences: usize,
    pub guess_rounds: usize,
    pub guess_eps: f64,
    pub guess_comparators: Vec<f64>,

    pub composite_dim: usize,
    pub composite_rounds: usize,
    pub composite_sequences: usize,
    pub composite_eps: f64,
    pub composite_comparators: usize,

    pub smooth_sequences: usize,
    pub smooth_rounds: usize,
    pub smooth_eta: f64,

    pub ftrl_eta: f64,
    pub ftrl_horizons: Vec<usize>,

    pub duality_kappas: Vec<f64>,
    pub duality_gammas: Vec<f64>,
    pub duality_eps: Vec<f64>,
    pub duality_radius: f64,
    pub duality_gradient_sum: f64,
    pub duality_grid_points: usize,

    pub lemma_grid: LemmaGrid,
    pub eps_series_rounds: usize,
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
        .collect()
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            tolerance: 1e-9,
            exec: Exec::default(),
            gd_sequences: 1000,
            gd_rounds: 200,
            gd_rates: vec![0.01, 0.1, 1.0],
            rd1d_sequences: 500,
            rd1d_horizons: vec![100, 1000],
            guess_sequences: 500,
            guess_rounds: 10_000,
            guess_eps: 1.0,
            guess_comparators: vec![0.1, -0.1, 1.0, -1.0, 10.0, -10.0],
            composite_dim: 10,
            composite_rounds: 1000,
            composite_sequences: 20,
            composite_eps: 1.0,
            composite_comparators: 20,
            smooth_sequences: 200,
            smooth_rounds: 10_000,
            smooth_eta: 1.0,
            ftrl_eta: 0.1,
            ftrl_horizons: vec![100, 1000],
            duality_kappas: log_grid(0.1, 10.0, 10),
            duality_gammas: log_grid(0.1, 10.0, 10),
            duality_eps: vec![0.0, 0.5, 2.0],
            duality_radius: 2.0,
            duality_gradient_sum: 1.0,
            duality_grid_points: 20_001,
            lemma_grid: LemmaGrid::default(),
            eps_series_rounds: 1_000_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub suite: Suite,
    pub checks: Vec<CheckLine>,
    pub status: Status,
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "[{}] {c}", self.suite)?;
        }
        let verdict = if self.status == Status::Pass { "PASS" } else { "FAIL" };
        write!(f, "[{}] overall: {verdict}", self.suite)
    }
}

/// Runs one suite and summarizes each check with its worst margin.
pub fn verify(suite: Suite, cfg: &VerifyConfig) -> Result<VerifyReport> {
    let checks = match suite {
        Suite::Lemma1 => lemma1(cfg)?,
        Suite::Lemma2 => lemma2(cfg)?,
        Suite::Thm2 => thm2(cfg)?,
        Suite::Thm3 => thm3(cfg)?,
        Suite::Thm4 => thm4(cfg)?,
        Suite::LemmaP => lemma_p(cfg)?,
        Suite::Thm7 => thm7(cfg)?,
        Suite::Duality => duality(cfg)?,
        Suite::SmoothLemmas => smooth_lemmas(cfg)?,
    };
    let status = Status::from_checks(&checks);
    Ok(VerifyReport { suite, checks, status })
}

fn min_f64(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(f64::INFINITY, f64::min)
}

fn max_f64(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(f64::NEG_INFINITY, f64::max)
}

/// Sequence `j < sequences` of a batch is Rademacher stream `j` of the
/// seed; the index just past the batch is the all-ones sequence.
fn batch_sequence(cfg: &VerifyConfig, rounds: usize, sequences: usize, j: usize) -> Vec<f64> {
    if j < sequences {
        rademacher_stream(rounds, cfg.seed, j as u64)
    } else {
        vec![1.0; rounds]
    }
}

fn lemma1(cfg: &VerifyConfig) -> Result<Vec<CheckLine>> {
    let mut checks = Vec::new();
    for &eta in &cfg.gd_rates {
        let errors: Vec<f64> = cfg
            .exec
            .map(cfg.gd_sequences, |j| -> Result<f64> {
                let g = batch_sequence(cfg, cfg.gd_rounds, cfg.gd_sequences, j);
                let trace = run(&mut GradientDescent::new(eta, 0.0)?, &g)?;
                let g_abs = trace.gradient_sum().unwrap_or(0.0).abs();
                let exact = gd_reward_closed_form(eta, g_abs, trace.squared_gradient_total());
                Ok((trace.cumulative_reward() - exact).abs() / exact.abs().max(1.0))
            })
            .into_iter()
            .collect::<Result<_>>()?;
        let worst = max_f64(errors);
        checks.push(CheckLine::new(
            format!("gradient-descent reward identity, eta={}", fmt_f64(eta)),
            worst <= cfg.tolerance,
            format!(
                "{} sequences of T={}, worst relative error {}",
                cfg.gd_sequences,
                cfg.gd_rounds,
                fmt_f64(worst)
            ),
        ));
    }
    Ok(checks)
}

fn lemma2(cfg: &VerifyConfig) -> Result<Vec<CheckLine>> {
    let mut checks = Vec::new();
    for &t in &cfg.rd1d_horizons {
        let n = cfg.rd1d_sequences + 1;
        let margins: Vec<f64> = cfg
            .exec
            .map(n, |j| -> Result<f64> {
                let g = batch_sequence(cfg, t, cfg.rd1d_sequences, j);
                let mut learner = RewardDoubling1D::for_horizon(t)?;
                let trace = run(&mut learner, &g)?;
                let g_abs = trace.gradient_sum().unwrap_or(0.0).abs();
                let floor = rd1d_reward_floor(learner.eta1(), learner.hbar(), g_abs);
                Ok(trace.cumulative_reward() - floor)
            })
            .into_iter()
            .collect::<Result<_>>()?;
        let worst = min_f64(margins);
        checks.push(CheckLine::new(
            format!("epoch-doubling reward floor, T={t}"),
            worst >= -cfg.tolerance,
            format!(
                "{} Rademacher sequences plus all-ones, eta1=1/T, budget=T, worst margin {}",
                cfg.rd1d_sequences,
                fmt_f64(worst)
            ),
        ));
    }
    Ok(checks)
}

fn thm2(cfg: &VerifyConfig) -> Result<Vec<CheckLine>> {
    let t = cfg.guess_rounds;
    let per_sequence: Vec<(f64, f64)> = cfg
        .exec
        .map(cfg.guess_sequences, |j| -> Result<(f64, f64)> {
            let g = rademacher_stream(t, cfg.seed, j as u64);
            let trace = run(&mut RewardDoubling1DGuess::new(cfg.guess_eps)?, &g)?;
            let h = trace.squared_gradient_total();
            let mut worst_slack = f64::INFINITY;
            for &c in &cfg.guess_comparators {
                let slack = guess_regret_bound(cfg.guess_eps, h, c.abs()) - regret(&trace, &Comparator::new(c))?;
                worst_slack = worst_slack.min(slack);
            }
            Ok((origin_regret(&trace), worst_slack))
        })
        .into_iter()
        .collect::<Result<_>>()?;
    let worst_origin = max_f64(per_sequence.iter().map(|p| p.0));
    let worst_slack = min_f64(per_sequence.iter().map(|p| p.1));
    let comps: Vec<String> = cfg.guess_comparators.iter().map(|c| fmt_f64(*c)).collect();
    Ok(vec![
        CheckLine::new(
            format!("origin-regret <= eps={}", fmt_f64(cfg.guess_eps)),
            worst_origin <= cfg.guess_eps + cfg.tolerance,
            format!(
                "{} Rademacher sequences of T={t}, worst origin-regret {}",
                cfg.guess_sequences,
                fmt_f64(worst_origin)
            ),
        ),
        CheckLine::new(
            "doubling-guess regret bound",
            worst_slack >= -cfg.tolerance,
            format!("comparators {}, worst slack {}", comps.join(","), fmt_f64(worst_slack)),
        ),
    ])
}

/// Deterministic comparator grid: the origin, then points with coordinates
/// uniform in `[-s, s]` for scales cycling through 0.1, 1, 10.
fn composite_comparators(cfg: &VerifyConfig) -> Vec<Vec<f64>> {
    let n = cfg.composite_dim;
    let mut r = rng::stream(cfg.seed, u64::MAX);
    let mut unit = || (rand_core::RngCore::next_u64(&mut r) >> 11) as f64 / (1u64 << 53) as f64;
    let mut grid = vec![vec![0.0; n]];
    let scales = [0.1, 1.0, 10.0];
    while grid.len() < cfg.composite_comparators {
        let s = scales[(grid.len() - 1) % scales.len()];
        grid.push((0..n).map(|_| s * (2.0 * unit() - 1.0)).collect());
    }
    grid.truncate(cfg.composite_comparators);
    grid
}

/// Even-numbered sequences are Rademacher per coordinate; odd-numbered ones
/// drift, with coordinate `i` drawing `+1` with probability `(i+1)/(n+1)`.
fn composite_sequence(cfg: &VerifyConfig, j: usize) -> Vec<Vec<f64>> {
    let n = cfg.composite_dim;
    let mut streams: Vec<_> = (0..n).map(|i| rng::stream(cfg.seed, (j * n + i) as u64)).collect();
    (0..cfg.composite_rounds)
        .map(|_| {
            streams
                .iter_mut()
                .enumerate()
                .map(|(i, r)| {
                    if j.is_multiple_of(2) {
                        rademacher_draw(r)
                    } else {
                        biased_sign_draw(r, (i + 1) as f64 / (n + 1) as f64)
                    }
                })
                .collect()
        })
        .collect()
}

fn thm3(cfg: &VerifyConfig) -> Result<Vec<CheckLine>> {
    let comparators = composite_comparators(cfg);
    struct Cell {
        exact: bool,
        resum_error: f64,
        slack: f64,
        relaxed_gap: f64,
    }
    let cells: Vec<Cell> = cfg
        .exec
        .map(cfg.composite_sequences, |j| -> Result<Cell> {
            let g = composite_sequence(cfg, j);
            let mut composite = compose(
                |e| RewardDoubling1DGuess::new(e).expect("positive share"),
                cfg.composite_dim,
                cfg.composite_eps,
                EpsSchedule::Uniform,
            )?;
            let trace = run(&mut composite, &g)?;
            let h = trace.squared_gradient_sums();
            let mut cell = Cell {
                exact: true,
                resum_error: 0.0,
                slack: f64::INFINITY,
                relaxed_gap: f64::INFINITY,
            };
            for x in &comparators {
                let cmp = Comparator::new(x.clone());
                let parts = regret_decomposition(&trace, &cmp)?;
                let total: f64 = parts.iter().sum();
                let same_order = regret_coordinatewise(&trace, &cmp)?;
                cell.exact &= total == same_order;
                let direct = regret(&trace, &cmp)?;
                cell.resum_error = cell.resum_error.max((total - direct).abs() / direct.abs().max(1.0));
                let (per_coord, relaxed) = ndim_regret_bound(cfg.composite_eps, &h, x)?;
                cell.slack = cell.slack.min(per_coord - total);
                if x.iter().map(|v| v * v).sum::<f64>() >= 1.0 {
                    cell.relaxed_gap = cell.relaxed_gap.min(relaxed - per_coord);
                }
            }
            Ok(cell)
        })
        .into_iter()
        .collect::<Result<_>>()?;
    let exact = cells.iter().all(|c| c.exact);
    let resum = max_f64(cells.iter().map(|c| c.resum_error));
    let slack = min_f64(cells.iter().map(|c| c.slack));
    let gap = min_f64(cells.iter().map(|c| c.relaxed_gap));
    let setting = format!(
        "n={}, T={}, {} sequences x {} comparators",
        cfg.composite_dim,
        cfg.composite_rounds,
        cfg.composite_sequences,
        comparators.len()
    );
    Ok(vec![
        CheckLine::new(
            "per-coordinate regrets sum to total regret",
            exact && resum <= cfg.tolerance,
            format!("{setting}; same-order sums identical, worst relative error against round-order sum {}", fmt_f64(resum)),
        ),
        CheckLine::new(
            "per-coordinate regret bound",
            slack >= -cfg.tolerance,
            format!("{setting}; worst slack {}", fmt_f64(slack)),
        ),
        CheckLine::new(
            "relaxed bound dominates per-coordinate bound",
            gap >= -cfg.tolerance,
            format!("comparators with l2 norm >= 1; smallest gap {}", fmt_f64(gap)),
        ),
    ])
}

fn thm4(cfg: &VerifyConfig) -> Result<Vec<CheckLine>> {
    let t = cfg.smooth_rounds;
    let eta = cfg.smooth_eta;
    let margins: Vec<f64> = cfg
        .exec
        .map(cfg.smooth_sequences + 1, |j| -> Result<f64> {
            let g = batch_sequence(cfg, t, cfg.smooth_sequences, j);
            let mut learner = SmoothRewardDoubling::new(eta)?;
            let mut reward = 0.0;
            let mut g_sum = 0.0;
            let mut worst = f64::INFINITY;
            for (i, gt) in g.iter().enumerate() {
                reward += learner.step(gt) * gt;
                g_sum += gt;
                worst = worst.min(reward - smooth_reward_floor(eta, g_sum.abs(), (i + 1) as u64));
            }
            Ok(worst)
        })
        .into_iter()
        .collect::<Result<_>>()?;
    let worst = min_f64(margins);
    Ok(vec![CheckLine::new(
        "potential learner per-round reward floor",
        worst >= -cfg.tolerance,
        format!(
            "eta={}, {} Rademacher sequences plus all-ones, T={t}, every round; worst margin {}",
            fmt_f64(eta),
            cfg.smooth_sequences,
            fmt_f64(worst)
        ),
    )])
}

fn lemma_p(cfg: &VerifyConfig) -> Result<Vec<CheckLine>> {
    let base = binom_tail_bruteforce(6, 6f64.sqrt(), cfg.exec)?;
    let mut checks = vec![CheckLine::new(
        "P[G_6 ≥ √6] = 7/64 exact",
        base.count == 7 && base.equals_ratio(7, 64),
        format!("{} of {} sign sequences", base.count, base.total()),
    )];
    for m in 1..=3u32 {
        let rounds = 6 * m;
        let tail = binom_tail_bruteforce(rounds, f64::from(m) * 6f64.sqrt(), cfg.exec)?;
        // count / 2^T >= (7/64)^m, cross-multiplied in integers
        let lhs = u128::from(tail.count) * 64u128.pow(m);
        let rhs = 7u128.pow(m) * (1u128 << rounds);
        checks.push(CheckLine::new(
            format!("P[G_{rounds} ≥ √({m}·{rounds})] ≥ (7/64)^{m}"),
            lhs >= rhs,
            format!(
                "{} of {} sequences = {}, bound {}",
                tail.count,
                tail.total(),
                fmt_f64(tail.value()),
                fmt_f64((7.0f64 / 64.0).powi(m as i32))
            ),
        ));
    }
    Ok(checks)
}

/// Sequence 1 measures the learner's origin-regret; sequence 2 shares its
/// first half, so the learner plays identically there and then cannot
/// follow the comparator.
fn thm7(cfg: &VerifyConfig) -> Result<Vec<CheckLine>> {
    let mut checks = Vec::new();
    for sign in [FtrlSign::Literal, FtrlSign::RewardAligned] {
        for &t in &cfg.ftrl_horizons {
            let (seq1, seq2) = ftrl_bad_sequences(t);
            let mut worst = f64::INFINITY;
            let mut detail = Vec::new();
            for direction in [1.0, -1.0] {
                let s1: Vec<f64> = seq1.iter().map(|g| direction * g).collect();
                let s2: Vec<f64> = seq2.iter().map(|g| direction * g).collect();
                let eps_t = origin_regret(&run(&mut FixedFtrl::quadratic(cfg.ftrl_eta, sign)?, &s1)?).max(0.0);
                let x_abs = 2.0 * eps_t + 1.0;
                let trace = run(&mut FixedFtrl::quadratic(cfg.ftrl_eta, sign)?, &s2)?;
                let measured = regret(&trace, &Comparator::new(direction * x_abs))?;
                let floor = ftrl_bad_regret_floor(t, x_abs, eps_t)?.general;
                worst = worst.min(measured - floor);
                detail.push(format!(
                    "{}: eps_T={} regret={} floor={}",
                    if direction > 0.0 { "+" } else { "-" },
                    fmt_f64(eps_t),
                    fmt_f64(measured),
                    fmt_f64(floor)
                ));
            }
            checks.push(CheckLine::new(
                format!(
                    "fixed-regularizer linear regret, {} sign, T={t}",
                    super::spec::sign_name(sign)
                ),
                worst >= -cfg.tolerance,
                format!("eta={}; {}", fmt_f64(cfg.ftrl_eta), detail.join("; ")),
            ));
        }
    }
    Ok(checks)
}

fn duality(cfg: &VerifyConfig) -> Result<Vec<CheckLine>> {
    let mut params = Vec::new();
    for &kappa in &cfg.duality_kappas {
        for &gamma in &cfg.duality_gammas {
            for &eps in &cfg.duality_eps {
                params.push(RewardBoundParams::new(kappa, gamma, eps)?);
            }
        }
    }
    let reports: Vec<_> = cfg
        .exec
        .map_slice(&params, |p| {
            duality_roundtrip_check(p, cfg.duality_radius, cfg.duality_gradient_sum, cfg.duality_grid_points)
        })
        .into_iter()
        .collect::<Result<_>>()?;
    let argmax_ok = reports.iter().filter(|r| r.argmax_within_one_step()).count();
    let values_ok = reports.iter().filter(|r| r.values_consistent(1e-4)).count();
    let n = reports.len();
    Ok(vec![
        CheckLine::new(
            "grid maximizers within one step of G* and R*",
            argmax_ok == n,
            format!(
                "{argmax_ok}/{n} parameter triples, R={}, G={}, {} grid points",
                fmt_f64(cfg.duality_radius),
                fmt_f64(cfg.duality_gradient_sum),
                cfg.duality_grid_points
            ),
        ),
        CheckLine::new(
            "grid maxima reproduce both closed-form bounds",
            values_ok == n,
            format!("{values_ok}/{n} parameter triples within 1e-4 relative"),
        ),
    ])
}

fn smooth_lemmas(cfg: &VerifyConfig) -> Result<Vec<CheckLine>> {
    let sweep = verify_smooth_lemmas(&cfg.lemma_grid, cfg.exec)?;
    let mut checks = lemma_checks(&sweep);
    let sums = eps_series_partial_sums(cfg.eps_series_rounds);
    let (worst_t, worst) = sums
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (i, &s)| if s > acc.1 { (i + 1, s) } else { acc });
    let first_over = sums.iter().position(|&s| s > SMOOTH_OVERHEAD).map(|i| i + 1);
    checks.push(CheckLine::new(
        format!("eps-series partial sums <= {SMOOTH_OVERHEAD}"),
        first_over.is_none(),
        match first_over {
            Some(t) => format!(
                "T up to {}: first exceeded at T={t}, largest {} at T={worst_t}",
                cfg.eps_series_rounds,
                fmt_f64(worst)
            ),
            None => format!("T up to {}: largest {} at T={worst_t}", cfg.eps_series_rounds, fmt_f64(worst)),
        },
    ));
    Ok(checks)
}
