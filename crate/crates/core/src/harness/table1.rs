use std::fmt;
use std::path::PathBuf;

use super::spec::AlgorithmSpec;
use super::{write_file, CheckLine, Status};
use crate::adversaries::{lower_bound_search, SearchConfig, SequenceKind, SequenceSpec};
use crate::baselines::gd_standard_regret_bound;
use crate::bounds::{ndim_regret_bound, smooth_regret_bound};
use crate::constants::SMOOTH_OVERHEAD;
use crate::error::{config, Result};
use crate::exec::Exec;
use crate::learner::run;
use crate::multidim::EpsSchedule;
use crate::onedim::RewardDoubling1DGuess;
use crate::report::{fmt_f64, write_table, CsvHeader};
use crate::trace::{regret, Comparator, Trace};

#[derive(Debug, Clone, PartialEq)]
pub struct Table1Config {
    pub radius: f64,
    pub rounds: usize,
    pub dim: usize,
    pub eps: f64,
    pub seed: u64,
    /// Rademacher sequences per horizon.
    pub batch: usize,
    /// Candidates examined when looking for a witness sequence.
    pub witness_budget: u64,
    pub out: PathBuf,
    pub exec: Exec,
}

impl Table1Config {
    pub fn new(out: impl Into<PathBuf>) -> Self {
        Self {
            radius: 1.0,
            rounds: 10_000,
            dim: 1,
            eps: 1.0,
            seed: 0,
            batch: 20,
            witness_budget: 4096,
            out: out.into(),
            exec: Exec::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.rounds < 10 {
            return Err(config("the comparison table needs T >= 10 (it also runs T/10)"));
        }
        if self.dim == 0 {
            return Err(config("dimension must be at least 1"));
        }
        if !(self.radius > 0.0 && self.eps > 0.0) {
            return Err(config("radius and eps must be positive"));
        }
        Ok(())
    }
}

impl fmt::Display for Table1Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "radius={:?} T={} n={} eps={:?}", self.radius, self.rounds, self.dim, self.eps)?;
        writeln!(f, "horizons={},{}", self.rounds / 10, self.rounds)?;
        writeln!(f, "batch={} witness_budget={} seed={}", self.batch, self.witness_budget, self.seed)?;
        write!(f, "out={}", self.out.display())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Origin,
    InBall,
    Beyond,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::Origin => "origin",
            Regime::InBall => "in_ball",
            Regime::Beyond => "beyond",
        }
    }
}

/// Worst measured regret over the shared sequences for one
/// (regime, algorithm, horizon) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct Table1Row {
    pub regime: Regime,
    pub algorithm: &'static str,
    pub rounds: usize,
    /// Euclidean norm of the comparator.
    pub comparator_norm: f64,
    /// Sequence attaining the worst regret.
    pub sequence: String,
    pub measured: f64,
    pub bound_name: &'static str,
    /// Closed-form regret bound on the attaining sequence, when one applies.
    pub bound: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct Table1Report {
    pub rows: Vec<Table1Row>,
    pub checks: Vec<CheckLine>,
    pub path: PathBuf,
    pub status: Status,
}

impl Table1Report {
    pub fn row(&self, regime: Regime, algorithm: &str, rounds: usize) -> Option<&Table1Row> {
        self.rows
            .iter()
            .find(|r| r.regime == regime && r.algorithm == algorithm && r.rounds == rounds)
    }
}

const ALGORITHMS: [&str; 4] = ["reward-doubling", "smooth", "pgd", "eg"];

fn algorithm(name: &str, cfg: &Table1Config, rounds: usize) -> AlgorithmSpec {
    let root_t = (rounds as f64).sqrt();
    match name {
        "reward-doubling" => AlgorithmSpec::Guess { eps: cfg.eps },
        "smooth" => AlgorithmSpec::Smooth {
            eta: cfg.eps / SMOOTH_OVERHEAD,
        },
        "pgd" => AlgorithmSpec::Pgd {
            eta: cfg.radius / root_t,
            radius: cfg.radius,
        },
        "eg" => AlgorithmSpec::Eg { eta: 1.0 / root_t },
        _ => unreachable!("fixed algorithm list"),
    }
}

/// The shared sequences at one horizon: a Rademacher batch, alternating,
/// all-ones, and (when the search finds one) a witness sequence against the
/// doubling-guess learner, repeated on every coordinate.
fn shared_sequences(cfg: &Table1Config, rounds: usize) -> Result<Vec<(String, Vec<Vec<f64>>)>> {
    let mut out = Vec::new();
    for j in 0..cfg.batch {
        let seed = cfg.seed.wrapping_add(j as u64);
        let spec = SequenceSpec::new(SequenceKind::Rademacher, rounds, seed);
        out.push((format!("rademacher:{j}"), spec.generate_vec(cfg.dim)));
    }
    for kind in [SequenceKind::Alternating, SequenceKind::AllOnes] {
        out.push((kind.name().to_string(), SequenceSpec::new(kind, rounds, 0).generate_vec(cfg.dim)));
    }
    let search = SearchConfig {
        radius: cfg.radius,
        eps: cfg.eps,
        rounds,
        budget: cfg.witness_budget,
        seed: cfg.seed,
        stop_at_first: true,
        exec: cfg.exec,
    };
    // an inapplicable search (R sqrt(T) / eps too small) just means no witness row
    if let Ok(outcome) = lower_bound_search(|| RewardDoubling1DGuess::new(cfg.eps).expect("eps > 0"), &search) {
        if let Some(w) = outcome.witness {
            let rows = w.sequence.iter().map(|g| vec![*g; cfg.dim]).collect();
            out.push((format!("witness:{}", w.index), rows));
        }
    }
    Ok(out)
}

struct Measured {
    sequence: usize,
    origin: f64,
    in_ball: f64,
    beyond: Option<f64>,
    h_per: Vec<f64>,
}

fn bound(alg: &AlgorithmSpec, regime: Regime, cfg: &Table1Config, rounds: usize, h_per: &[f64]) -> Result<(&'static str, Option<f64>)> {
    let n = cfg.dim as f64;
    let scale = match regime {
        Regime::Origin => 0.0,
        Regime::InBall => cfg.radius,
        Regime::Beyond => 2.0 * cfg.radius,
    };
    let x = vec![scale / n.sqrt(); cfg.dim];
    Ok(match *alg {
        AlgorithmSpec::Guess { eps } => ("coordinate_regret", Some(ndim_regret_bound(eps, h_per, &x)?.0)),
        AlgorithmSpec::Smooth { eta } => (
            "smooth_regret",
            Some(x.iter().map(|xi| smooth_regret_bound(eta / n, xi.abs(), rounds as f64)).sum()),
        ),
        AlgorithmSpec::Pgd { eta, radius } if regime != Regime::Beyond => (
            "gd_standard_regret",
            Some(gd_standard_regret_bound(eta, scale.min(radius), h_per.iter().sum())),
        ),
        _ => ("none", None),
    })
}

fn max_by_value(items: impl Iterator<Item = (usize, f64)>) -> Option<(usize, f64)> {
    items.fold(None, |best, (i, v)| match best {
        Some((_, b)) if b >= v => best,
        _ => Some((i, v)),
    })
}

/// Regret of every algorithm in the three comparator regimes on shared
/// sequences at horizons `T/10` and `T`, plus ordering checks: the doubling
/// learners keep origin-regret under `eps` while projected GD and EG grow
/// like `sqrt(T)`, and beyond the ball projected GD grows linearly.
pub fn table1(cfg: &Table1Config) -> Result<Table1Report> {
    cfg.validate()?;
    let horizons = [cfg.rounds / 10, cfg.rounds];
    let n = cfg.dim as f64;
    let unit = 1.0 / n.sqrt();
    let mut rows = Vec::new();
    for &rounds in &horizons {
        let sequences = shared_sequences(cfg, rounds)?;
        for name in ALGORITHMS {
            let alg = algorithm(name, cfg, rounds);
            let measured: Vec<Measured> = cfg
                .exec
                .map(sequences.len(), |s| -> Result<Measured> {
                    let (label, g) = &sequences[s];
                    let trace: Trace<Vec<f64>> = run(&mut alg.build_vector(cfg.dim, EpsSchedule::Uniform)?, g)?;
                    let at = |c: f64| regret(&trace, &Comparator::new(vec![c * unit; cfg.dim]));
                    Ok(Measured {
                        sequence: s,
                        origin: at(0.0)?,
                        in_ball: at(cfg.radius)?.max(at(-cfg.radius)?),
                        beyond: if label == "all_ones" { Some(at(2.0 * cfg.radius)?) } else { None },
                        h_per: trace.squared_gradient_sums(),
                    })
                })
                .into_iter()
                .collect::<Result<_>>()?;
            for regime in [Regime::Origin, Regime::InBall, Regime::Beyond] {
                let pick = max_by_value(measured.iter().enumerate().filter_map(|(i, m)| {
                    let v = match regime {
                        Regime::Origin => Some(m.origin),
                        Regime::InBall => Some(m.in_ball),
                        Regime::Beyond => m.beyond,
                    };
                    v.map(|v| (i, v))
                }));
                let Some((i, value)) = pick else { continue };
                let m = &measured[i];
                let (bound_name, bound_value) = bound(&alg, regime, cfg, rounds, &m.h_per)?;
                rows.push(Table1Row {
                    regime,
                    algorithm: name,
                    rounds,
                    comparator_norm: match regime {
                        Regime::Origin => 0.0,
                        Regime::InBall => cfg.radius,
                        Regime::Beyond => 2.0 * cfg.radius,
                    },
                    sequence: sequences[m.sequence].0.clone(),
                    measured: value,
                    bound_name,
                    bound: bound_value,
                });
            }
        }
    }

    let checks = ordering_checks(cfg, &rows, horizons);
    let path = cfg.out.join("table1.csv");
    let header = CsvHeader::new(cfg.seed, "table1");
    let columns = ["regime", "algorithm", "T", "comparator_norm", "sequence", "measured_regret", "bound_name", "bound"];
    let table: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.regime.name().to_string(),
                r.algorithm.to_string(),
                r.rounds.to_string(),
                fmt_f64(r.comparator_norm),
                r.sequence.clone(),
                fmt_f64(r.measured),
                r.bound_name.to_string(),
                r.bound.map(fmt_f64).unwrap_or_default(),
            ]
        })
        .collect();
    write_file(&path, |w| write_table(w, &header, &columns, &table))?;
    let status = Status::from_checks(&checks);
    Ok(Table1Report {
        rows,
        checks,
        path,
        status,
    })
}

/// `log10` of the growth from the short to the long horizon: about 0.5 for
/// `sqrt(T)` growth and 1 for linear growth.
fn growth_exponent(short: f64, long: f64) -> f64 {
    if short > 0.0 && long > 0.0 {
        (long / short).log10()
    } else {
        f64::NAN
    }
}

fn ordering_checks(cfg: &Table1Config, rows: &[Table1Row], horizons: [usize; 2]) -> Vec<CheckLine> {
    let find = |regime: Regime, alg: &str, t: usize| {
        rows.iter()
            .find(|r| r.regime == regime && r.algorithm == alg && r.rounds == t)
            .map(|r| r.measured)
            .unwrap_or(f64::NAN)
    };
    let [short, long] = horizons;
    let mut checks = Vec::new();
    for alg in ["reward-doubling", "smooth"] {
        let worst = find(Regime::Origin, alg, short).max(find(Regime::Origin, alg, long));
        checks.push(CheckLine::new(
            format!("{alg} origin-regret <= eps"),
            worst <= cfg.eps + 1e-9,
            format!("worst {} over both horizons, eps={}", fmt_f64(worst), fmt_f64(cfg.eps)),
        ));
    }
    for alg in ["pgd", "eg"] {
        let (a, b) = (find(Regime::Origin, alg, short), find(Regime::Origin, alg, long));
        let e = growth_exponent(a, b);
        checks.push(CheckLine::new(
            format!("{alg} origin-regret grows like sqrt(T)"),
            b > cfg.eps && e >= 0.35,
            format!("T={short}: {}, T={long}: {}, growth exponent {}", fmt_f64(a), fmt_f64(b), fmt_f64(e)),
        ));
    }
    let (a, b) = (find(Regime::Beyond, "pgd", short), find(Regime::Beyond, "pgd", long));
    let e = growth_exponent(a, b);
    checks.push(CheckLine::new(
        "pgd regret beyond the ball grows linearly",
        e >= 0.9,
        format!("|x|=2R on all-ones; T={short}: {}, T={long}: {}, growth exponent {}", fmt_f64(a), fmt_f64(b), fmt_f64(e)),
    ));
    let (a, b) = (find(Regime::Beyond, "reward-doubling", short), find(Regime::Beyond, "reward-doubling", long));
    let per_round_short = a / short as f64;
    let per_round_long = b / long as f64;
    checks.push(CheckLine::new(
        "reward-doubling regret beyond the ball is sublinear",
        per_round_long <= 0.0 || per_round_long < per_round_short,
        format!(
            "per-round regret T={short}: {}, T={long}: {}, growth exponent {}",
            fmt_f64(per_round_short),
            fmt_f64(per_round_long),
            fmt_f64(growth_exponent(a, b))
        ),
    ));
    let worst_slack = rows
        .iter()
        .filter(|r| r.algorithm == "reward-doubling")
        .filter_map(|r| r.bound.map(|b| b - r.measured))
        .fold(f64::INFINITY, f64::min);
    checks.push(CheckLine::new(
        "reward-doubling within its regret bound in every regime",
        worst_slack >= -1e-9,
        format!("worst slack {}", fmt_f64(worst_slack)),
    ));
    checks
}
