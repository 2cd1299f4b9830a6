use std::fmt;
use std::path::PathBuf;

use crate::adversaries::{SequenceKind, SequenceSpec};
use crate::baselines::{FixedFtrl, FtrlSign, GradientDescent, ProjectedGradientDescent, UnnormalizedEg};
use crate::constants::SMOOTH_OVERHEAD;
use crate::error::{config, Result};
use crate::exec::Exec;
use crate::learner::{AlwaysZero, Learner};
use crate::multidim::{compose, EpsSchedule};
use crate::onedim::{RewardDoubling1D, RewardDoubling1DGuess, SmoothRewardDoubling};

/// Learner parameters as given on the command line; unset ones get defaults.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AlgorithmParams {
    pub eta: Option<f64>,
    pub eta1: Option<f64>,
    pub hbar: Option<f64>,
    pub eps: Option<f64>,
    pub radius: Option<f64>,
    pub ftrl_sign: Option<FtrlSign>,
}

/// A learner id with every parameter resolved.
#[derive(Debug, Clone, PartialEq)]
pub enum AlgorithmSpec {
    /// Epoch doubling with known squared-gradient budget.
    Rd1d { eta1: f64, hbar: f64 },
    /// Epoch doubling inside a doubling guess of the budget.
    Guess { eps: f64 },
    /// Epoch-free potential learner.
    Smooth { eta: f64 },
    Gd { eta: f64 },
    Pgd { eta: f64, radius: f64 },
    Eg { eta: f64 },
    Ftrl { eta: f64, sign: FtrlSign },
    Zero,
}

pub const ALGORITHM_IDS: [&str; 8] = ["rd1d", "guess", "smooth", "gd", "pgd", "eg", "ftrl", "zero"];

impl AlgorithmSpec {
    /// Fills defaults: `eta1 = 1/T` and `hbar = T` for rd1d, `eps = 1`,
    /// `eta = 1` for smooth and gd, `eta = R / sqrt(T)` with `R = 1` for pgd,
    /// `eta = 1 / sqrt(T)` for eg, `eta = 0.1` for ftrl.
    pub fn resolve(id: &str, p: &AlgorithmParams, rounds: usize) -> Result<Self> {
        let t = rounds as f64;
        let need_t = |what: &str| {
            if rounds == 0 {
                Err(config(format!("{what} defaults to a function of T; give T >= 1 or set it")))
            } else {
                Ok(())
            }
        };
        let spec = match id {
            "rd1d" => {
                if p.eta1.is_none() || p.hbar.is_none() {
                    need_t("rd1d's eta1/hbar")?;
                }
                AlgorithmSpec::Rd1d {
                    eta1: p.eta1.unwrap_or(1.0 / t),
                    hbar: p.hbar.unwrap_or(t),
                }
            }
            "guess" => AlgorithmSpec::Guess { eps: p.eps.unwrap_or(1.0) },
            "smooth" => AlgorithmSpec::Smooth { eta: p.eta.unwrap_or(1.0) },
            "gd" => AlgorithmSpec::Gd { eta: p.eta.unwrap_or(1.0) },
            "pgd" => {
                let radius = p.radius.unwrap_or(1.0);
                if p.eta.is_none() {
                    need_t("pgd's eta")?;
                }
                AlgorithmSpec::Pgd {
                    eta: p.eta.unwrap_or(radius / t.sqrt()),
                    radius,
                }
            }
            "eg" => {
                if p.eta.is_none() {
                    need_t("eg's eta")?;
                }
                AlgorithmSpec::Eg {
                    eta: p.eta.unwrap_or(1.0 / t.sqrt()),
                }
            }
            "ftrl" => AlgorithmSpec::Ftrl {
                eta: p.eta.unwrap_or(0.1),
                sign: p.ftrl_sign.unwrap_or(FtrlSign::Literal),
            },
            "zero" => AlgorithmSpec::Zero,
            other => {
                return Err(config(format!(
                    "unknown algorithm `{other}`; expected one of {}",
                    ALGORITHM_IDS.join(", ")
                )))
            }
        };
        // surface parameter errors before any run starts
        spec.build_scalar()?;
        Ok(spec)
    }

    pub fn id(&self) -> &'static str {
        match self {
            AlgorithmSpec::Rd1d { .. } => "rd1d",
            AlgorithmSpec::Guess { .. } => "guess",
            AlgorithmSpec::Smooth { .. } => "smooth",
            AlgorithmSpec::Gd { .. } => "gd",
            AlgorithmSpec::Pgd { .. } => "pgd",
            AlgorithmSpec::Eg { .. } => "eg",
            AlgorithmSpec::Ftrl { .. } => "ftrl",
            AlgorithmSpec::Zero => "zero",
        }
    }

    pub fn build_scalar(&self) -> Result<Box<dyn Learner<Point = f64>>> {
        Ok(match *self {
            AlgorithmSpec::Rd1d { eta1, hbar } => Box::new(RewardDoubling1D::new(eta1, hbar)?),
            AlgorithmSpec::Guess { eps } => Box::new(RewardDoubling1DGuess::new(eps)?),
            AlgorithmSpec::Smooth { eta } => Box::new(SmoothRewardDoubling::new(eta)?),
            AlgorithmSpec::Gd { eta } => Box::new(GradientDescent::new(eta, 0.0)?),
            AlgorithmSpec::Pgd { eta, radius } => Box::new(ProjectedGradientDescent::new(eta, radius, 0.0)?),
            AlgorithmSpec::Eg { eta } => Box::new(UnnormalizedEg::new(eta, 0.0)?),
            AlgorithmSpec::Ftrl { eta, sign } => Box::new(FixedFtrl::quadratic(eta, sign)?),
            AlgorithmSpec::Zero => Box::new(AlwaysZero::scalar()),
        })
    }

    /// Total origin-regret budget split across coordinates by composites.
    ///
    /// For the smooth learner this is `1.76 eta`, so each child gets
    /// `eta_i = eps_i / 1.76`.
    pub fn eps_budget(&self) -> Option<f64> {
        match *self {
            AlgorithmSpec::Guess { eps } => Some(eps),
            AlgorithmSpec::Smooth { eta } => Some(SMOOTH_OVERHEAD * eta),
            _ => None,
        }
    }

    /// An `n`-dimensional learner: Euclidean baselines act on vectors
    /// directly; the others run one copy per coordinate.
    pub fn build_vector(&self, dim: usize, schedule: EpsSchedule) -> Result<Box<dyn Learner<Point = Vec<f64>>>> {
        if dim == 0 {
            return Err(config("dimension must be at least 1"));
        }
        let origin = vec![0.0; dim];
        Ok(match *self {
            AlgorithmSpec::Gd { eta } => Box::new(GradientDescent::new(eta, origin)?),
            AlgorithmSpec::Pgd { eta, radius } => Box::new(ProjectedGradientDescent::new(eta, radius, origin)?),
            AlgorithmSpec::Eg { eta } => Box::new(UnnormalizedEg::new(eta, origin)?),
            AlgorithmSpec::Zero => Box::new(AlwaysZero::vector(dim)),
            AlgorithmSpec::Guess { eps } => Box::new(compose(
                |e| RewardDoubling1DGuess::new(e).expect("positive share of a positive budget"),
                dim,
                eps,
                schedule,
            )?),
            AlgorithmSpec::Smooth { eta } => Box::new(compose(
                |e| SmoothRewardDoubling::new(e / SMOOTH_OVERHEAD).expect("positive share of a positive budget"),
                dim,
                SMOOTH_OVERHEAD * eta,
                schedule,
            )?),
            AlgorithmSpec::Rd1d { eta1, hbar } => {
                RewardDoubling1D::new(eta1, hbar)?;
                Box::new(compose(
                    move |_| RewardDoubling1D::new(eta1, hbar).expect("validated above"),
                    dim,
                    1.0,
                    EpsSchedule::Uniform,
                )?)
            }
            AlgorithmSpec::Ftrl { eta, sign } => {
                FixedFtrl::quadratic(eta, sign)?;
                Box::new(compose(
                    move |_| FixedFtrl::quadratic(eta, sign).expect("validated above"),
                    dim,
                    1.0,
                    EpsSchedule::Uniform,
                )?)
            }
        })
    }
}

impl fmt::Display for AlgorithmSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id())?;
        match self {
            AlgorithmSpec::Rd1d { eta1, hbar } => write!(f, " eta1={eta1:?} hbar={hbar:?}"),
            AlgorithmSpec::Guess { eps } => write!(f, " eps={eps:?}"),
            AlgorithmSpec::Smooth { eta } | AlgorithmSpec::Gd { eta } | AlgorithmSpec::Eg { eta } => {
                write!(f, " eta={eta:?}")
            }
            AlgorithmSpec::Pgd { eta, radius } => write!(f, " eta={eta:?} radius={radius:?}"),
            AlgorithmSpec::Ftrl { eta, sign } => write!(f, " eta={eta:?} sign={}", sign_name(*sign)),
            AlgorithmSpec::Zero => Ok(()),
        }
    }
}

pub(crate) fn sign_name(sign: FtrlSign) -> &'static str {
    match sign {
        FtrlSign::Literal => "literal",
        FtrlSign::RewardAligned => "reward-aligned",
    }
}

/// Where the gradients come from.
#[derive(Debug, Clone, PartialEq)]
pub enum GradientSource {
    Generated(SequenceSpec),
    /// Rows read from a file; each row is one round.
    File { path: PathBuf, rows: Vec<Vec<f64>> },
}

impl GradientSource {
    pub fn name(&self) -> String {
        match self {
            GradientSource::Generated(s) => s.kind.name().to_string(),
            GradientSource::File { .. } => SequenceKind::Custom(Vec::new()).name().to_string(),
        }
    }

    /// Scalar gradients; a file must have exactly one value per row.
    pub fn scalar(&self) -> Result<Vec<f64>> {
        match self {
            GradientSource::Generated(s) => Ok(s.generate()),
            GradientSource::File { rows, .. } => rows
                .iter()
                .map(|r| match r.as_slice() {
                    [v] => Ok(*v),
                    _ => Err(config(format!("expected one gradient per row, found {}", r.len()))),
                })
                .collect(),
        }
    }

    pub fn vectors(&self, dim: usize) -> Result<Vec<Vec<f64>>> {
        match self {
            GradientSource::Generated(s) => Ok(s.generate_vec(dim)),
            GradientSource::File { rows, .. } => {
                if let Some(r) = rows.iter().find(|r| r.len() != dim) {
                    return Err(config(format!("expected {dim} gradients per row, found {}", r.len())));
                }
                Ok(rows.clone())
            }
        }
    }

    pub fn rounds(&self) -> usize {
        match self {
            GradientSource::Generated(s) => s.rounds,
            GradientSource::File { rows, .. } => rows.len(),
        }
    }
}

/// Everything that determines a `simulate` run.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub algorithm: AlgorithmSpec,
    pub source: GradientSource,
    pub dim: usize,
    /// Scalar comparators; in `n` dimensions `c` stands for `c * (1, ..., 1)`.
    pub comparators: Vec<f64>,
    pub schedule: EpsSchedule,
    pub out: PathBuf,
    pub seed: u64,
    pub tolerance: f64,
    pub exec: Exec,
}

impl ExperimentSpec {
    /// Names of the bounds `simulate` evaluates for this algorithm.
    pub fn bound_names(&self) -> Vec<&'static str> {
        let nd = self.dim > 1;
        match (&self.algorithm, nd) {
            (AlgorithmSpec::Rd1d { .. }, false) => vec!["rd1d_reward_floor", "rd1d_regret"],
            (AlgorithmSpec::Guess { .. }, false) => vec!["guess_regret"],
            (AlgorithmSpec::Guess { .. }, true) => vec!["coordinate_regret", "coordinate_regret_relaxed"],
            (AlgorithmSpec::Smooth { .. }, false) => vec!["smooth_reward_floor_worst_round", "smooth_regret"],
            (AlgorithmSpec::Gd { .. }, _) => vec!["gd_reward_identity", "gd_standard_regret"],
            (AlgorithmSpec::Pgd { .. }, _) => vec!["gd_standard_regret"],
            _ => Vec::new(),
        }
    }

    pub fn trace_path(&self) -> PathBuf {
        self.out.join("trace.csv")
    }

    pub fn bounds_path(&self) -> PathBuf {
        self.out.join("bounds.csv")
    }
}

impl fmt::Display for ExperimentSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algorithm={}", self.algorithm)?;
        match &self.source {
            GradientSource::Generated(s) => writeln!(f, "sequence={} T={} seed={}", s.kind.name(), s.rounds, s.seed)?,
            GradientSource::File { path, rows } => writeln!(f, "sequence=custom file={} T={}", path.display(), rows.len())?,
        }
        let schedule = match self.schedule {
            EpsSchedule::Uniform => "uniform",
            EpsSchedule::InverseSquare => "inverse-square",
        };
        writeln!(f, "dim={} schedule={schedule}", self.dim)?;
        let comps: Vec<String> = self.comparators.iter().map(|c| format!("{c:?}")).collect();
        writeln!(f, "comparators={}", comps.join(","))?;
        writeln!(f, "bounds={}", self.bound_names().join(","))?;
        writeln!(f, "out={}", self.out.display())?;
        writeln!(f, "seed={}", self.seed)?;
        writeln!(f, "tolerance={:?}", self.tolerance)?;
        write!(f, "exec={}", self.exec.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learner::run;

    #[test]
    fn defaults_follow_horizon() {
        let p = AlgorithmParams::default();
        assert_eq!(
            AlgorithmSpec::resolve("rd1d", &p, 100).unwrap(),
            AlgorithmSpec::Rd1d { eta1: 0.01, hbar: 100.0 }
        );
        assert_eq!(
            AlgorithmSpec::resolve("pgd", &p, 400).unwrap(),
            AlgorithmSpec::Pgd { eta: 0.05, radius: 1.0 }
        );
        assert!(AlgorithmSpec::resolve("rd1d", &p, 0).is_err());
        assert!(AlgorithmSpec::resolve("adam", &p, 10).is_err());
        let bad = AlgorithmParams { eps: Some(-1.0), ..p };
        assert!(AlgorithmSpec::resolve("guess", &bad, 10).is_err());
    }

    #[test]
    fn every_id_builds_in_both_shapes() {
        for id in ALGORITHM_IDS {
            let spec = AlgorithmSpec::resolve(id, &AlgorithmParams::default(), 16).unwrap();
            assert_eq!(spec.id(), id);
            let mut s = spec.build_scalar().unwrap();
            run(&mut s, [1.0, -1.0, 1.0]).unwrap();
            let mut v = spec.build_vector(3, EpsSchedule::Uniform).unwrap();
            assert_eq!(v.dim(), 3);
            run(&mut v, [vec![1.0, 0.0, -1.0]]).unwrap();
        }
    }

    #[test]
    fn one_coordinate_matches_scalar() {
        let g = crate::adversaries::rademacher(300, 5);
        for id in ALGORITHM_IDS {
            let spec = AlgorithmSpec::resolve(id, &AlgorithmParams::default(), 300).unwrap();
            let scalar = run(&mut spec.build_scalar().unwrap(), &g).unwrap();
            let gv: Vec<Vec<f64>> = g.iter().map(|v| vec![*v]).collect();
            let vector = run(&mut spec.build_vector(1, EpsSchedule::Uniform).unwrap(), &gv).unwrap();
            let flat: Vec<f64> = vector.plays().iter().map(|x| x[0]).collect();
            assert_eq!(flat, scalar.plays(), "{id}");
        }
    }

    #[test]
    fn file_source_shapes() {
        let src = GradientSource::File {
            path: "g.csv".into(),
            rows: vec![vec![1.0], vec![-1.0]],
        };
        assert_eq!(src.scalar().unwrap(), vec![1.0, -1.0]);
        assert!(src.vectors(2).is_err());
        assert_eq!(src.name(), "custom");
    }
}
