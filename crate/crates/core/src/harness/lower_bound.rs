use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use super::spec::AlgorithmSpec;
use super::{write_file, Status};
use crate::adversaries::{lower_bound_search, SearchConfig, SearchOutcome};
use crate::bounds::lower_bound_value;
use crate::error::Result;
use crate::exec::Exec;
use crate::report::{fmt_f64, witness_summary, write_witness, CsvHeader};

#[derive(Debug, Clone, PartialEq)]
pub struct LowerBoundConfig {
    pub algorithm: AlgorithmSpec,
    pub radius: f64,
    pub eps: f64,
    pub rounds: usize,
    pub budget: u64,
    pub seed: u64,
    pub out: PathBuf,
    pub exec: Exec,
}

impl fmt::Display for LowerBoundConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algorithm={}", self.algorithm)?;
        writeln!(f, "radius={:?} eps={:?} T={}", self.radius, self.eps, self.rounds)?;
        writeln!(f, "budget={} seed={}", self.budget, self.seed)?;
        write!(f, "out={}", self.out.display())
    }
}

#[derive(Debug, Clone)]
pub struct LowerBoundReport {
    pub outcome: SearchOutcome,
    /// `0.336 R sqrt(T ln(R sqrt(T) / eps))`.
    pub lower_bound: f64,
    pub summary: String,
    pub status: Status,
}

/// Searches for a witness sequence and writes `witness.csv` (when found)
/// and `witness.txt`. Stops at the first chunk containing a witness.
pub fn lower_bound(config: &LowerBoundConfig) -> Result<LowerBoundReport> {
    config.algorithm.build_scalar()?;
    let search = SearchConfig {
        radius: config.radius,
        eps: config.eps,
        rounds: config.rounds,
        budget: config.budget,
        seed: config.seed,
        stop_at_first: true,
        exec: config.exec,
    };
    let algorithm = &config.algorithm;
    let outcome = lower_bound_search(|| algorithm.build_scalar().expect("validated above"), &search)?;
    let lower_bound = lower_bound_value(config.radius, config.eps, config.rounds as f64)?;
    let header = CsvHeader::new(config.seed, "lower-bound");
    let mut summary = match &outcome.witness {
        Some(w) => {
            write_file(&config.out.join("witness.csv"), |f| write_witness(f, &header, w))?;
            format!(
                "{}\ncandidate={} lower_bound={} regret_minus_lower_bound={}",
                witness_summary(w),
                w.index,
                fmt_f64(lower_bound),
                fmt_f64(w.regret_achieved - lower_bound)
            )
        }
        None => format!("not found, k={}", outcome.k),
    };
    summary.push_str(&format!(
        "\nexamined={} hits={} hit_rate={} threshold_G={} reward_ceiling={}",
        outcome.examined,
        outcome.hits,
        fmt_f64(outcome.hit_rate()),
        fmt_f64(outcome.g_threshold),
        fmt_f64(outcome.reward_ceiling)
    ));
    write_file(&config.out.join("witness.txt"), |f| {
        writeln!(f, "{summary}")?;
        Ok(())
    })?;
    let status = if outcome.witness.is_some() {
        Status::Pass
    } else {
        Status::WitnessNotFound
    };
    Ok(LowerBoundReport {
        outcome,
        lower_bound,
        summary,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(alg: AlgorithmSpec, budget: u64, out: &std::path::Path) -> LowerBoundConfig {
        LowerBoundConfig {
            algorithm: alg,
            radius: 1.0,
            eps: 0.01,
            rounds: 12,
            budget,
            seed: 3,
            out: out.to_path_buf(),
            exec: Exec::default(),
        }
    }

    #[test]
    fn zero_learner_witness_found() {
        let dir = tempfile::tempdir().unwrap();
        let r = lower_bound(&config(AlgorithmSpec::Zero, 1000, dir.path())).unwrap();
        assert_eq!(r.status, Status::Pass);
        let w = r.outcome.witness.unwrap();
        assert!(w.regret_achieved >= r.lower_bound);
        let csv = std::fs::read_to_string(dir.path().join("witness.csv")).unwrap();
        assert_eq!(csv.lines().count(), 2 + 12);
        let txt = std::fs::read_to_string(dir.path().join("witness.txt")).unwrap();
        assert!(txt.starts_with("G="));
    }

    #[test]
    fn zero_budget_is_not_found() {
        let dir = tempfile::tempdir().unwrap();
        let r = lower_bound(&config(AlgorithmSpec::Zero, 0, dir.path())).unwrap();
        assert_eq!(r.status, Status::WitnessNotFound);
        assert!(!dir.path().join("witness.csv").exists());
    }
}
