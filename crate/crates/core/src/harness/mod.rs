//! Experiment wiring behind the command-line tool: learners by id, gradient
//! sources, verification suites, the comparison table, and witness search.
//!
//! Every entry point returns its findings plus a [`Status`]; writing files is
//! the only side effect.

use std::fmt;

mod lower_bound;
mod simulate;
mod spec;
mod sweep;
mod table1;
mod verify;

pub use lower_bound::{lower_bound, LowerBoundConfig, LowerBoundReport};
pub use simulate::{evaluate_bounds_1d, evaluate_bounds_nd, simulate, SimulateReport};
pub use spec::{AlgorithmParams, AlgorithmSpec, ExperimentSpec, GradientSource, ALGORITHM_IDS};
pub use sweep::{sweep_lemmas, SweepConfig, SweepLemmasReport};
pub use table1::{table1, Regime, Table1Config, Table1Report, Table1Row};
pub use verify::{verify, Suite, VerifyConfig, VerifyReport};

/// Process outcome, mapped one-to-one onto exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    BoundViolation,
    Usage,
    WitnessNotFound,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::BoundViolation => 1,
            Status::Usage => 2,
            Status::WitnessNotFound => 3,
        }
    }

    fn from_checks(checks: &[CheckLine]) -> Self {
        if checks.iter().all(|c| c.passed) {
            Status::Pass
        } else {
            Status::BoundViolation
        }
    }
}

/// One pass/fail line of a plain-text summary.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckLine {
    pub name: String,
    pub detail: String,
    pub passed: bool,
}

impl CheckLine {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            detail: detail.into(),
            passed,
        }
    }
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        if self.detail.is_empty() {
            write!(f, "{}: {verdict}", self.name)
        } else {
            write!(f, "{} ({}): {verdict}", self.name, self.detail)
        }
    }
}

fn write_file(path: &std::path::Path, f: impl FnOnce(&mut std::io::BufWriter<std::fs::File>) -> crate::Result<()>) -> crate::Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
    f(&mut w)
}
