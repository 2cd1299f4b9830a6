use std::path::PathBuf;

use super::{write_file, CheckLine, Status};
use crate::error::Result;
use crate::exec::Exec;
use crate::onedim::{verify_smooth_lemmas, LemmaGrid, LemmaKind, LemmaPoint, SweepReport, MARGIN_TOLERANCE};
use crate::report::{fmt_f64, write_lemma_points, CsvHeader};

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub grid: LemmaGrid,
    pub out: PathBuf,
    pub seed: u64,
    pub exec: Exec,
}

#[derive(Debug, Clone)]
pub struct SweepLemmasReport {
    pub sweep: SweepReport,
    pub checks: Vec<CheckLine>,
    pub path: PathBuf,
    pub status: Status,
}

/// One check line per lemma: point count and worst margin.
pub(crate) fn lemma_checks(sweep: &SweepReport) -> Vec<CheckLine> {
    [
        (LemmaKind::SameSign, sweep.same_sign_points, sweep.worst_same_sign),
        (LemmaKind::SignChange, sweep.sign_change_points, sweep.worst_sign_change),
    ]
    .into_iter()
    .map(|(kind, points, worst)| {
        let violations = sweep.violations.iter().filter(|p| p.lemma == kind).count();
        let detail = match worst {
            Some(w) => format!(
                "{points} points, {violations} violations, worst margin {} at tau={} G={} g={}",
                fmt_f64(w.margin),
                fmt_f64(w.tau),
                fmt_f64(w.g_abs),
                fmt_f64(w.g)
            ),
            None => "no points".to_string(),
        };
        CheckLine::new(
            format!("lemma {kind} margin >= {MARGIN_TOLERANCE:e}"),
            points > 0 && violations == 0,
            detail,
        )
    })
    .collect()
}

/// Sweeps both lemma inequalities over the grid and writes `lemmas.csv`:
/// every violation, followed by the worst-margin point of each lemma.
pub fn sweep_lemmas(config: &SweepConfig) -> Result<SweepLemmasReport> {
    let sweep = verify_smooth_lemmas(&config.grid, config.exec)?;
    let mut points: Vec<LemmaPoint> = sweep.violations.clone();
    points.extend(sweep.worst_same_sign);
    points.extend(sweep.worst_sign_change);
    let path = config.out.join("lemmas.csv");
    let header = CsvHeader::new(config.seed, "sweep-lemmas");
    write_file(&path, |w| write_lemma_points(w, &header, &points))?;
    let checks = lemma_checks(&sweep);
    let status = Status::from_checks(&checks);
    Ok(SweepLemmasReport {
        sweep,
        checks,
        path,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grid_passes_and_writes_worst_points() {
        let dir = tempfile::tempdir().unwrap();
        let config = SweepConfig {
            grid: LemmaGrid {
                tau_max: 30,
                steps_per_unit: 10,
                g_abs_max_steps: 50,
                ..LemmaGrid::default()
            },
            out: dir.path().to_path_buf(),
            seed: 0,
            exec: Exec::default(),
        };
        let r = sweep_lemmas(&config).unwrap();
        assert_eq!(r.status, Status::Pass);
        let text = std::fs::read_to_string(&r.path).unwrap();
        assert_eq!(text.lines().count(), 4);
        assert!(text.lines().nth(2).unwrap().starts_with("rinv,"));
        assert!(text.lines().nth(3).unwrap().starts_with("od,"));
    }
}
