use super::sequences::rademacher_stream;
use crate::constants::BINOMIAL_TAIL_BASE;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::learner::{run, Learner};

/// Number of blocks in the lower-bound construction:
/// `floor(ln(R sqrt(T) / eps) / ln(1/p))`, `p = 7/64`.
pub fn k_of_t(radius: f64, eps: f64, rounds: usize) -> Result<u32> {
    let ratio = radius * (rounds as f64).sqrt() / eps;
    if !(ratio > 1.0) {
        return Err(Error::Inapplicable(format!(
            "R sqrt(T) / eps = {ratio} must exceed 1"
        )));
    }
    let k = (ratio.ln() / (1.0 / BINOMIAL_TAIL_BASE).ln()).floor();
    if k < 1.0 {
        return Err(Error::Inapplicable(format!(
            "R sqrt(T) / eps = {ratio} is below 1/p, so k = 0"
        )));
    }
    Ok(k as u32)
}

/// A sequence on which the learner's reward stays below `R sqrt(T)` although
/// the gradient sum reaches `sqrt(kT)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LowerBoundWitness {
    /// Candidate index; the sequence is Rademacher stream `index` of the seed.
    pub index: u64,
    pub sequence: Vec<f64>,
    pub g_sum: f64,
    pub reward: f64,
    pub k: u32,
    /// `R * G - Q`.
    pub regret_achieved: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub radius: f64,
    pub eps: f64,
    pub rounds: usize,
    pub budget: u64,
    pub seed: u64,
    /// Stop after the first chunk containing a witness instead of scanning the whole budget.
    pub stop_at_first: bool,
    pub exec: Exec,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub k: u32,
    /// `sqrt(kT)`.
    pub g_threshold: f64,
    /// `R sqrt(T)`.
    pub reward_ceiling: f64,
    pub examined: u64,
    pub hits: u64,
    /// Lowest-index witness among the examined candidates.
    pub witness: Option<LowerBoundWitness>,
}

impl SearchOutcome {
    pub fn hit_rate(&self) -> f64 {
        if self.examined == 0 {
            0.0
        } else {
            self.hits as f64 / self.examined as f64
        }
    }
}

const CHUNK: u64 = 2048;

/// Samples up to `budget` Rademacher sequences and runs a fresh learner from
/// `factory` on each. Candidates are numbered; the reported witness is the
/// lowest-numbered hit, independent of thread scheduling.
///
/// The learner is assumed to guarantee origin-regret at most `eps`; that is
/// not checked here.
pub fn lower_bound_search<L, F>(factory: F, config: &SearchConfig) -> Result<SearchOutcome>
where
    L: Learner<Point = f64>,
    F: Fn() -> L + Sync + Send,
{
    let k = k_of_t(config.radius, config.eps, config.rounds)?;
    let t = config.rounds as f64;
    let g_threshold = (f64::from(k) * t).sqrt();
    let reward_ceiling = config.radius * t.sqrt();
    let mut outcome = SearchOutcome {
        k,
        g_threshold,
        reward_ceiling,
        examined: 0,
        hits: 0,
        witness: None,
    };

    while outcome.examined < config.budget {
        let lo = outcome.examined;
        let n = CHUNK.min(config.budget - lo);
        let evaluated = config.exec.map(n as usize, |offset| {
            let index = lo + offset as u64;
            let sequence = rademacher_stream(config.rounds, config.seed, index);
            let g_sum: f64 = sequence.iter().sum();
            if g_sum < g_threshold {
                return None;
            }
            let mut learner = factory();
            let reward = run(&mut learner, &sequence)
                .expect("Rademacher gradients are in range")
                .cumulative_reward();
            (reward < reward_ceiling).then_some(LowerBoundWitness {
                index,
                g_sum,
                reward,
                k,
                regret_achieved: config.radius * g_sum - reward,
                sequence,
            })
        });
        outcome.examined += n;
        for w in evaluated.into_iter().flatten() {
            outcome.hits += 1;
            if outcome.witness.is_none() {
                outcome.witness = Some(w);
            }
        }
        if config.stop_at_first && outcome.witness.is_some() {
            break;
        }
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learner::AlwaysZero;
    use crate::onedim::RewardDoubling1DGuess;

    #[test]
    fn k_examples() {
        let inv_p: f64 = 64.0 / 7.0;
        assert_eq!(k_of_t(inv_p.powi(4), 1.0, 1).unwrap(), 4);
        assert!(matches!(k_of_t(inv_p - 1e-9, 1.0, 1), Err(Error::Inapplicable(_))));
        assert!(k_of_t(1.0, 2.0, 4).is_err());
        // T = round(e^2 (64/7)^2) = 618: ln(sqrt 618) / ln(64/7) = 1.452
        assert_eq!(k_of_t(1.0, 1.0, 618).unwrap(), 1);
        assert_eq!(k_of_t(1.0, 0.01, 12).unwrap(), 2);
    }

    fn config(budget: u64, exec: Exec, stop_at_first: bool) -> SearchConfig {
        SearchConfig {
            radius: 1.0,
            eps: 0.01,
            rounds: 12,
            budget,
            seed: 11,
            stop_at_first,
            exec,
        }
    }

    #[test]
    fn zero_learner_witness() {
        let out = lower_bound_search(AlwaysZero::scalar, &config(5000, Exec::default(), false)).unwrap();
        let w = out.witness.as_ref().unwrap();
        assert_eq!(w.reward, 0.0);
        assert!(w.g_sum >= out.g_threshold);
        assert_eq!(w.regret_achieved, w.g_sum);
        assert_eq!(w.sequence, rademacher_stream(12, 11, w.index));
        assert_eq!(out.examined, 5000);
        // P[G_12 >= sqrt 24] = P[G_12 >= 6] = 299/4096
        let rate = out.hit_rate();
        assert!((rate - 299.0 / 4096.0).abs() < 0.02, "rate {rate}");
    }

    #[test]
    fn zero_budget_finds_nothing() {
        let out = lower_bound_search(AlwaysZero::scalar, &config(0, Exec::Sequential, true)).unwrap();
        assert!(out.witness.is_none());
        assert_eq!(out.examined, 0);
    }

    #[test]
    fn deterministic_across_exec_modes() {
        let f = || RewardDoubling1DGuess::new(0.01).unwrap();
        let a = lower_bound_search(f, &config(3000, Exec::Sequential, false)).unwrap();
        let b = lower_bound_search(f, &config(3000, Exec::default(), false)).unwrap();
        assert_eq!(a, b);
        let c = lower_bound_search(f, &config(3000, Exec::default(), true)).unwrap();
        assert_eq!(a.witness, c.witness);
    }

    #[test]
    fn propagates_inapplicable_k() {
        let mut cfg = config(10, Exec::Sequential, true);
        cfg.eps = 100.0;
        assert!(lower_bound_search(AlwaysZero::scalar, &cfg).is_err());
    }
}
