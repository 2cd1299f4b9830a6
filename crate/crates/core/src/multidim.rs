//! Per-coordinate composition of one-dimensional learners, the regret
//! decomposition it relies on, and the convex-to-linear reduction.

use crate::error::{config, Result};
use crate::learner::Learner;
use crate::point::{check_same_dim, validate_gradient, Point};
use crate::trace::{Comparator, Trace};

/// How the total origin-regret budget is split across coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EpsSchedule {
    /// `eps_i = eps / n`.
    Uniform,
    /// `eps_i = eps / i^2` for the `i`-th coordinate encountered; `n` need not be known.
    InverseSquare,
}

/// One independent 1-D learner per coordinate.
///
/// Under [`EpsSchedule::InverseSquare`] a child is created the first time its
/// coordinate carries a nonzero gradient; coordinates first seen in the same
/// round are numbered in ascending index order. Until then the coordinate
/// plays 0, which is what a fresh child would play.
pub struct CoordinateComposite<L, F> {
    factory: F,
    eps_total: f64,
    schedule: EpsSchedule,
    children: Vec<Option<L>>,
    child_eps: Vec<Option<f64>>,
    instantiated: usize,
}

impl<L, F> std::fmt::Debug for CoordinateComposite<L, F>
where
    L: std::fmt::Debug,
{
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CoordinateComposite")
            .field("eps_total", &self.eps_total)
            .field("schedule", &self.schedule)
            .field("children", &self.children)
            .finish_non_exhaustive()
    }
}

/// Builds an `n`-coordinate composite whose children come from `factory(eps_i)`.
pub fn compose<L, F>(factory: F, n: usize, eps: f64, schedule: EpsSchedule) -> Result<CoordinateComposite<L, F>>
where
    L: Learner<Point = f64>,
    F: Fn(f64) -> L,
{
    if n == 0 {
        return Err(config("composite needs at least one coordinate"));
    }
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(config(format!("origin-regret budget must be positive, got {eps}")));
    }
    let mut composite = CoordinateComposite {
        factory,
        eps_total: eps,
        schedule,
        children: (0..n).map(|_| None).collect(),
        child_eps: vec![None; n],
        instantiated: 0,
    };
    if schedule == EpsSchedule::Uniform {
        let eps_i = eps / n as f64;
        for i in 0..n {
            composite.instantiate(i, eps_i);
        }
    }
    Ok(composite)
}

impl<L, F> CoordinateComposite<L, F>
where
    L: Learner<Point = f64>,
    F: Fn(f64) -> L,
{
    fn instantiate(&mut self, coord: usize, eps_i: f64) {
        self.children[coord] = Some((self.factory)(eps_i));
        self.child_eps[coord] = Some(eps_i);
        self.instantiated += 1;
    }

    pub fn eps_total(&self) -> f64 {
        self.eps_total
    }

    pub fn schedule(&self) -> EpsSchedule {
        self.schedule
    }

    /// Budget assigned to coordinate `coord`, if its child exists yet.
    pub fn child_eps(&self, coord: usize) -> Option<f64> {
        self.child_eps.get(coord).copied().flatten()
    }

    pub fn child(&self, coord: usize) -> Option<&L> {
        self.children.get(coord).and_then(Option::as_ref)
    }

    pub fn instantiated(&self) -> usize {
        self.instantiated
    }
}

impl<L, F> Learner for CoordinateComposite<L, F>
where
    L: Learner<Point = f64>,
    F: Fn(f64) -> L + Send,
{
    type Point = Vec<f64>;

    fn play(&self) -> Vec<f64> {
        self.children
            .iter()
            .map(|c| c.as_ref().map_or(0.0, Learner::play))
            .collect()
    }

    fn observe(&mut self, g: &Vec<f64>) {
        for (coord, v) in g.iter().enumerate() {
            if self.children[coord].is_none() && *v != 0.0 {
                let i = (self.instantiated + 1) as f64;
                self.instantiate(coord, self.eps_total / (i * i));
            }
            if let Some(child) = self.children[coord].as_mut() {
                child.observe(v);
            }
        }
    }

    fn dim(&self) -> usize {
        self.children.len()
    }
}

/// Per-coordinate regrets `x_i g_{1:T,i} - sum_t x_{t,i} g_{t,i}`.
pub fn regret_decomposition(trace: &Trace<Vec<f64>>, comparator: &Comparator<Vec<f64>>) -> Result<Vec<f64>> {
    let Some(dim) = trace.dim() else {
        return Ok(comparator.point().iter().map(|_| 0.0).collect());
    };
    check_same_dim(dim, comparator.point().dim())?;
    Ok((0..dim)
        .map(|i| {
            let mut comparator_reward = 0.0;
            let mut learner_reward = 0.0;
            for (x, g) in trace.plays().iter().zip(trace.gradients()) {
                comparator_reward += g[i];
                learner_reward += x[i] * g[i];
            }
            comparator.point()[i] * comparator_reward - learner_reward
        })
        .collect())
}

/// Total regret summed coordinate by coordinate, in the same order as
/// [`regret_decomposition`].
pub fn regret_coordinatewise(trace: &Trace<Vec<f64>>, comparator: &Comparator<Vec<f64>>) -> Result<f64> {
    Ok(regret_decomposition(trace, comparator)?.iter().sum())
}

/// Returns `g_t = -grad f_t(x_t)` for the point the learner just played.
pub trait GradientOracle<P> {
    fn gradient(&mut self, round: usize, x: &P) -> P;
}

impl<P, F> GradientOracle<P> for F
where
    F: FnMut(usize, &P) -> P,
{
    fn gradient(&mut self, round: usize, x: &P) -> P {
        self(round, x)
    }
}

/// Runs `learner` for `rounds` rounds against convex losses given through
/// their negative gradients. The result is an ordinary linear trace; its
/// regret upper-bounds the convex regret by convexity.
pub fn linearize<L, O>(learner: &mut L, oracle: &mut O, rounds: usize) -> Result<Trace<L::Point>>
where
    L: Learner + ?Sized,
    O: GradientOracle<L::Point> + ?Sized,
{
    let mut trace = Trace::with_capacity(rounds);
    for round in 1..=rounds {
        let x = learner.play();
        let g = oracle.gradient(round, &x);
        check_same_dim(x.dim(), g.dim())?;
        validate_gradient(&g, round)?;
        learner.observe(&g);
        trace.push(x, g)?;
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::learner::run;
    use crate::onedim::{RewardDoubling1DGuess, SmoothRewardDoubling};
    use crate::rng;
    use crate::trace::regret;
    use proptest::prelude::*;

    fn guess(eps: f64) -> RewardDoubling1DGuess {
        RewardDoubling1DGuess::new(eps).unwrap()
    }

    #[test]
    fn uniform_budget() {
        let c = compose(guess, 4, 1.0, EpsSchedule::Uniform).unwrap();
        for i in 0..4 {
            assert_eq!(c.child_eps(i), Some(0.25));
            assert_eq!(c.child(i).unwrap().eps(), 0.25);
        }
        assert!(compose(guess, 0, 1.0, EpsSchedule::Uniform).is_err());
        assert!(compose(guess, 3, 0.0, EpsSchedule::Uniform).is_err());
    }

    #[test]
    fn inverse_square_in_encounter_order() {
        let mut c = compose(guess, 5, 1.0, EpsSchedule::InverseSquare).unwrap();
        assert_eq!(c.instantiated(), 0);
        assert_eq!(c.play(), vec![0.0; 5]);
        c.observe(&vec![0.0, 0.0, 0.0, 1.0, 0.0]);
        // two new coordinates in one round: ascending index
        c.observe(&vec![0.0, -1.0, 0.0, 1.0, 0.5]);
        c.observe(&vec![1.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(c.child_eps(3), Some(1.0));
        assert_eq!(c.child_eps(1), Some(0.25));
        assert_eq!(c.child_eps(4), Some(1.0 / 9.0));
        assert_eq!(c.child_eps(0), Some(1.0 / 16.0));
        assert_eq!(c.child_eps(2), None);
    }

    #[test]
    fn single_coordinate_matches_child() {
        let gs: Vec<f64> = (0..500).map(|t| ((t * 37 % 11) as f64 - 5.0) / 5.0).collect();
        let mut c = compose(guess, 1, 0.7, EpsSchedule::Uniform).unwrap();
        let vt = run(&mut c, gs.iter().map(|&g| vec![g])).unwrap();
        let st = run(&mut guess(0.7), &gs).unwrap();
        for (v, s) in vt.plays().iter().zip(st.plays()) {
            assert_eq!(v[0], *s);
        }
    }

    #[test]
    fn decomposition_examples() {
        let plays = vec![vec![0.5, 1.0], vec![-0.25, 2.0], vec![1.0, 0.0]];
        let grads = vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.5, 0.0]];
        let t = Trace::from_parts(plays, grads).unwrap();
        let zero = Comparator::new(vec![0.0, 0.0]);
        let parts = regret_decomposition(&t, &zero).unwrap();
        assert_eq!(parts[0], -(0.5 + 0.25 + 0.5));
        assert_eq!(parts[1], 0.0);
        let c = Comparator::new(vec![2.0, -3.0]);
        let parts = regret_decomposition(&t, &c).unwrap();
        assert_eq!(parts[1], 0.0);
        assert_eq!(parts[0], 2.0 * 0.5 - 1.25);
        assert!(regret_decomposition(&t, &Comparator::new(vec![1.0])).is_err());
    }

    #[test]
    fn linearize_sign_oracle() {
        // f_t(x) = |x - 1|; negative (sub)gradient is -sign(x - 1)
        let mut oracle = |_: usize, x: &f64| if *x < 1.0 { 1.0 } else { -1.0 };
        let mut l = SmoothRewardDoubling::new(1.0).unwrap();
        let t = linearize(&mut l, &mut oracle, 200).unwrap();
        assert_eq!(t.len(), 200);
        assert!(t.gradients().iter().all(|g| g.abs() == 1.0));
        assert!((t.reward_resummed() - t.cumulative_reward()).abs() < 1e-9);
    }

    #[test]
    fn linearize_linear_loss_is_identity() {
        let mut oracle = |_: usize, _: &f64| -0.3;
        let a = linearize(&mut guess(1.0), &mut oracle, 50).unwrap();
        let b = run(&mut guess(1.0), [-0.3; 50]).unwrap();
        assert_eq!(a, b);
        let mut zero = |_: usize, _: &f64| 0.0;
        let z = linearize(&mut guess(1.0), &mut zero, 10).unwrap();
        assert!(z.plays().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn linearize_rejects_out_of_range_oracle() {
        let mut oracle = |round: usize, _: &f64| if round == 3 { 1.5 } else { 0.5 };
        let err = linearize(&mut guess(1.0), &mut oracle, 10).unwrap_err();
        assert!(matches!(err, Error::GradientOutOfRange { round: 3, .. }));
    }

    proptest! {
        #[test]
        fn decomposition_sums_to_regret(seed in any::<u64>(), scale in -5.0f64..5.0) {
            let mut r = rng::stream(seed, 0);
            let gs: Vec<Vec<f64>> = (0..200)
                .map(|_| (0..3).map(|_| rng::rademacher_draw(&mut r)).collect())
                .collect();
            let mut c = compose(guess, 3, 1.0, EpsSchedule::Uniform).unwrap();
            let t = run(&mut c, &gs).unwrap();
            let cmp = Comparator::new(vec![scale, -0.5 * scale, 1.0]);
            let parts = regret_decomposition(&t, &cmp).unwrap();
            let total: f64 = parts.iter().sum();
            prop_assert_eq!(total, regret_coordinatewise(&t, &cmp).unwrap());
            let direct = regret(&t, &cmp).unwrap();
            prop_assert!((total - direct).abs() <= 1e-9 * (1.0 + direct.abs()));
        }

        #[test]
        fn relabeling_coordinates_permutes_traces(seed in any::<u64>()) {
            let mut r = rng::stream(seed, 1);
            let gs: Vec<Vec<f64>> = (0..150)
                .map(|_| (0..3).map(|_| rng::rademacher_draw(&mut r) * 0.5).collect())
                .collect();
            let perm = [2usize, 0, 1];
            let permuted: Vec<Vec<f64>> = gs.iter().map(|g| perm.iter().map(|&p| g[p]).collect()).collect();
            let a = run(&mut compose(guess, 3, 1.0, EpsSchedule::Uniform).unwrap(), &gs).unwrap();
            let b = run(&mut compose(guess, 3, 1.0, EpsSchedule::Uniform).unwrap(), &permuted).unwrap();
            for (xa, xb) in a.plays().iter().zip(b.plays()) {
                for (k, &p) in perm.iter().enumerate() {
                    prop_assert_eq!(xb[k], xa[p]);
                }
            }
        }
    }
}
