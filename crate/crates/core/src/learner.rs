use std::borrow::Borrow;

use crate::error::Result;
use crate::point::{check_same_dim, validate_gradient, Point};
use crate::trace::Trace;

/// An online linear optimization learner.
///
/// Each round the driver reads [`play`](Learner::play), then feeds the
/// round's gradient to [`observe`](Learner::observe). Implementations are
/// deterministic: the play for round `t` is a function of `g_1..g_{t-1}` and
/// the learner's fixed parameters only.
pub trait Learner: Send {
    type Point: Point;

    /// The point for the current round.
    fn play(&self) -> Self::Point;

    /// Consumes the current round's gradient (reward convention: reward is `<x, g>`).
    fn observe(&mut self, g: &Self::Point);

    /// Dimension of the points this learner plays.
    fn dim(&self) -> usize {
        1
    }

    /// Plays, observes `g`, and returns the point that was played.
    fn step(&mut self, g: &Self::Point) -> Self::Point {
        let x = self.play();
        self.observe(g);
        x
    }
}

impl<L: Learner + ?Sized> Learner for Box<L> {
    type Point = L::Point;

    fn play(&self) -> Self::Point {
        (**self).play()
    }

    fn observe(&mut self, g: &Self::Point) {
        (**self).observe(g)
    }

    fn dim(&self) -> usize {
        (**self).dim()
    }
}

/// Drives `learner` over `gradients`, strictly alternating play and observe.
///
/// Every gradient is validated before the learner sees it; an out-of-range
/// component aborts the run (nothing is clipped).
pub fn run<L, I>(learner: &mut L, gradients: I) -> Result<Trace<L::Point>>
where
    L: Learner + ?Sized,
    I: IntoIterator,
    I::Item: Borrow<L::Point>,
{
    let iter = gradients.into_iter();
    let mut trace = Trace::with_capacity(iter.size_hint().0);
    for (round, g) in iter.enumerate() {
        let g = g.borrow();
        check_same_dim(learner.dim(), g.dim())?;
        validate_gradient(g, round + 1)?;
        let x = learner.play();
        learner.observe(g);
        trace.push(x, g.clone())?;
    }
    Ok(trace)
}

/// Plays the origin forever.
#[derive(Debug, Clone, PartialEq)]
pub struct AlwaysZero<P> {
    origin: P,
}

impl AlwaysZero<f64> {
    pub fn scalar() -> Self {
        Self { origin: 0.0 }
    }
}

impl AlwaysZero<Vec<f64>> {
    pub fn vector(dim: usize) -> Self {
        Self {
            origin: vec![0.0; dim],
        }
    }
}

impl<P: Point> Learner for AlwaysZero<P> {
    type Point = P;

    fn play(&self) -> P {
        self.origin.clone()
    }

    fn observe(&mut self, _g: &P) {}

    fn dim(&self) -> usize {
        self.origin.dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn zero_learner_earns_nothing() {
        let mut l = AlwaysZero::scalar();
        let t = run(&mut l, [1.0, -1.0, 0.25]).unwrap();
        assert!(t.plays().iter().all(|&x| x == 0.0));
        assert_eq!(t.cumulative_reward(), 0.0);
    }

    #[test]
    fn empty_sequence_gives_empty_trace() {
        let mut l = AlwaysZero::scalar();
        let t = run(&mut l, Vec::<f64>::new()).unwrap();
        assert!(t.is_empty());
    }

    #[test]
    fn out_of_range_gradient_aborts() {
        let mut l = AlwaysZero::vector(2);
        let err = run(&mut l, [vec![0.0, 0.0], vec![0.0, 1.5]]).unwrap_err();
        assert!(matches!(
            err,
            Error::GradientOutOfRange { round: 2, coord: 1, .. }
        ));
        let err = run(&mut l, [vec![0.0]]).unwrap_err();
        assert!(matches!(err, Error::ShapeMismatch { .. }));
    }
}
