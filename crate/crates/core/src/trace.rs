//! Round-by-round records of plays and gradients, and the reward/regret
//! accounting every learner and bound checker shares.

use crate::error::Result;
use crate::point::{check_same_dim, Point};

/// Plays and gradients of one run, with the reward accumulated in round order.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace<P> {
    plays: Vec<P>,
    gradients: Vec<P>,
    cumulative_reward: f64,
}

impl<P: Point> Default for Trace<P> {
    fn default() -> Self {
        Self::new()
    }
}

impl<P: Point> Trace<P> {
    pub fn new() -> Self {
        Self {
            plays: Vec::new(),
            gradients: Vec::new(),
            cumulative_reward: 0.0,
        }
    }

    pub fn with_capacity(rounds: usize) -> Self {
        Self {
            plays: Vec::with_capacity(rounds),
            gradients: Vec::with_capacity(rounds),
            cumulative_reward: 0.0,
        }
    }

    /// Builds a trace from recorded plays and gradients, accumulating reward in order.
    pub fn from_parts(plays: Vec<P>, gradients: Vec<P>) -> Result<Self> {
        check_same_dim(plays.len(), gradients.len())?;
        let mut trace = Self::with_capacity(plays.len());
        for (x, g) in plays.into_iter().zip(gradients) {
            trace.push(x, g)?;
        }
        Ok(trace)
    }

    /// Appends one round and returns the reward `<x, g>` earned on it.
    pub fn push(&mut self, play: P, gradient: P) -> Result<f64> {
        if let Some(first) = self.plays.first() {
            check_same_dim(first.dim(), play.dim())?;
        }
        let r = play.dot(&gradient)?;
        self.cumulative_reward += r;
        self.plays.push(play);
        self.gradients.push(gradient);
        Ok(r)
    }

    pub fn len(&self) -> usize {
        self.plays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.plays.is_empty()
    }

    /// Dimension of the points in this trace, `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.plays.first().map(Point::dim)
    }

    pub fn plays(&self) -> &[P] {
        &self.plays
    }

    pub fn gradients(&self) -> &[P] {
        &self.gradients
    }

    /// Reward as accumulated incrementally while the trace was built.
    pub fn cumulative_reward(&self) -> f64 {
        self.cumulative_reward
    }

    /// Reward recomputed from scratch, in round order.
    pub fn reward_resummed(&self) -> f64 {
        self.plays
            .iter()
            .zip(&self.gradients)
            .map(|(x, g)| x.dot(g).expect("trace shapes are checked on push"))
            .sum()
    }

    /// Reward after each round, accumulated in round order.
    pub fn running_rewards(&self) -> Vec<f64> {
        let mut acc = 0.0;
        self.plays
            .iter()
            .zip(&self.gradients)
            .map(|(x, g)| {
                acc += x.dot(g).expect("trace shapes are checked on push");
                acc
            })
            .collect()
    }

    /// Componentwise sum of gradients, `g_{1:T}`.
    pub fn gradient_sum(&self) -> Option<P> {
        let first = self.gradients.first()?;
        let mut sum = first.zeros_like();
        for g in &self.gradients {
            for (s, v) in sum.components_mut().iter_mut().zip(g.components()) {
                *s += v;
            }
        }
        Some(sum)
    }

    /// Per-coordinate sums of squared gradients, `H_i`.
    pub fn squared_gradient_sums(&self) -> Vec<f64> {
        let dim = self.dim().unwrap_or(0);
        let mut h = vec![0.0; dim];
        for g in &self.gradients {
            for (acc, v) in h.iter_mut().zip(g.components()) {
                *acc += v * v;
            }
        }
        h
    }

    /// Total squared gradient norm, `H = sum_t ||g_t||_2^2`.
    pub fn squared_gradient_total(&self) -> f64 {
        self.squared_gradient_sums().iter().sum()
    }
}

/// A fixed comparator point with its norms cached.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparator<P> {
    point: P,
    l1_norm: f64,
    l2_norm: f64,
}

impl<P: Point> Comparator<P> {
    pub fn new(point: P) -> Self {
        let l1_norm = point.l1_norm();
        let l2_norm = point.l2_norm();
        Self {
            point,
            l1_norm,
            l2_norm,
        }
    }

    pub fn point(&self) -> &P {
        &self.point
    }

    pub fn l1_norm(&self) -> f64 {
        self.l1_norm
    }

    pub fn l2_norm(&self) -> f64 {
        self.l2_norm
    }
}

impl<P: Point> From<P> for Comparator<P> {
    fn from(point: P) -> Self {
        Self::new(point)
    }
}

/// Total reward `sum_t <x_t, g_t>`.
pub fn reward<P: Point>(trace: &Trace<P>) -> f64 {
    trace.cumulative_reward()
}

/// Regret against `comparator`: `<g_{1:T}, x> - reward`.
pub fn regret<P: Point>(trace: &Trace<P>, comparator: &Comparator<P>) -> Result<f64> {
    let Some(g_sum) = trace.gradient_sum() else {
        return Ok(0.0);
    };
    let comparator_reward = g_sum.dot(comparator.point())?;
    Ok(comparator_reward - trace.cumulative_reward())
}

/// Regret against the origin, i.e. the learner's total loss.
pub fn origin_regret<P: Point>(trace: &Trace<P>) -> f64 {
    -trace.cumulative_reward()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn reward_examples() {
        assert_eq!(reward(&Trace::<f64>::new()), 0.0);
        let t = Trace::from_parts(vec![0.0, 1.0], vec![1.0, -1.0]).unwrap();
        assert_eq!(reward(&t), -1.0);
        let t = Trace::from_parts(vec![0.0, 0.5], vec![1.0, -1.0]).unwrap();
        assert_eq!(reward(&t), -0.5);
    }

    #[test]
    fn regret_examples() {
        let t = Trace::from_parts(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap();
        assert_eq!(regret(&t, &Comparator::new(1.0)).unwrap(), 2.0);
        let t = Trace::from_parts(vec![1.0, 1.0], vec![1.0, 1.0]).unwrap();
        assert_eq!(regret(&t, &Comparator::new(1.0)).unwrap(), 0.0);
        let t = Trace::from_parts(vec![0.3, -2.0], vec![0.5, 1.0]).unwrap();
        assert_eq!(regret(&t, &Comparator::new(0.0)).unwrap(), -reward(&t));
    }

    #[test]
    fn shape_mismatch_is_structural() {
        let mut t = Trace::<Vec<f64>>::new();
        assert!(matches!(
            t.push(vec![0.0, 1.0], vec![1.0]),
            Err(Error::ShapeMismatch { .. })
        ));
        t.push(vec![0.0, 1.0], vec![1.0, 0.0]).unwrap();
        assert!(t.push(vec![0.0], vec![1.0]).is_err());
        let c = Comparator::new(vec![1.0, 2.0, 3.0]);
        assert!(regret(&t, &c).is_err());
        assert!(Trace::from_parts(vec![0.0], vec![]).is_err());
    }

    #[test]
    fn comparator_caches_norms() {
        let c = Comparator::new(vec![1.0, -2.0, 2.0]);
        assert_eq!(c.l1_norm(), 5.0);
        assert_eq!(c.l2_norm(), 3.0);
    }
}
