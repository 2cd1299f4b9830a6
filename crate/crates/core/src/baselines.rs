//! Comparison learners: constant-rate gradient descent, projected gradient
//! descent, unnormalized exponentiated gradient, and fixed-regularizer FTRL.

use crate::error::{config, Result};
use crate::learner::Learner;
use crate::point::Point;

/// Unconstrained gradient descent with a fixed rate: plays `eta * g_{1:t-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientDescent<P> {
    eta: f64,
    g_sum: P,
}

impl<P: Point> GradientDescent<P> {
    /// `origin` fixes the shape (`0.0` or `vec![0.0; n]`).
    pub fn new(eta: f64, origin: P) -> Result<Self> {
        check_rate(eta)?;
        Ok(Self {
            eta,
            g_sum: origin.zeros_like(),
        })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }
}

impl<P: Point> Learner for GradientDescent<P> {
    type Point = P;

    fn play(&self) -> P {
        let mut x = self.g_sum.clone();
        x.components_mut().iter_mut().for_each(|v| *v *= self.eta);
        x
    }

    fn observe(&mut self, g: &P) {
        add_assign(&mut self.g_sum, g);
    }

    fn dim(&self) -> usize {
        self.g_sum.dim()
    }
}

/// Exact reward of constant-rate gradient descent: `(eta/2)(G^2 - H)`.
pub fn gd_reward_closed_form(eta: f64, g_abs: f64, h: f64) -> f64 {
    0.5 * eta * (g_abs * g_abs - h)
}

/// Textbook regret bound of constant-rate gradient descent: `(eta/2) H + R^2 / (2 eta)`.
pub fn gd_standard_regret_bound(eta: f64, radius: f64, h: f64) -> f64 {
    0.5 * eta * h + radius * radius / (2.0 * eta)
}

/// Gradient descent projected onto the Euclidean ball of radius `R`.
///
/// `radius = f64::INFINITY` disables the projection.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectedGradientDescent<P> {
    eta: f64,
    radius: f64,
    x: P,
}

impl<P: Point> ProjectedGradientDescent<P> {
    pub fn new(eta: f64, radius: f64, origin: P) -> Result<Self> {
        check_rate(eta)?;
        if !(radius > 0.0) {
            return Err(config(format!("projection radius must be positive, got {radius}")));
        }
        Ok(Self {
            eta,
            radius,
            x: origin.zeros_like(),
        })
    }

    /// The tuned-for-horizon rate `eta = R / sqrt(T)`.
    pub fn tuned(radius: f64, rounds: usize, origin: P) -> Result<Self> {
        if rounds == 0 {
            return Err(config("horizon must be at least one round"));
        }
        Self::new(radius / (rounds as f64).sqrt(), radius, origin)
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }
}

impl<P: Point> Learner for ProjectedGradientDescent<P> {
    type Point = P;

    fn play(&self) -> P {
        self.x.clone()
    }

    fn observe(&mut self, g: &P) {
        for (x, v) in self.x.components_mut().iter_mut().zip(g.components()) {
            *x += self.eta * v;
        }
        let norm = self.x.l2_norm();
        if norm > self.radius {
            let scale = self.radius / norm;
            self.x.components_mut().iter_mut().for_each(|v| *v *= scale);
        }
    }

    fn dim(&self) -> usize {
        self.x.dim()
    }
}

/// Unnormalized exponentiated gradient in the loss convention:
/// plays `exp(-eta * l_{1:t-1})` componentwise, where `l` are loss gradients.
///
/// As a [`Learner`] it receives reward gradients and negates them, so a
/// reward gradient `g` is the loss gradient `-g`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnnormalizedEg<P> {
    eta: f64,
    loss_sum: P,
    saturated: bool,
}

impl<P: Point> UnnormalizedEg<P> {
    pub fn new(eta: f64, origin: P) -> Result<Self> {
        check_rate(eta)?;
        Ok(Self {
            eta,
            loss_sum: origin.zeros_like(),
            saturated: false,
        })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// Feeds a loss gradient directly.
    pub fn observe_loss(&mut self, loss_gradient: &P) {
        add_assign(&mut self.loss_sum, loss_gradient);
        self.saturated |= self
            .loss_sum
            .components()
            .iter()
            .any(|l| !(-self.eta * l).exp().is_finite());
    }

    /// True once some play overflowed and was clamped to `f64::MAX`.
    pub fn saturated(&self) -> bool {
        self.saturated
    }
}

impl<P: Point> Learner for UnnormalizedEg<P> {
    type Point = P;

    fn play(&self) -> P {
        let mut x = self.loss_sum.clone();
        x.components_mut()
            .iter_mut()
            .for_each(|l| *l = (-self.eta * *l).exp().min(f64::MAX));
        x
    }

    fn observe(&mut self, g: &P) {
        let mut loss = g.clone();
        loss.components_mut().iter_mut().for_each(|v| *v = -*v);
        self.observe_loss(&loss);
    }

    fn dim(&self) -> usize {
        self.loss_sum.dim()
    }
}

/// A regularizer `psi` with a closed-form solution of `argmin_x s*x + psi(x)`.
pub trait Regularizer: Send + Sync {
    fn value(&self, x: f64) -> f64;

    /// `argmin_x (s * x + psi(x))`.
    fn linear_argmin(&self, s: f64) -> f64;

    /// Samples convexity, nonnegativity and `psi(0) = 0` on `[-span, span]`.
    fn check_admissible(&self, span: f64) -> Result<()> {
        if self.value(0.0) != 0.0 {
            return Err(config("regularizer must vanish at the origin"));
        }
        let n = 200;
        let xs: Vec<f64> = (0..=n).map(|i| -span + 2.0 * span * i as f64 / n as f64).collect();
        for w in xs.windows(3) {
            let (a, m, b) = (self.value(w[0]), self.value(w[1]), self.value(w[2]));
            if a < 0.0 || m < 0.0 || b < 0.0 {
                return Err(config("regularizer must be nonnegative"));
            }
            if m > 0.5 * (a + b) + 1e-12 * (1.0 + a.abs() + b.abs()) {
                return Err(config(format!("regularizer is not convex near x = {}", w[1])));
            }
        }
        Ok(())
    }
}

/// `psi(x) = x^2 / (2 eta)`; its linear argmin is `-eta * s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticRegularizer {
    pub eta: f64,
}

impl Regularizer for QuadraticRegularizer {
    fn value(&self, x: f64) -> f64 {
        x * x / (2.0 * self.eta)
    }

    fn linear_argmin(&self, s: f64) -> f64 {
        -self.eta * s
    }
}

/// Caller-supplied regularizer given by its value and closed-form argmin.
#[derive(Debug, Clone, Copy)]
pub struct ClosedFormRegularizer {
    pub value: fn(f64) -> f64,
    pub linear_argmin: fn(f64) -> f64,
}

impl Regularizer for ClosedFormRegularizer {
    fn value(&self, x: f64) -> f64 {
        (self.value)(x)
    }

    fn linear_argmin(&self, s: f64) -> f64 {
        (self.linear_argmin)(s)
    }
}

/// Which linear term the FTRL argmin uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FtrlSign {
    /// `argmin_x g_{1:t-1} x + psi(x)`, read literally.
    Literal,
    /// `argmin_x -g_{1:t-1} x + psi(x)`: moves toward reward in the reward convention.
    RewardAligned,
}

/// Follow-the-regularized-leader with a fixed regularizer (one dimension).
///
/// The play is a function of `g_{1:t-1}` alone.
#[derive(Debug, Clone)]
pub struct FixedFtrl<R> {
    regularizer: R,
    sign: FtrlSign,
    g_sum: f64,
}

impl<R: Regularizer> FixedFtrl<R> {
    pub fn new(regularizer: R, sign: FtrlSign) -> Result<Self> {
        regularizer.check_admissible(10.0)?;
        Ok(Self {
            regularizer,
            sign,
            g_sum: 0.0,
        })
    }

    /// The play that follows a history with gradient sum `g_sum`.
    pub fn play_for_sum(&self, g_sum: f64) -> f64 {
        let s = match self.sign {
            FtrlSign::Literal => g_sum,
            FtrlSign::RewardAligned => -g_sum,
        };
        self.regularizer.linear_argmin(s)
    }
}

impl FixedFtrl<QuadraticRegularizer> {
    pub fn quadratic(eta: f64, sign: FtrlSign) -> Result<Self> {
        check_rate(eta)?;
        Self::new(QuadraticRegularizer { eta }, sign)
    }
}

impl<R: Regularizer> Learner for FixedFtrl<R> {
    type Point = f64;

    fn play(&self) -> f64 {
        self.play_for_sum(self.g_sum)
    }

    fn observe(&mut self, g: &f64) {
        self.g_sum += g;
    }
}

fn check_rate(eta: f64) -> Result<()> {
    if eta > 0.0 && eta.is_finite() {
        Ok(())
    } else {
        Err(config(format!("learning rate must be positive, got {eta}")))
    }
}

fn add_assign<P: Point>(acc: &mut P, g: &P) {
    for (a, v) in acc.components_mut().iter_mut().zip(g.components()) {
        *a += v;
    }
}
