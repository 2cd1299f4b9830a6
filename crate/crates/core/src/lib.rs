//! Parameter-free online linear optimization by reward doubling.
//!
//! Learners play points, observe linear gradients (rewards are `<g, x>`), and
//! are evaluated against closed-form reward floors and regret ceilings.

// `!(x > 0.0)` is used on purpose: it rejects NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod adversaries;
pub mod baselines;
pub mod bounds;
pub mod constants;
pub mod error;
pub mod exec;
pub mod harness;
pub mod learner;
pub mod multidim;
pub mod onedim;
pub mod point;
pub mod report;
pub mod rng;
pub mod trace;

pub use error::{Error, Result};
pub use exec::Exec;
pub use learner::{run, AlwaysZero, Learner};
pub use point::{Gradient1D, GradientVec, Point};
pub use trace::{origin_regret, regret, reward, Comparator, Trace};
