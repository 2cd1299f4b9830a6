use std::fmt::Debug;

use crate::error::{Error, Result};

/// A play or gradient: either a scalar or a dense vector.
///
/// Both shapes expose their coordinates as a slice so traces, comparators
/// and bound checkers can treat them uniformly.
pub trait Point: Clone + Debug + PartialEq + Send + Sync + 'static {
    fn components(&self) -> &[f64];

    fn components_mut(&mut self) -> &mut [f64];

    /// A zero point with the same shape as `self`.
    fn zeros_like(&self) -> Self;

    fn dim(&self) -> usize {
        self.components().len()
    }

    fn dot(&self, other: &Self) -> Result<f64> {
        check_same_dim(self.dim(), other.dim())?;
        Ok(self
            .components()
            .iter()
            .zip(other.components())
            .map(|(a, b)| a * b)
            .sum())
    }

    fn l1_norm(&self) -> f64 {
        self.components().iter().map(|v| v.abs()).sum()
    }

    fn l2_norm(&self) -> f64 {
        self.components().iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    fn linf_norm(&self) -> f64 {
        self.components().iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

impl Point for f64 {
    fn components(&self) -> &[f64] {
        std::slice::from_ref(self)
    }

    fn components_mut(&mut self) -> &mut [f64] {
        std::slice::from_mut(self)
    }

    fn zeros_like(&self) -> Self {
        0.0
    }
}

impl Point for Vec<f64> {
    fn components(&self) -> &[f64] {
        self
    }

    fn components_mut(&mut self) -> &mut [f64] {
        self
    }

    fn zeros_like(&self) -> Self {
        vec![0.0; self.len()]
    }
}

pub(crate) fn check_same_dim(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::ShapeMismatch { expected, actual })
    }
}

/// Rejects gradients with any component outside `[-1, 1]`. Never clips.
pub fn validate_gradient<P: Point>(g: &P, round: usize) -> Result<()> {
    for (coord, &value) in g.components().iter().enumerate() {
        if !(-1.0..=1.0).contains(&value) {
            return Err(Error::GradientOutOfRange {
                round,
                coord,
                value,
            });
        }
    }
    Ok(())
}

/// A scalar gradient known to lie in `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gradient1D(f64);

impl Gradient1D {
    pub fn new(value: f64) -> Result<Self> {
        validate_gradient(&value, 0)?;
        Ok(Self(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// A gradient vector with infinity norm at most one.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientVec(Vec<f64>);

impl GradientVec {
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if components.is_empty() {
            return Err(crate::error::config("gradient vectors need dimension >= 1"));
        }
        validate_gradient(&components, 0)?;
        Ok(Self(components))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl AsRef<[f64]> for GradientVec {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_instead_of_clipping() {
        assert!(Gradient1D::new(1.0).is_ok());
        assert!(Gradient1D::new(-1.0).is_ok());
        assert!(matches!(
            Gradient1D::new(1.0 + 1e-12),
            Err(Error::GradientOutOfRange { .. })
        ));
        assert!(Gradient1D::new(f64::NAN).is_err());
        let err = validate_gradient(&vec![0.5, -2.0], 9).unwrap_err();
        assert!(matches!(
            err,
            Error::GradientOutOfRange { round: 9, coord: 1, .. }
        ));
    }

    #[test]
    fn norms_and_dot() {
        let v = vec![3.0, -4.0];
        assert_eq!(v.l1_norm(), 7.0);
        assert_eq!(v.l2_norm(), 5.0);
        assert_eq!(v.linf_norm(), 4.0);
        assert_eq!(v.dot(&vec![1.0, 1.0]).unwrap(), -1.0);
        assert!(matches!(
            v.dot(&vec![1.0]),
            Err(Error::ShapeMismatch { expected: 2, actual: 1 })
        ));
        assert!(GradientVec::new(vec![]).is_err());
    }
}
