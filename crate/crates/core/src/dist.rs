//! Occupation-number distributions with explicit truncation-tail tracking.

use crate::error::{Error, Result};
use crate::scalar::{r, Real};

/// Probability distribution over an occupation number `m = 0, 1, ...`,
/// truncated at `probs.len() - 1` with the remaining mass recorded in
/// `tail_mass` (either an analytic remainder or an empirical bound).
#[derive(Debug, Clone, PartialEq)]
pub struct NumberDistribution<R: Real> {
    probs: Vec<R>,
    tail_mass: R,
}

impl<R: Real> NumberDistribution<R> {
    /// Builds a distribution, rejecting negative entries or a tail that leaves
    /// the total meaningfully above 1.
    pub fn new(probs: Vec<R>, tail_mass: R) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::domain("distribution needs at least one entry"));
        }
        let slack = r::<R>(1e-9);
        if probs.iter().any(|p| *p < -slack) || tail_mass < -slack {
            return Err(Error::domain("negative probability in distribution"));
        }
        let total = probs.iter().copied().sum::<R>() + tail_mass;
        if total > R::one() + r::<R>(1e-6) {
            return Err(Error::numerical(format!(
                "distribution mass {total} exceeds 1"
            )));
        }
        Ok(Self { probs, tail_mass })
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Probability of occupation `m`; zero beyond the stored range.
    pub fn prob(&self, m: usize) -> R {
        self.probs.get(m).copied().unwrap_or_else(R::zero)
    }

    pub fn probs(&self) -> &[R] {
        &self.probs
    }

    pub fn tail_mass(&self) -> R {
        self.tail_mass
    }

    /// Sum of the stored (non-tail) probabilities.
    pub fn total(&self) -> R {
        self.probs.iter().copied().sum()
    }

    /// Mean occupation computed from the stored range only.
    pub fn mean(&self) -> R {
        self.probs
            .iter()
            .enumerate()
            .map(|(m, p)| r::<R>(m as f64) * *p)
            .sum()
    }

    /// Total-variation distance over the stored ranges (tails excluded; callers
    /// account for them via `tail_mass`).
    pub fn tv_distance(&self, other: &Self) -> R {
        let len = self.len().max(other.len());
        let mut acc = R::zero();
        for m in 0..len {
            acc = acc + (self.prob(m) - other.prob(m)).abs();
        }
        acc / r::<R>(2.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_negative_mass() {
        assert!(NumberDistribution::new(vec![0.5, -0.2], 0.0).is_err());
    }

    #[test]
    fn rejects_mass_above_one() {
        assert!(NumberDistribution::new(vec![0.9, 0.2], 0.0).is_err());
    }

    #[test]
    fn tv_distance_of_shifted_point_masses_is_one() {
        let a = NumberDistribution::new(vec![1.0, 0.0], 0.0).unwrap();
        let b = NumberDistribution::new(vec![0.0, 1.0], 0.0).unwrap();
        assert_eq!(a.tv_distance(&b), 1.0);
        assert_eq!(a.tv_distance(&a), 0.0);
    }

    #[test]
    fn mean_and_total() {
        let d = NumberDistribution::new(vec![0.25f64, 0.5, 0.25], 0.0).unwrap();
        assert!((d.total() - 1.0).abs() < 1e-15);
        assert!((d.mean() - 1.0).abs() < 1e-15);
    }
}
