//! Probability vectors over hypothesis identifiers.

use crate::error::{Error, Result};

/// Reserved identifier of the unknown-model hypothesis.
pub const UNKNOWN_MODEL_ID: &str = "M0";

/// Tolerance on the total mass of a distribution.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// Normalized distribution over model ids, kept in a fixed order.
#[derive(Debug, Clone, PartialEq)]
pub struct BeliefDistribution {
    entries: Vec<(String, f64)>,
}

impl BeliefDistribution {
    pub fn new<I, S>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, f64)>,
        S: Into<String>,
    {
        let entries: Vec<(String, f64)> = entries.into_iter().map(|(k, p)| (k.into(), p)).collect();
        for (i, (id, p)) in entries.iter().enumerate() {
            if !(p.is_finite() && *p >= 0.0) {
                return Err(Error::InvalidDistribution(format!(
                    "probability of `{id}` must be finite and non-negative, got {p}"
                )));
            }
            if entries[..i].iter().any(|(other, _)| other == id) {
                return Err(Error::InvalidDistribution(format!("`{id}` listed twice")));
            }
        }
        let total: f64 = entries.iter().map(|(_, p)| p).sum();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::InvalidDistribution(format!(
                "probabilities sum to {total}, expected 1"
            )));
        }
        Ok(BeliefDistribution { entries })
    }

    /// Probability of `id`; 0 for ids not in the support list.
    pub fn get(&self, id: &str) -> f64 {
        self.entries
            .iter()
            .find(|(k, _)| k == id)
            .map_or(0.0, |(_, p)| *p)
    }

    pub fn contains(&self, id: &str) -> bool {
        self.entries.iter().any(|(k, _)| k == id)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.entries.iter().map(|(k, p)| (k.as_str(), *p))
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(k, _)| k.as_str())
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.entries.iter().map(|(_, p)| *p).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.entries.iter().map(|(_, p)| p).sum()
    }

    /// Built from already-normalized values produced inside the crate.
    pub(crate) fn from_normalized(entries: Vec<(String, f64)>) -> Self {
        debug_assert!(
            (entries.iter().map(|(_, p)| p).sum::<f64>() - 1.0).abs() <= NORMALIZATION_TOL
        );
        BeliefDistribution { entries }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unnormalized_or_negative() {
        assert!(BeliefDistribution::new([("a", 0.5), ("b", 0.4)]).is_err());
        assert!(BeliefDistribution::new([("a", 1.2), ("b", -0.2)]).is_err());
        assert!(BeliefDistribution::new([("a", 0.5), ("a", 0.5)]).is_err());
        let b = BeliefDistribution::new([("a", 0.45), ("b", 0.45), ("M0", 0.1)]).unwrap();
        assert_eq!(b.get("b"), 0.45);
        assert_eq!(b.get("zzz"), 0.0);
        assert!((b.total() - 1.0).abs() < 1e-15);
    }
}
