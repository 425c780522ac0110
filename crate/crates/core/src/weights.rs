//! Per-timestep weights α_0..α_n of the generalized cost.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum WeightProfile {
    /// Equal weight on every prefix, including the empty one and the full trace.
    Uniform,
    /// All mass on the complete trace.
    FinalOnly,
    /// α_i ∝ γ^i, with γ in (0, 1].
    Discount(f64),
    /// All mass on prefix length `k`.
    KroneckerAt(usize),
    /// α_i ∝ values[i]; steps beyond the list get weight 0, entries beyond n are dropped.
    Explicit(Vec<f64>),
}

impl WeightProfile {
    /// Checks the profile's own parameters, independent of any trace.
    pub fn validate(&self) -> Result<()> {
        match self {
            WeightProfile::Discount(g) if !(g.is_finite() && *g > 0.0 && *g <= 1.0) => Err(
                Error::InvalidWeights(format!("discount must lie in (0, 1], got {g}")),
            ),
            WeightProfile::Explicit(v) => {
                if let Some(bad) = v.iter().find(|x| !(x.is_finite() && **x >= 0.0)) {
                    return Err(Error::InvalidWeights(format!(
                        "explicit weights must be finite and non-negative, got {bad}"
                    )));
                }
                if !v.iter().any(|x| *x > 0.0) {
                    return Err(Error::InvalidWeights(
                        "explicit weights are all zero".into(),
                    ));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Normalized weights for a trace with `n` actions (`n + 1` entries, summing to 1).
    pub fn materialize(&self, n: usize) -> Result<Vec<f64>> {
        self.validate()?;
        let raw: Vec<f64> = match self {
            WeightProfile::Uniform => vec![1.0; n + 1],
            WeightProfile::FinalOnly => {
                let mut v = vec![0.0; n + 1];
                v[n] = 1.0;
                v
            }
            WeightProfile::Discount(g) => {
                let mut v = Vec::with_capacity(n + 1);
                let mut w = 1.0;
                for _ in 0..=n {
                    v.push(w);
                    w *= g;
                }
                v
            }
            WeightProfile::KroneckerAt(k) => {
                if *k > n {
                    return Err(Error::KroneckerOutOfRange { k: *k, len: n });
                }
                let mut v = vec![0.0; n + 1];
                v[*k] = 1.0;
                v
            }
            WeightProfile::Explicit(values) => (0..=n)
                .map(|i| values.get(i).copied().unwrap_or(0.0))
                .collect(),
        };
        let total: f64 = raw.iter().sum();
        if total <= 0.0 {
            return Err(Error::InvalidWeights(format!(
                "weights vanish on a trace of length {n}"
            )));
        }
        Ok(raw.into_iter().map(|w| w / total).collect())
    }

    /// Shortest trace length this profile can be materialized against.
    pub fn min_len(&self) -> usize {
        match self {
            WeightProfile::KroneckerAt(k) => *k,
            WeightProfile::Explicit(v) => v.iter().position(|x| *x > 0.0).unwrap_or(0),
            _ => 0,
        }
    }
}
