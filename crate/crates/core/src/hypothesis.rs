//! The observer's hypothesis set: explicit models plus the unknown model M0.

use crate::belief::{BeliefDistribution, UNKNOWN_MODEL_ID};
use crate::error::{Error, Result};
use crate::grid::{Cell, GridSpec};
use crate::model::GridModel;

#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisSet {
    models: Vec<GridModel>,
    m0_horizon: usize,
    prior: BeliefDistribution,
}

impl HypothesisSet {
    /// `m0_horizon` defaults to `width * height - 1`. The stored prior is
    /// reordered to follow `models`, with M0 last.
    pub fn new(
        models: Vec<GridModel>,
        prior: BeliefDistribution,
        m0_horizon: Option<usize>,
    ) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidHypothesisSet(msg));
        let Some(first) = models.first() else {
            return invalid("at least one explicit model is required".into());
        };
        for (i, m) in models.iter().enumerate() {
            if m.id() == UNKNOWN_MODEL_ID {
                return invalid(format!(
                    "`{UNKNOWN_MODEL_ID}` is reserved for the unknown model"
                ));
            }
            if models[..i].iter().any(|o| o.id() == m.id()) {
                return invalid(format!("model id `{}` used twice", m.id()));
            }
            if m.grid() != first.grid() || m.start() != first.start() {
                return invalid(format!(
                    "model `{}` does not share the grid and start of `{}`",
                    m.id(),
                    first.id()
                ));
            }
        }
        if prior.len() != models.len() + 1 || !prior.contains(UNKNOWN_MODEL_ID) {
            return invalid(format!(
                "prior must cover exactly the explicit models and `{UNKNOWN_MODEL_ID}`"
            ));
        }
        if let Some(m) = models.iter().find(|m| !prior.contains(m.id())) {
            return invalid(format!("prior has no entry for `{}`", m.id()));
        }
        let horizon = m0_horizon.unwrap_or_else(|| first.grid().max_trace_len());
        if horizon == 0 && first.grid().cell_count() > 1 {
            return invalid("m0_horizon must be positive".into());
        }
        let ordered = models
            .iter()
            .map(|m| (m.id().to_string(), prior.get(m.id())))
            .chain(std::iter::once((
                UNKNOWN_MODEL_ID.to_string(),
                prior.get(UNKNOWN_MODEL_ID),
            )))
            .collect::<Vec<_>>();
        Ok(HypothesisSet {
            models,
            m0_horizon: horizon,
            prior: BeliefDistribution::new(ordered)?,
        })
    }

    pub fn models(&self) -> &[GridModel] {
        &self.models
    }

    pub fn model(&self, id: &str) -> Option<&GridModel> {
        self.models.iter().find(|m| m.id() == id)
    }

    pub fn prior(&self) -> &BeliefDistribution {
        &self.prior
    }

    pub fn m0_horizon(&self) -> usize {
        self.m0_horizon
    }

    pub fn grid(&self) -> &GridSpec {
        self.models[0].grid()
    }

    pub fn start(&self) -> Cell {
        self.models[0].start()
    }

    /// Number of hypotheses, M0 included.
    pub fn hypothesis_count(&self) -> usize {
        self.models.len() + 1
    }

    /// Hypothesis ids in posterior order: explicit models, then M0.
    pub fn ids(&self) -> Vec<String> {
        self.prior.ids().map(str::to_string).collect()
    }

    /// Copy with a new prior over the same ids.
    pub fn with_prior(&self, prior: BeliefDistribution) -> Result<HypothesisSet> {
        HypothesisSet::new(self.models.clone(), prior, Some(self.m0_horizon))
    }

    /// Copy with the M0 prior set to `p0` and the explicit models rescaled to fill the rest.
    pub fn with_m0_prior(&self, p0: f64) -> Result<HypothesisSet> {
        let explicit: f64 = self.models.iter().map(|m| self.prior.get(m.id())).sum();
        if !(0.0..=1.0).contains(&p0) || explicit <= 0.0 {
            return Err(Error::InvalidDistribution(format!(
                "cannot rescale prior to M0 = {p0}"
            )));
        }
        let scale = (1.0 - p0) / explicit;
        let entries = self
            .models
            .iter()
            .map(|m| (m.id().to_string(), self.prior.get(m.id()) * scale))
            .chain(std::iter::once((UNKNOWN_MODEL_ID.to_string(), p0)));
        self.with_prior(BeliefDistribution::new(entries)?)
    }
}
