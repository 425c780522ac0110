//! A complete planning problem: the true agent model, the observer's
//! hypotheses, the weight profile and the objective.

use crate::error::{Error, Result};
use crate::hypothesis::HypothesisSet;
use crate::model::{GridModel, ParamValue};
use crate::weights::WeightProfile;

/// Which model weights are used when marginalizing predictions over hypotheses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Marginal {
    /// P(M): the prior.
    Prior,
    /// P(M | prefix), the chain-rule form.
    #[default]
    Posterior,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Objective {
    Explicable,
    Legible {
        theta_key: String,
        theta_value: ParamValue,
    },
    Predictable {
        marginal: Marginal,
    },
    KPredictable {
        k: usize,
        marginal: Marginal,
    },
    Deceptive,
    Obfuscating,
}

impl Objective {
    pub fn name(&self) -> &'static str {
        match self {
            Objective::Explicable => "explicable",
            Objective::Legible { .. } => "legible",
            Objective::Predictable { .. } => "predictable",
            Objective::KPredictable { .. } => "k_predictable",
            Objective::Deceptive => "deceptive",
            Objective::Obfuscating => "obfuscating",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    hypotheses: HypothesisSet,
    agent: GridModel,
    weights: WeightProfile,
    objective: Option<Objective>,
}

impl Scenario {
    /// The agent model may be one of the explicit hypotheses or a standalone
    /// model; when its id matches a hypothesis, the definitions must agree.
    pub fn new(
        hypotheses: HypothesisSet,
        agent: GridModel,
        weights: WeightProfile,
        objective: Option<Objective>,
    ) -> Result<Self> {
        if agent.grid() != hypotheses.grid() || agent.start() != hypotheses.start() {
            return Err(Error::InvalidScenario(format!(
                "agent model `{}` does not share the observer's grid and start",
                agent.id()
            )));
        }
        if let Some(m) = hypotheses.model(agent.id()) {
            if *m != agent {
                return Err(Error::InvalidScenario(format!(
                    "agent model `{}` differs from the hypothesis of the same id",
                    agent.id()
                )));
            }
        }
        weights.validate()?;
        Ok(Scenario {
            hypotheses,
            agent,
            weights,
            objective,
        })
    }

    pub fn hypotheses(&self) -> &HypothesisSet {
        &self.hypotheses
    }

    pub fn agent(&self) -> &GridModel {
        &self.agent
    }

    pub fn agent_id(&self) -> &str {
        self.agent.id()
    }

    pub fn weights(&self) -> &WeightProfile {
        &self.weights
    }

    pub fn objective(&self) -> Option<&Objective> {
        self.objective.as_ref()
    }

    pub fn with_objective(mut self, objective: Objective) -> Self {
        self.objective = Some(objective);
        self
    }

    pub fn with_weights(mut self, weights: WeightProfile) -> Result<Self> {
        weights.validate()?;
        self.weights = weights;
        Ok(self)
    }

    pub fn with_hypotheses(self, hypotheses: HypothesisSet) -> Result<Self> {
        Scenario::new(hypotheses, self.agent, self.weights, self.objective)
    }

    /// Weight profile actually applied: k-step predictability forces `KroneckerAt(k)`.
    pub fn effective_weights(&self) -> WeightProfile {
        match self.objective {
            Some(Objective::KPredictable { k, .. }) => WeightProfile::KroneckerAt(k),
            _ => self.weights.clone(),
        }
    }
}
