//! Interpretability and adversarial scores computed from the observer's
//! posteriors, and the generalized cost that the planner minimizes.
//!
//! | measure        | value                                         | range          |
//! |----------------|-----------------------------------------------|----------------|
//! | explicability  | Σ over explicit models of P(M \| prefix)       | [0, 1]         |
//! | legibility     | same sum restricted to models with θ(M) = v   | [0, 1]         |
//! | predictability | Σ_M P(postfix \| prefix, M) w(M)               | [0, 1]         |
//! | deception      | 1 - P(agent \| prefix)                         | [0, 1]         |
//! | obfuscation    | entropy of the posterior, in nats             | [0, ln #hyp]   |

use std::fmt;

use crate::belief::{BeliefDistribution, UNKNOWN_MODEL_ID};
use crate::dynamics::{enumerate_complete_traces, optimal_cost};
use crate::error::{Error, Result};
use crate::grid::Action;
use crate::model::{theta_of, GridModel, ParamValue};
use crate::observer::{belief_entropy, Observer, PrefixWalk};
use crate::scenario::{Marginal, Objective, Scenario};
use crate::trace::{ensure_valid, Trace};

#[derive(Debug, Clone, PartialEq)]
pub enum Measure {
    Explicability,
    Legibility {
        theta_key: String,
        theta_value: ParamValue,
    },
    Predictability {
        marginal: Marginal,
    },
    Deception {
        agent_id: String,
    },
    Obfuscation,
}

impl Measure {
    pub fn name(&self) -> &'static str {
        match self {
            Measure::Explicability => "explicability",
            Measure::Legibility { .. } => "legibility",
            Measure::Predictability { .. } => "predictability",
            Measure::Deception { .. } => "deception",
            Measure::Obfuscation => "obfuscation",
        }
    }

    /// The score an objective is built on.
    pub fn for_objective(objective: &Objective, agent_id: &str) -> Measure {
        match objective {
            Objective::Explicable => Measure::Explicability,
            Objective::Legible {
                theta_key,
                theta_value,
            } => Measure::Legibility {
                theta_key: theta_key.clone(),
                theta_value: theta_value.clone(),
            },
            Objective::Predictable { marginal } | Objective::KPredictable { marginal, .. } => {
                Measure::Predictability {
                    marginal: *marginal,
                }
            }
            Objective::Deceptive => Measure::Deception {
                agent_id: agent_id.to_string(),
            },
            Objective::Obfuscating => Measure::Obfuscation,
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A score for one prefix, or for every prefix of a trace.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreReport {
    pub measure: Measure,
    pub prefix_len: usize,
    pub value: f64,
    /// Values for prefix lengths 0..=n when a whole trace was scored.
    pub per_step: Option<Vec<f64>>,
}

/// Score and posterior after one prefix of a scored trace.
#[derive(Debug, Clone, PartialEq)]
pub struct StepScore {
    pub step: usize,
    pub value: f64,
    pub posterior: BeliefDistribution,
}

fn explicit_mass(obs: &Observer, post: &BeliefDistribution) -> f64 {
    obs.ids()[..obs.explicit_count()]
        .iter()
        .map(|id| post.get(id))
        .sum()
}

fn legibility_of(
    obs: &Observer,
    post: &BeliefDistribution,
    key: &str,
    value: &ParamValue,
) -> Result<f64> {
    let mut total = 0.0;
    for m in obs.hypotheses().models() {
        if theta_of(m, key)? == value {
            total += post.get(m.id());
        }
    }
    Ok(total)
}

fn check_theta_key(obs: &Observer, key: &str) -> Result<()> {
    obs.hypotheses()
        .models()
        .iter()
        .try_for_each(|m| theta_of(m, key).map(|_| ()))
}

/// Σ_h w_h P(τ | h) / P(τ_pre^i | h), skipping hypotheses that cannot produce the prefix.
fn predictability_at(walk: &PrefixWalk, step: usize, weights: &[f64]) -> f64 {
    let total: f64 = walk.ln_prefix[step]
        .iter()
        .zip(&walk.ln_full)
        .zip(weights)
        .map(|((&pre, &full), &w)| {
            if pre == f64::NEG_INFINITY || full == f64::NEG_INFINITY || w == 0.0 {
                0.0
            } else {
                w * (full - pre).exp().min(1.0)
            }
        })
        .sum();
    total.clamp(0.0, 1.0)
}

fn normalized_entropy(obs: &Observer, post: &BeliefDistribution) -> f64 {
    let max = (obs.ids().len() as f64).ln();
    (belief_entropy(post) / max).clamp(0.0, 1.0)
}

/// 𝓔: posterior mass kept on the explicit models, i.e. 1 - P(M0 | prefix).
pub fn explicability(obs: &Observer, prefix: &Trace) -> Result<f64> {
    let post = obs.posterior(prefix)?;
    Ok(explicit_mass(obs, &post))
}

/// 𝓛: posterior mass on explicit models whose `theta_key` equals `theta_value`.
/// M0 never contributes.
pub fn legibility(
    obs: &Observer,
    prefix: &Trace,
    theta_key: &str,
    theta_value: &ParamValue,
) -> Result<f64> {
    check_theta_key(obs, theta_key)?;
    let post = obs.posterior(prefix)?;
    legibility_of(obs, &post, theta_key, theta_value)
}

/// 𝓟: probability the observer assigns to `postfix` being the rest of the
/// behavior after `prefix`, marginalized over hypotheses with prior or
/// posterior weights.
pub fn predictability(
    obs: &Observer,
    prefix: &Trace,
    postfix: &[Action],
    marginal: Marginal,
) -> Result<f64> {
    let full = prefix.concat(postfix);
    let walk = obs.walk(&full)?;
    let step = prefix.len();
    let weights = match marginal {
        Marginal::Prior => obs.hypotheses().prior().probabilities(),
        Marginal::Posterior => obs
            .posterior_from_ln(&walk.ln_prefix[step], step)?
            .probabilities(),
    };
    Ok(predictability_at(&walk, step, &weights))
}

/// 𝓓: 1 - P(agent | prefix); the agent's posterior is 0 when it is not a hypothesis.
pub fn deception(obs: &Observer, agent_id: &str, prefix: &Trace) -> Result<f64> {
    let post = obs.posterior(prefix)?;
    Ok(1.0 - post.get(agent_id))
}

/// 𝓞: entropy of the posterior, in nats.
pub fn obfuscation(obs: &Observer, prefix: &Trace) -> Result<f64> {
    Ok(belief_entropy(&obs.posterior(prefix)?))
}

/// Scores every prefix of `trace` (lengths 0..=n) with one pass over the tables.
pub fn score_steps(obs: &Observer, trace: &Trace, measure: &Measure) -> Result<Vec<StepScore>> {
    if let Measure::Legibility { theta_key, .. } = measure {
        check_theta_key(obs, theta_key)?;
    }
    let walk = obs.walk(trace)?;
    let prior = obs.hypotheses().prior().probabilities();
    (0..=trace.len())
        .map(|i| {
            let posterior = obs.posterior_from_ln(&walk.ln_prefix[i], i)?;
            let value = match measure {
                Measure::Explicability => explicit_mass(obs, &posterior),
                Measure::Legibility {
                    theta_key,
                    theta_value,
                } => legibility_of(obs, &posterior, theta_key, theta_value)?,
                Measure::Predictability { marginal } => {
                    let w = match marginal {
                        Marginal::Prior => prior.clone(),
                        Marginal::Posterior => posterior.probabilities(),
                    };
                    predictability_at(&walk, i, &w)
                }
                Measure::Deception { agent_id } => 1.0 - posterior.get(agent_id),
                Measure::Obfuscation => belief_entropy(&posterior),
            };
            Ok(StepScore {
                step: i,
                value,
                posterior,
            })
        })
        .collect()
}

/// Scores a whole trace; `value` is the score of the complete trace.
pub fn score_trace(obs: &Observer, trace: &Trace, measure: &Measure) -> Result<ScoreReport> {
    let steps = score_steps(obs, trace, measure)?;
    let per_step: Vec<f64> = steps.iter().map(|s| s.value).collect();
    Ok(ScoreReport {
        measure: measure.clone(),
        prefix_len: trace.len(),
        value: *per_step.last().expect("at least the empty prefix"),
        per_step: Some(per_step),
    })
}

/// A scenario together with its observer, ready to evaluate C_H.
#[derive(Debug, Clone)]
pub struct Evaluator {
    scenario: Scenario,
    observer: Observer,
}

impl Evaluator {
    pub fn new(scenario: Scenario) -> Result<Self> {
        let observer = Observer::new(scenario.hypotheses())?;
        Ok(Evaluator { scenario, observer })
    }

    /// Reuses an observer already built for the scenario's hypothesis set.
    pub fn with_observer(scenario: Scenario, observer: Observer) -> Result<Self> {
        if observer.hypotheses() != scenario.hypotheses() {
            return Err(Error::InvalidScenario(
                "observer was built for a different hypothesis set".into(),
            ));
        }
        Ok(Evaluator { scenario, observer })
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn observer(&self) -> &Observer {
        &self.observer
    }

    pub fn objective(&self) -> Result<&Objective> {
        self.scenario.objective().ok_or(Error::MissingObjective)
    }

    /// The measure underlying the scenario's objective.
    pub fn measure(&self) -> Result<Measure> {
        Ok(Measure::for_objective(
            self.objective()?,
            self.scenario.agent_id(),
        ))
    }

    fn check_complete(&self, trace: &Trace) -> Result<()> {
        let agent = self.scenario.agent();
        ensure_valid(agent.grid(), trace)?;
        if !agent.is_complete(trace) {
            return Err(Error::IncompleteTrace(agent.id().to_string()));
        }
        Ok(())
    }

    /// C_H(τ) = Σ_i α_i · term_i over prefix lengths i = 0..=n, summed in
    /// ascending i. Steps with zero weight are not evaluated.
    pub fn generalized_cost(&self, trace: &Trace) -> Result<f64> {
        let objective = self.objective()?;
        self.check_complete(trace)?;
        if let Objective::Legible { theta_key, .. } = objective {
            check_theta_key(&self.observer, theta_key)?;
        }
        let alpha = self.scenario.effective_weights().materialize(trace.len())?;
        let walk = self.observer.walk(trace)?;
        let mut total = 0.0;
        for (i, &a) in alpha.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            total += a * self.cost_term(objective, &walk, i)?;
        }
        Ok(total)
    }

    fn cost_term(&self, objective: &Objective, walk: &PrefixWalk, i: usize) -> Result<f64> {
        let obs = &self.observer;
        let post = obs.posterior_from_ln(&walk.ln_prefix[i], i);
        Ok(match objective {
            Objective::Explicable => post?.get(UNKNOWN_MODEL_ID),
            Objective::Legible {
                theta_key,
                theta_value,
            } => 1.0 - legibility_of(obs, &post?, theta_key, theta_value)?,
            Objective::Predictable { marginal } | Objective::KPredictable { marginal, .. } => {
                let w = match marginal {
                    Marginal::Prior => obs.hypotheses().prior().probabilities(),
                    Marginal::Posterior => post?.probabilities(),
                };
                1.0 - predictability_at(walk, i, &w)
            }
            Objective::Deceptive => post?.get(self.scenario.agent_id()),
            Objective::Obfuscating => 1.0 - normalized_entropy(obs, &post?),
        })
    }

    /// Per-step values of the objective's measure along `trace`.
    pub fn step_scores(&self, trace: &Trace) -> Result<Vec<StepScore>> {
        score_steps(&self.observer, trace, &self.measure()?)
    }
}

/// One-shot C_H; builds the observer for the call.
pub fn generalized_cost(scenario: &Scenario, trace: &Trace) -> Result<f64> {
    Evaluator::new(scenario.clone())?.generalized_cost(trace)
}

/// Cost-difference distance from a model's optimal behaviors, C(τ) - C*,
/// with C* computed once.
#[derive(Debug, Clone)]
pub struct DistanceOracle<'a> {
    model: &'a GridModel,
    optimal: f64,
}

impl<'a> DistanceOracle<'a> {
    pub fn new(model: &'a GridModel) -> Result<Self> {
        let set = enumerate_complete_traces(model);
        let optimal = optimal_cost(model, &set)
            .ok_or_else(|| Error::EmptyTraceSet(model.id().to_string()))?;
        Ok(DistanceOracle { model, optimal })
    }

    pub fn optimal_cost(&self) -> f64 {
        self.optimal
    }

    pub fn distance(&self, trace: &Trace) -> Result<f64> {
        ensure_valid(self.model.grid(), trace)?;
        Ok(self.model.action_cost().total(&trace.actions) - self.optimal)
    }
}

/// One-shot [`DistanceOracle::distance`].
pub fn distance_explicability_oracle(model: &GridModel, trace: &Trace) -> Result<f64> {
    DistanceOracle::new(model)?.distance(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{corridor_fixture, office_fixture, COFFEE_DOOR};
    use crate::grid::{Cell, GridSpec};
    use crate::hypothesis::HypothesisSet;
    use crate::weights::WeightProfile;
    use std::sync::OnceLock;

    fn office_observer() -> &'static Observer {
        static OBS: OnceLock<Observer> = OnceLock::new();
        OBS.get_or_init(|| Observer::new(office_fixture().hypotheses()).unwrap())
    }

    fn t(s: &str) -> Trace {
        Trace::from_action_str(Cell::new(3, 0), s).unwrap()
    }

    fn coffee_goal() -> ParamValue {
        ParamValue::Cell(COFFEE_DOOR)
    }

    fn small_single(prior_m0: f64) -> HypothesisSet {
        let g = GridSpec::open(3, 3).unwrap();
        let m = GridModel::builder("a", g, Cell::new(1, 0), Cell::new(0, 2))
            .build()
            .unwrap();
        let prior = BeliefDistribution::new([("a", 1.0 - prior_m0), ("M0", prior_m0)]).unwrap();
        HypothesisSet::new(vec![m], prior, None).unwrap()
    }

    #[test]
    fn explicability_with_zero_m0_prior_is_one() {
        let obs =
            Observer::new(&office_fixture().hypotheses().with_m0_prior(0.0).unwrap()).unwrap();
        for p in ["", "L", "RRDL", "LLLDDDDD"] {
            assert_eq!(explicability(&obs, &t(p)).unwrap(), 1.0);
        }
    }

    #[test]
    fn explicability_of_unexplained_prefix_is_zero() {
        let obs = Observer::new(&small_single(0.1)).unwrap();
        let p = Trace::from_action_str(Cell::new(1, 0), "DDR").unwrap();
        assert_eq!(explicability(&obs, &p).unwrap(), 0.0);
    }

    #[test]
    fn office_prefixes_are_explicable() {
        let obs = office_observer();
        assert!(explicability(obs, &t("DD")).unwrap() > 0.8);
        assert!(explicability(obs, &t("DL")).unwrap() > 0.8);
    }

    #[test]
    fn committing_early_looks_unmodeled() {
        // 1 of the 56 optimal coffee paths starts LLL, while 1/7 of the
        // universal traces do, so the unknown model absorbs most of the mass
        let obs = office_observer();
        let e = explicability(obs, &t("LLLD")).unwrap();
        assert!((e - 0.379_655_051_987_973_3).abs() < 1e-9, "{e}");
    }

    #[test]
    fn legibility_examples() {
        let obs = office_observer();
        let absent = ParamValue::Cell(Cell::new(3, 3));
        assert_eq!(legibility(obs, &t("LL"), "goal", &absent).unwrap(), 0.0);
        let p2 = legibility(obs, &t("DL"), "goal", &coffee_goal()).unwrap();
        let p1 = legibility(obs, &t("DD"), "goal", &coffee_goal()).unwrap();
        assert!(p2 > p1, "{p2} vs {p1}");
        assert!(matches!(
            legibility(obs, &t("L"), "speed", &coffee_goal()),
            Err(Error::UnknownParam { .. })
        ));
    }

    #[test]
    fn shared_theta_with_zero_m0_is_fully_legible() {
        let hs = corridor_fixture().hypotheses().clone();
        let obs = Observer::new(&hs).unwrap();
        let p = Trace::from_action_str(Cell::new(0, 0), "DD").unwrap();
        let v = ParamValue::Cell(Cell::new(0, 5));
        assert!((legibility(&obs, &p, "goal", &v).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn predictability_examples() {
        // one model, unique completion
        let g = GridSpec::open(1, 4).unwrap();
        let m = GridModel::builder("a", g, Cell::new(0, 0), Cell::new(0, 3))
            .build()
            .unwrap();
        let prior = BeliefDistribution::new([("a", 1.0), ("M0", 0.0)]).unwrap();
        let obs = Observer::new(&HypothesisSet::new(vec![m], prior, None).unwrap()).unwrap();
        let pre = Trace::from_action_str(Cell::new(0, 0), "D").unwrap();
        for mode in [Marginal::Prior, Marginal::Posterior] {
            let v = predictability(&obs, &pre, &[Action::Down, Action::Down], mode).unwrap();
            assert_eq!(v, 1.0);
            // stopping early is not a completion of the goal model
            assert_eq!(
                predictability(&obs, &pre, &[Action::Down], mode).unwrap(),
                0.0
            );
        }
    }

    #[test]
    fn corridor_forced_postfix_is_predictable() {
        let obs = Observer::new(corridor_fixture().hypotheses()).unwrap();
        let full = Trace::from_action_str(Cell::new(0, 0), "DDDDD").unwrap();
        for i in 0..=5 {
            let (pre, post) = full.split(i).unwrap();
            for mode in [Marginal::Prior, Marginal::Posterior] {
                assert_eq!(predictability(&obs, &pre, &post, mode).unwrap(), 1.0);
            }
        }
    }

    #[test]
    fn predictability_rejects_invalid_concatenation() {
        let obs = office_observer();
        assert!(matches!(
            predictability(obs, &t("L"), &[Action::Right], Marginal::Posterior),
            Err(Error::InvalidTrace(_))
        ));
    }

    #[test]
    fn deception_examples() {
        let obs = office_observer();
        for p in ["", "L", "RR"] {
            assert_eq!(deception(obs, "janitor", &t(p)).unwrap(), 1.0);
        }
        let right = deception(obs, "coffee", &t("RR")).unwrap();
        let left = deception(obs, "coffee", &t("LL")).unwrap();
        assert!(right > left);

        let obs = Observer::new(&small_single(0.0)).unwrap();
        for p in ["", "D", "DL", "DLD", "LDD"] {
            let p = Trace::from_action_str(Cell::new(1, 0), p).unwrap();
            assert!(deception(&obs, "a", &p).unwrap().abs() < 1e-15);
        }
    }

    #[test]
    fn obfuscation_examples() {
        let obs = office_observer();
        let ambiguous = obfuscation(obs, &t("DD")).unwrap();
        let revealing = obfuscation(obs, &t("DL")).unwrap();
        assert!(ambiguous >= revealing);
        let obs = Observer::new(&small_single(0.1)).unwrap();
        let p = Trace::from_action_str(Cell::new(1, 0), "DDR").unwrap();
        assert_eq!(obfuscation(&obs, &p).unwrap(), 0.0);
    }

    #[test]
    fn explicable_cost_examples() {
        let base = office_fixture().with_objective(Objective::Explicable);
        let zero = base
            .clone()
            .with_hypotheses(base.hypotheses().with_m0_prior(0.0).unwrap())
            .unwrap();
        let ev = Evaluator::new(zero).unwrap();
        for tr in ["LLLDDDDD", "RDLLLLDDDD"] {
            assert_eq!(ev.generalized_cost(&t(tr)).unwrap(), 0.0);
        }

        let final_only = base.with_weights(WeightProfile::FinalOnly).unwrap();
        let ev = Evaluator::new(final_only).unwrap();
        let tr = t("DLDLDLDD");
        let c = ev.generalized_cost(&tr).unwrap();
        let e = explicability(ev.observer(), &tr).unwrap();
        assert!((c - (1.0 - e)).abs() < 1e-12);
    }

    #[test]
    fn cost_requires_complete_agent_trace() {
        let sc = office_fixture().with_objective(Objective::Explicable);
        let ev = Evaluator::new(sc).unwrap();
        assert!(matches!(
            ev.generalized_cost(&t("LLLDDDD")),
            Err(Error::IncompleteTrace(_))
        ));
        assert!(matches!(
            ev.generalized_cost(&t("RRRDDDDD")),
            Err(Error::IncompleteTrace(_))
        ));
        let no_obj = Evaluator::new(office_fixture()).unwrap();
        assert_eq!(
            no_obj.generalized_cost(&t("LLLDDDDD")),
            Err(Error::MissingObjective)
        );
    }

    #[test]
    fn kronecker_beyond_trace_is_an_error() {
        let sc = office_fixture().with_objective(Objective::KPredictable {
            k: 9,
            marginal: Marginal::Posterior,
        });
        let ev = Evaluator::new(sc).unwrap();
        assert_eq!(
            ev.generalized_cost(&t("LLLDDDDD")),
            Err(Error::KroneckerOutOfRange { k: 9, len: 8 })
        );
    }

    #[test]
    fn distance_oracle_examples() {
        let coffee = office_fixture().hypotheses().models()[0].clone();
        assert_eq!(
            distance_explicability_oracle(&coffee, &t("LLLDDDDD")).unwrap(),
            0.0
        );
        assert!(distance_explicability_oracle(&coffee, &t("RLLLLDDDDD")).is_err());
        assert_eq!(
            distance_explicability_oracle(&coffee, &t("RDLLLLDDDD")).unwrap(),
            2.0
        );
        let g = GridSpec::open(3, 3).unwrap();
        let stuck = GridModel::builder("s", g, Cell::new(1, 2), Cell::new(1, 0))
            .build()
            .unwrap();
        assert!(matches!(
            distance_explicability_oracle(&stuck, &Trace::empty(Cell::new(1, 2))),
            Err(Error::EmptyTraceSet(_))
        ));
    }

    #[test]
    fn step_scores_start_at_prior() {
        let obs = office_observer();
        let steps = score_steps(obs, &t("LLLDDDDD"), &Measure::Explicability).unwrap();
        assert_eq!(steps.len(), 9);
        assert!((steps[0].value - 0.9).abs() < 1e-12);
        assert_eq!(
            steps[0].posterior.ids().collect::<Vec<_>>(),
            vec!["coffee", "mail", "M0"]
        );
    }
}
