//! Exhaustive search for the agent behavior that minimizes the generalized cost.
//!
//! Candidates are the agent model's complete traces (optionally only its
//! cost-optimal ones). Every candidate is scored, possibly in parallel, and
//! the argmin is taken sequentially with a fixed tie-break: lower objective
//! (C_H + λ·C), then lower agent cost C(τ), then enumeration order. Objectives
//! within [`TIE_TOL`] of each other count as equal.

use rayon::prelude::*;

use crate::dynamics::{enumerate_complete_traces, optimal_cost, TraceSet};
use crate::error::{Error, Result};
use crate::measures::{Evaluator, ScoreReport};
use crate::scenario::{Objective, Scenario};
use crate::trace::Trace;
use crate::weights::WeightProfile;

/// Relative tolerance when selecting cost-optimal candidates.
const OPTIMAL_COST_TOL: f64 = 1e-9;

/// Objectives closer than this (relative) are tied and fall through to the
/// agent-cost and enumeration-order tie-breaks.
pub const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Only consider behaviors that are cost-optimal in the agent model.
    pub restrict_optimal: bool,
    /// Weight of the agent's own cost added to C_H.
    pub lambda: f64,
    /// Score candidates on the rayon pool.
    pub parallel: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            restrict_optimal: false,
            lambda: 0.0,
            parallel: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlanResult {
    pub chosen: Trace,
    /// C_H of the chosen trace (without the λ term).
    pub objective_cost: f64,
    /// C(τ) in the agent model.
    pub agent_cost: f64,
    /// The objective's measure after each prefix of the chosen trace.
    pub per_step_scores: Vec<ScoreReport>,
    pub candidates_evaluated: usize,
}

/// Complete traces of the agent model that the search ranges over.
pub fn candidate_set(scenario: &Scenario, restrict_optimal: bool) -> Result<TraceSet> {
    let agent = scenario.agent();
    let all = enumerate_complete_traces(agent);
    let Some(best) = optimal_cost(agent, &all) else {
        return Err(Error::EmptyCandidateSet(format!(
            "agent model `{}` cannot reach its goal",
            agent.id()
        )));
    };
    let tol = OPTIMAL_COST_TOL * best.abs().max(1.0);
    let set = if restrict_optimal {
        all.filter(|t| agent.action_cost().total(&t.actions) <= best + tol)
    } else {
        all
    };
    let weights = scenario.effective_weights();
    let min_len = weights.min_len();
    let longest = set.iter().map(Trace::len).max().unwrap_or(0);
    if longest < min_len {
        return Err(match weights {
            WeightProfile::KroneckerAt(k) => Error::KroneckerOutOfRange { k, len: longest },
            _ => Error::InvalidWeights(format!(
                "weights vanish on every candidate (longest has {longest} actions)"
            )),
        });
    }
    Ok(set.filter(|t| t.len() >= min_len))
}

/// Solves the scenario by exhaustive search.
pub fn solve(scenario: &Scenario, options: SolveOptions) -> Result<PlanResult> {
    let ev = Evaluator::new(scenario.clone())?;
    solve_with(&ev, options)
}

/// Like [`solve`], reusing an evaluator whose observer is already built.
pub fn solve_with(ev: &Evaluator, options: SolveOptions) -> Result<PlanResult> {
    if !(options.lambda.is_finite() && options.lambda >= 0.0) {
        return Err(Error::InvalidScenario(format!(
            "lambda must be finite and non-negative, got {}",
            options.lambda
        )));
    }
    ev.objective()?;
    let scenario = ev.scenario();
    let candidates = candidate_set(scenario, options.restrict_optimal)?;
    let costs = score_candidates(ev, &candidates, options.parallel);

    let agent = scenario.agent();
    let mut best: Option<(f64, f64, usize, f64)> = None;
    for (idx, (trace, cost)) in candidates.iter().zip(costs).enumerate() {
        let objective = cost?;
        let agent_cost = agent.action_cost().total(&trace.actions);
        let total = objective + options.lambda * agent_cost;
        let better = match best {
            None => true,
            Some((bt, bc, _, _)) => {
                let tol = TIE_TOL * bt.abs().max(1.0);
                total < bt - tol || (total <= bt + tol && agent_cost < bc)
            }
        };
        if better {
            best = Some((total, agent_cost, idx, objective));
        }
    }
    let (_, agent_cost, idx, objective_cost) =
        best.expect("candidate_set never returns an empty set");
    let chosen = candidates.traces()[idx].clone();
    let measure = ev.measure()?;
    let per_step_scores = ev
        .step_scores(&chosen)?
        .into_iter()
        .map(|s| ScoreReport {
            measure: measure.clone(),
            prefix_len: s.step,
            value: s.value,
            per_step: None,
        })
        .collect();
    Ok(PlanResult {
        chosen,
        objective_cost,
        agent_cost,
        per_step_scores,
        candidates_evaluated: candidates.len(),
    })
}

fn score_candidates(ev: &Evaluator, candidates: &TraceSet, parallel: bool) -> Vec<Result<f64>> {
    if parallel {
        candidates
            .traces()
            .par_iter()
            .map(|t| ev.generalized_cost(t))
            .collect()
    } else {
        candidates.iter().map(|t| ev.generalized_cost(t)).collect()
    }
}

/// Plans for predictability at exactly step `k` of a `KPredictable(k)` scenario.
pub fn k_step_predictable_plan(scenario: &Scenario) -> Result<PlanResult> {
    match scenario.objective() {
        Some(Objective::KPredictable { .. }) => solve(scenario, SolveOptions::default()),
        _ => Err(Error::InvalidScenario(
            "k-step predictable planning needs a k_predictable objective".into(),
        )),
    }
}

/// Lie-by-omission explicability: the most explicable of the agent's optimal behaviors.
pub fn restricted_explicable_plan(scenario: &Scenario) -> Result<PlanResult> {
    match scenario.objective() {
        Some(Objective::Explicable) => solve(
            scenario,
            SolveOptions {
                restrict_optimal: true,
                ..SolveOptions::default()
            },
        ),
        _ => Err(Error::InvalidScenario(
            "restricted explicable planning needs an explicable objective".into(),
        )),
    }
}
