//! Exact Bayesian observer modeling for human-aware planning on grid worlds.
//!
//! An observer watches an agent walk a grid (moves: down, left, right; no
//! cell revisited) and maintains a posterior over a set of hypothesized agent
//! models plus an "unknown model" hypothesis M0 that explains any behavior
//! equally. Explicability, legibility, predictability, deception and
//! obfuscation are all read off that posterior, and the planner searches the
//! agent's behaviors for the one that minimizes a weighted sum of per-prefix
//! scores.
//!
//! Everything is computed by exhaustive enumeration, so results are exact up
//! to floating point and suitable for small grids only.

pub mod belief;
pub mod dynamics;
pub mod error;
pub mod fixtures;
pub mod grid;
pub mod hypothesis;
pub mod measures;
pub mod model;
pub mod observer;
pub mod planner;
pub mod scenario;
pub mod trace;
pub mod weights;

pub use belief::{BeliefDistribution, UNKNOWN_MODEL_ID};
pub use dynamics::{
    enumerate_complete_traces, enumerate_completions, universal_trace_set, TraceSet,
};
pub use error::{Error, Result};
pub use grid::{Action, Cell, GridSpec};
pub use hypothesis::HypothesisSet;
pub use measures::{
    deception, distance_explicability_oracle, explicability, generalized_cost, legibility,
    obfuscation, predictability, score_steps, score_trace, DistanceOracle, Evaluator, Measure,
    ScoreReport, StepScore,
};
pub use model::{theta_of, trace_cost, ActionCosts, GridModel, ParamValue, GOAL_KEY};
pub use observer::{
    belief_entropy, m0_likelihood, posterior, posterior_trajectory, prefix_likelihood,
    trace_likelihood, LikelihoodTable, Observer,
};
pub use planner::{
    candidate_set, k_step_predictable_plan, restricted_explicable_plan, solve, solve_with,
    PlanResult, SolveOptions, TIE_TOL,
};
pub use scenario::{Marginal, Objective, Scenario};
pub use trace::{validate_trace, Trace, TraceViolation, ViolationKind};
pub use weights::WeightProfile;
