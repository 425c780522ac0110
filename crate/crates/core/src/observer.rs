//! The observer's inference engine.
//!
//! Each hypothesis carries a likelihood table over its complete behaviors:
//! Boltzmann-rational for explicit goal models, uniform over every
//! dynamically possible behavior for M0. The likelihood of an observed prefix
//! is the total mass of the behaviors it begins, and the posterior follows
//! from Bayes' rule against the hypothesis prior.
//!
//! Tables are stored as prefix trees holding log-masses, so a prefix lookup
//! is a walk of length `|prefix|` and tiny likelihoods do not underflow
//! before normalization.

use rayon::prelude::*;

use crate::belief::{BeliefDistribution, UNKNOWN_MODEL_ID};
use crate::dynamics::{enumerate_complete_traces, universal_trace_set, TraceSet};
use crate::error::{Error, Result};
use crate::grid::Action;
use crate::hypothesis::HypothesisSet;
use crate::model::GridModel;
use crate::trace::{ensure_valid, Trace};

const NO_CHILD: u32 = u32::MAX;

/// ln(Σ exp(x)) over the given values; `-inf` when all are `-inf`.
pub(crate) fn log_sum_exp(values: impl IntoIterator<Item = f64> + Clone) -> f64 {
    let max = values.clone().into_iter().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    let sum: f64 = values.into_iter().map(|v| (v - max).exp()).sum();
    max + sum.ln()
}

#[derive(Debug, Clone)]
struct Node {
    children: [u32; 3],
    /// ln P of the trace ending exactly here, `-inf` if it is not a member.
    terminal: f64,
    /// ln of the total mass of members having this node as a prefix.
    subtree: f64,
}

#[derive(Debug, Clone)]
struct PrefixTree {
    nodes: Vec<Node>,
}

impl PrefixTree {
    fn build<'a>(entries: impl Iterator<Item = (&'a [Action], f64)>) -> Self {
        let mut nodes = vec![Node {
            children: [NO_CHILD; 3],
            terminal: f64::NEG_INFINITY,
            subtree: f64::NEG_INFINITY,
        }];
        for (actions, ln_p) in entries {
            let mut cur = 0usize;
            for a in actions {
                let slot = nodes[cur].children[a.index()];
                cur = if slot == NO_CHILD {
                    nodes.push(Node {
                        children: [NO_CHILD; 3],
                        terminal: f64::NEG_INFINITY,
                        subtree: f64::NEG_INFINITY,
                    });
                    let id = nodes.len() - 1;
                    nodes[cur].children[a.index()] = id as u32;
                    id
                } else {
                    slot as usize
                };
            }
            nodes[cur].terminal = ln_p;
        }
        // children always sit after their parent
        for i in (0..nodes.len()).rev() {
            let node = &nodes[i];
            let mut parts = [
                node.terminal,
                f64::NEG_INFINITY,
                f64::NEG_INFINITY,
                f64::NEG_INFINITY,
            ];
            for (slot, &c) in node.children.iter().enumerate() {
                if c != NO_CHILD {
                    parts[slot + 1] = nodes[c as usize].subtree;
                }
            }
            nodes[i].subtree = log_sum_exp(parts);
        }
        PrefixTree { nodes }
    }

    fn find(&self, actions: &[Action]) -> Option<&Node> {
        let mut cur = 0usize;
        for a in actions {
            let c = self.nodes[cur].children[a.index()];
            if c == NO_CHILD {
                return None;
            }
            cur = c as usize;
        }
        Some(&self.nodes[cur])
    }
}

/// P(τ | M) over one model's complete-trace set.
#[derive(Debug, Clone)]
pub struct LikelihoodTable {
    model_id: String,
    set: TraceSet,
    ln_probs: Vec<f64>,
    tree: PrefixTree,
}

impl LikelihoodTable {
    fn from_log_weights(model_id: &str, set: TraceSet, ln_weights: Vec<f64>) -> Self {
        let ln_z = log_sum_exp(ln_weights.iter().copied());
        let ln_probs: Vec<f64> = ln_weights.iter().map(|w| w - ln_z).collect();
        let tree = PrefixTree::build(
            set.iter()
                .zip(&ln_probs)
                .map(|(t, &lp)| (t.actions.as_slice(), lp)),
        );
        LikelihoodTable {
            model_id: model_id.to_string(),
            set,
            ln_probs,
            tree,
        }
    }

    pub fn model_id(&self) -> &str {
        &self.model_id
    }

    pub fn traces(&self) -> &TraceSet {
        &self.set
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    /// `(trace, probability)` pairs in the trace set's order.
    pub fn iter(&self) -> impl Iterator<Item = (&Trace, f64)> {
        self.set.iter().zip(self.ln_probs.iter().map(|lp| lp.exp()))
    }

    /// ln P(τ | M); `-inf` for non-members.
    pub fn ln_probability(&self, trace: &Trace) -> f64 {
        if trace.start != self.set.start() {
            return f64::NEG_INFINITY;
        }
        self.tree
            .find(&trace.actions)
            .map_or(f64::NEG_INFINITY, |n| n.terminal)
    }

    pub fn probability(&self, trace: &Trace) -> f64 {
        self.ln_probability(trace).exp()
    }

    /// ln of the total mass of members that begin with `prefix`.
    pub fn ln_prefix_likelihood(&self, prefix: &Trace) -> f64 {
        if prefix.start != self.set.start() {
            return f64::NEG_INFINITY;
        }
        self.tree
            .find(&prefix.actions)
            .map_or(f64::NEG_INFINITY, |n| n.subtree)
    }

    fn node_walk(&self, actions: &[Action]) -> (Vec<f64>, f64) {
        let mut ln_prefix = Vec::with_capacity(actions.len() + 1);
        let mut cur = Some(0usize);
        ln_prefix.push(self.tree.nodes[0].subtree);
        for a in actions {
            cur = cur.and_then(|i| {
                let c = self.tree.nodes[i].children[a.index()];
                (c != NO_CHILD).then_some(c as usize)
            });
            ln_prefix.push(cur.map_or(f64::NEG_INFINITY, |i| self.tree.nodes[i].subtree));
        }
        let terminal = cur.map_or(f64::NEG_INFINITY, |i| self.tree.nodes[i].terminal);
        (ln_prefix, terminal)
    }
}

/// Boltzmann likelihood: P(τ|M) = exp(-β (C(τ) - C*)) / Z over `trace_set`.
pub fn trace_likelihood(model: &GridModel, trace_set: &TraceSet) -> LikelihoodTable {
    let costs: Vec<f64> = trace_set
        .iter()
        .map(|t| model.action_cost().total(&t.actions))
        .collect();
    let best = costs.iter().copied().fold(f64::INFINITY, f64::min);
    let ln_weights = costs.iter().map(|c| -model.beta() * (c - best)).collect();
    LikelihoodTable::from_log_weights(model.id(), trace_set.clone(), ln_weights)
}

/// Uniform likelihood of the unknown model over the universal trace set.
pub fn m0_likelihood(universal: &TraceSet) -> LikelihoodTable {
    LikelihoodTable::from_log_weights(
        UNKNOWN_MODEL_ID,
        universal.clone(),
        vec![0.0; universal.len()],
    )
}

/// P(prefix | M): total mass of the model's behaviors beginning with `prefix`.
pub fn prefix_likelihood(table: &LikelihoodTable, prefix: &Trace) -> f64 {
    table.ln_prefix_likelihood(prefix).exp()
}

/// Shannon entropy in nats, with 0 ln 0 = 0.
pub fn belief_entropy(b: &BeliefDistribution) -> f64 {
    let h: f64 = b
        .iter()
        .filter(|(_, p)| *p > 0.0)
        .map(|(_, p)| -p * p.ln())
        .sum();
    h.max(0.0)
}

/// Log prefix likelihoods of every hypothesis along one trace.
#[derive(Debug, Clone)]
pub(crate) struct PrefixWalk {
    /// `[step][hypothesis]`, step in 0..=n.
    pub ln_prefix: Vec<Vec<f64>>,
    /// ln P(full trace | hypothesis).
    pub ln_full: Vec<f64>,
}

/// Posterior inference over a fixed hypothesis set, with every likelihood
/// table built once up front.
#[derive(Debug, Clone)]
pub struct Observer {
    hypotheses: HypothesisSet,
    ids: Vec<String>,
    /// Explicit models in order, then M0.
    tables: Vec<LikelihoodTable>,
    ln_prior: Vec<f64>,
}

impl Observer {
    pub fn new(hypotheses: &HypothesisSet) -> Result<Self> {
        let (mut tables, m0) = rayon::join(
            || {
                hypotheses
                    .models()
                    .par_iter()
                    .map(|m| trace_likelihood(m, &enumerate_complete_traces(m)))
                    .collect::<Vec<_>>()
            },
            || {
                universal_trace_set(
                    hypotheses.grid(),
                    hypotheses.start(),
                    hypotheses.m0_horizon(),
                )
                .map(|u| m0_likelihood(&u))
            },
        );
        tables.push(m0?);
        let ids = hypotheses.ids();
        let ln_prior = hypotheses.prior().iter().map(|(_, p)| p.ln()).collect();
        Ok(Observer {
            hypotheses: hypotheses.clone(),
            ids,
            tables,
            ln_prior,
        })
    }

    pub fn hypotheses(&self) -> &HypothesisSet {
        &self.hypotheses
    }

    /// Hypothesis ids in posterior order: explicit models, then M0.
    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|i| i == id)
    }

    /// Number of explicit models (M0 excluded).
    pub fn explicit_count(&self) -> usize {
        self.tables.len() - 1
    }

    pub fn table(&self, id: &str) -> Option<&LikelihoodTable> {
        self.index_of(id).map(|i| &self.tables[i])
    }

    pub fn tables(&self) -> &[LikelihoodTable] {
        &self.tables
    }

    pub(crate) fn check_trace(&self, trace: &Trace) -> Result<()> {
        ensure_valid(self.hypotheses.grid(), trace)?;
        if trace.start != self.hypotheses.start() {
            return Err(Error::StartMismatch {
                col: trace.start.col,
                row: trace.start.row,
            });
        }
        Ok(())
    }

    pub(crate) fn walk(&self, trace: &Trace) -> Result<PrefixWalk> {
        self.check_trace(trace)?;
        let n = trace.len();
        let mut ln_prefix = vec![Vec::with_capacity(self.tables.len()); n + 1];
        let mut ln_full = Vec::with_capacity(self.tables.len());
        for table in &self.tables {
            let (mut per_step, full) = table.node_walk(&trace.actions);
            // the empty prefix has probability exactly 1 under any non-empty table
            if per_step[0].is_finite() {
                per_step[0] = 0.0;
            }
            for (row, v) in ln_prefix.iter_mut().zip(per_step) {
                row.push(v);
            }
            ln_full.push(full);
        }
        Ok(PrefixWalk { ln_prefix, ln_full })
    }

    /// Normalizes `ln P(prefix|M) + ln P(M)` over all hypotheses.
    pub(crate) fn posterior_from_ln(
        &self,
        ln_likelihood: &[f64],
        step: usize,
    ) -> Result<BeliefDistribution> {
        let joint: Vec<f64> = ln_likelihood
            .iter()
            .zip(&self.ln_prior)
            .map(|(l, p)| l + p)
            .collect();
        let max = joint.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if max == f64::NEG_INFINITY {
            return Err(Error::NoExplanation { step });
        }
        let weights: Vec<f64> = joint.iter().map(|j| (j - max).exp()).collect();
        let total: f64 = weights.iter().sum();
        Ok(BeliefDistribution::from_normalized(
            self.ids
                .iter()
                .cloned()
                .zip(weights.into_iter().map(|w| w / total))
                .collect(),
        ))
    }

    /// P(prefix | M) for the hypothesis `id`.
    pub fn prefix_likelihood(&self, id: &str, prefix: &Trace) -> Result<f64> {
        self.check_trace(prefix)?;
        let table = self
            .table(id)
            .ok_or_else(|| Error::InvalidHypothesisSet(format!("no hypothesis named `{id}`")))?;
        Ok(prefix_likelihood(table, prefix))
    }

    /// P(M | prefix) over the explicit models and M0.
    pub fn posterior(&self, prefix: &Trace) -> Result<BeliefDistribution> {
        self.check_trace(prefix)?;
        let ln: Vec<f64> = self
            .tables
            .iter()
            .map(|t| t.ln_prefix_likelihood(prefix))
            .collect();
        self.posterior_from_ln(&ln, prefix.len())
    }

    /// Posterior after each prefix of `trace`, for i = 0..=n.
    pub fn posterior_trajectory(&self, trace: &Trace) -> Result<Vec<BeliefDistribution>> {
        let walk = self.walk(trace)?;
        walk.ln_prefix
            .iter()
            .enumerate()
            .map(|(i, ln)| self.posterior_from_ln(ln, i))
            .collect()
    }
}

/// One-shot posterior; builds an [`Observer`] for the call.
pub fn posterior(hs: &HypothesisSet, prefix: &Trace) -> Result<BeliefDistribution> {
    Observer::new(hs)?.posterior(prefix)
}

/// One-shot posterior trajectory; builds an [`Observer`] for the call.
pub fn posterior_trajectory(hs: &HypothesisSet, trace: &Trace) -> Result<Vec<BeliefDistribution>> {
    Observer::new(hs)?.posterior_trajectory(trace)
}
