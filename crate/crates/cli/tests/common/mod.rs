//! Brute-force reference implementation used to cross-check the library.
//!
//! Everything here is recomputed from scratch: its own trace enumeration,
//! plain probabilities (no log domain), and hash maps of prefix masses
//! instead of a prefix tree.

#![allow(dead_code)]

use std::collections::HashMap;

use ghap_core::{
    Cell, GridModel, GridSpec, HypothesisSet, Marginal, Objective, ParamValue, Scenario,
    WeightProfile,
};

pub struct RefModel {
    pub traces: HashMap<String, f64>,
    pub prefix_mass: HashMap<String, f64>,
}

impl RefModel {
    fn from_probs(traces: Vec<(String, f64)>) -> RefModel {
        let mut prefix_mass: HashMap<String, f64> = HashMap::new();
        for (t, p) in &traces {
            for i in 0..=t.len() {
                *prefix_mass.entry(t[..i].to_string()).or_default() += p;
            }
        }
        RefModel {
            traces: traces.into_iter().collect(),
            prefix_mass,
        }
    }

    pub fn prefix(&self, p: &str) -> f64 {
        self.prefix_mass.get(p).copied().unwrap_or(0.0)
    }

    pub fn full(&self, t: &str) -> f64 {
        self.traces.get(t).copied().unwrap_or(0.0)
    }
}

fn step(grid: &GridSpec, c: (i64, i64), a: char) -> Option<(i64, i64)> {
    let n = match a {
        'D' => (c.0, c.1 + 1),
        'L' => (c.0 - 1, c.1),
        'R' => (c.0 + 1, c.1),
        _ => unreachable!(),
    };
    let inside =
        n.0 >= 0 && n.1 >= 0 && (n.0 as u32) < grid.width() && (n.1 as u32) < grid.height();
    (inside && !grid.is_blocked(Cell::new(n.0 as u32, n.1 as u32))).then_some(n)
}

/// All no-revisit D/L/R walks from `start`; with a goal they stop at it and
/// only the walks that reach it are kept, otherwise every walk of length
/// at most `horizon` is kept.
pub fn enumerate(grid: &GridSpec, start: Cell, goal: Option<Cell>, horizon: usize) -> Vec<String> {
    fn go(
        grid: &GridSpec,
        c: (i64, i64),
        goal: Option<(i64, i64)>,
        horizon: usize,
        path: &mut String,
        seen: &mut Vec<(i64, i64)>,
        out: &mut Vec<String>,
    ) {
        match goal {
            Some(g) if g == c => {
                out.push(path.clone());
                return;
            }
            Some(_) => {}
            None => out.push(path.clone()),
        }
        if goal.is_none() && path.len() == horizon {
            return;
        }
        for a in ['D', 'L', 'R'] {
            if let Some(n) = step(grid, c, a) {
                if !seen.contains(&n) {
                    seen.push(n);
                    path.push(a);
                    go(grid, n, goal, horizon, path, seen, out);
                    path.pop();
                    seen.pop();
                }
            }
        }
    }
    let s = (start.col as i64, start.row as i64);
    let mut out = Vec::new();
    go(
        grid,
        s,
        goal.map(|g| (g.col as i64, g.row as i64)),
        horizon,
        &mut String::new(),
        &mut vec![s],
        &mut out,
    );
    out
}

pub fn cost(model: &GridModel, t: &str) -> f64 {
    let c = model.action_cost();
    t.chars()
        .map(|a| match a {
            'D' => c.down,
            'L' => c.left,
            _ => c.right,
        })
        .sum()
}

pub fn boltzmann(model: &GridModel) -> RefModel {
    let traces = enumerate(model.grid(), model.start(), Some(model.goal()), usize::MAX);
    let costs: Vec<f64> = traces.iter().map(|t| cost(model, t)).collect();
    let best = costs.iter().copied().fold(f64::INFINITY, f64::min);
    let w: Vec<f64> = costs
        .iter()
        .map(|c| (-model.beta() * (c - best)).exp())
        .collect();
    let z: f64 = w.iter().sum();
    RefModel::from_probs(traces.into_iter().zip(w).map(|(t, w)| (t, w / z)).collect())
}

pub fn uniform(traces: Vec<String>) -> RefModel {
    let p = 1.0 / traces.len() as f64;
    RefModel::from_probs(traces.into_iter().map(|t| (t, p)).collect())
}

pub struct RefObserver {
    pub ids: Vec<String>,
    pub models: Vec<RefModel>,
    pub params: Vec<std::collections::BTreeMap<String, ParamValue>>,
    pub prior: Vec<f64>,
}

impl RefObserver {
    pub fn new(hs: &HypothesisSet) -> RefObserver {
        let mut ids: Vec<String> = hs.models().iter().map(|m| m.id().to_string()).collect();
        let mut models: Vec<RefModel> = hs.models().iter().map(boltzmann).collect();
        ids.push("M0".into());
        models.push(uniform(enumerate(
            hs.grid(),
            hs.start(),
            None,
            hs.m0_horizon(),
        )));
        RefObserver {
            prior: ids.iter().map(|id| hs.prior().get(id)).collect(),
            params: hs.models().iter().map(|m| m.params().clone()).collect(),
            ids,
            models,
        }
    }

    pub fn explicit(&self) -> usize {
        self.ids.len() - 1
    }

    pub fn posterior(&self, prefix: &str) -> Option<Vec<f64>> {
        let joint: Vec<f64> = self
            .models
            .iter()
            .zip(&self.prior)
            .map(|(m, p)| m.prefix(prefix) * p)
            .collect();
        let z: f64 = joint.iter().sum();
        (z > 0.0).then(|| joint.iter().map(|j| j / z).collect())
    }

    pub fn explicability(&self, prefix: &str) -> Option<f64> {
        Some(self.posterior(prefix)?[..self.explicit()].iter().sum())
    }

    pub fn legibility(&self, prefix: &str, key: &str, value: &ParamValue) -> Option<f64> {
        let post = self.posterior(prefix)?;
        Some(
            (0..self.explicit())
                .filter(|&i| self.params[i].get(key) == Some(value))
                .map(|i| post[i])
                .sum(),
        )
    }

    pub fn predictability(&self, prefix: &str, full: &str, marginal: Marginal) -> Option<f64> {
        let w = match marginal {
            Marginal::Prior => self.prior.clone(),
            Marginal::Posterior => self.posterior(prefix)?,
        };
        Some(
            self.models
                .iter()
                .zip(w)
                .map(|(m, w)| {
                    let pre = m.prefix(prefix);
                    if pre == 0.0 || w == 0.0 {
                        0.0
                    } else {
                        w * m.full(full) / pre
                    }
                })
                .sum(),
        )
    }

    pub fn entropy(&self, prefix: &str) -> Option<f64> {
        Some(
            self.posterior(prefix)?
                .iter()
                .filter(|&&p| p > 0.0)
                .map(|p| -p * p.ln())
                .sum(),
        )
    }

    fn term(&self, objective: &Objective, agent: &str, t: &str, i: usize) -> Option<f64> {
        let pre = &t[..i];
        let n = self.ids.len() as f64;
        Some(match objective {
            Objective::Explicable => 1.0 - self.explicability(pre)?,
            Objective::Legible {
                theta_key,
                theta_value,
            } => 1.0 - self.legibility(pre, theta_key, theta_value)?,
            Objective::Predictable { marginal } | Objective::KPredictable { marginal, .. } => {
                1.0 - self.predictability(pre, t, *marginal)?
            }
            Objective::Deceptive => {
                let post = self.posterior(pre)?;
                self.ids
                    .iter()
                    .position(|id| id == agent)
                    .map_or(0.0, |k| post[k])
            }
            Objective::Obfuscating => 1.0 - self.entropy(pre)? / n.ln(),
        })
    }

    /// C_H of a complete trace under `scenario`'s objective and weights.
    pub fn generalized_cost(&self, scenario: &Scenario, t: &str) -> Option<f64> {
        let objective = scenario.objective()?;
        let alpha = weights(&scenario.effective_weights(), t.len());
        let mut total = 0.0;
        for (i, a) in alpha.iter().enumerate() {
            if *a > 0.0 {
                total += a * self.term(objective, scenario.agent_id(), t, i)?;
            }
        }
        Some(total)
    }
}

/// α_0..α_n normalized to sum 1.
pub fn weights(profile: &WeightProfile, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..=n)
        .map(|i| match profile {
            WeightProfile::Uniform => 1.0,
            WeightProfile::FinalOnly => (i == n) as u8 as f64,
            WeightProfile::Discount(g) => g.powi(i as i32),
            WeightProfile::KroneckerAt(k) => (i == *k) as u8 as f64,
            WeightProfile::Explicit(v) => v.get(i).copied().unwrap_or(0.0),
        })
        .collect();
    let z: f64 = raw.iter().sum();
    raw.iter().map(|w| w / z).collect()
}

/// Reference planner: every complete agent trace (or only the optimal ones),
/// scored by the reference observer, argmin with ties to lower agent cost
/// and then enumeration order (shorter first, then D < L < R).
pub fn argmin(
    scenario: &Scenario,
    restrict_optimal: bool,
    lambda: f64,
) -> Option<(String, f64, f64)> {
    let obs = RefObserver::new(scenario.hypotheses());
    let agent = scenario.agent();
    let mut cands = enumerate(agent.grid(), agent.start(), Some(agent.goal()), usize::MAX);
    cands.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let best = cands
        .iter()
        .map(|t| cost(agent, t))
        .fold(f64::INFINITY, f64::min);
    if restrict_optimal {
        cands.retain(|t| cost(agent, t) <= best + 1e-9 * best.max(1.0));
    }
    if let WeightProfile::KroneckerAt(k) = scenario.effective_weights() {
        cands.retain(|t| t.len() >= k);
    }
    let mut out: Option<(String, f64, f64, f64)> = None;
    for t in cands {
        let ch = obs.generalized_cost(scenario, &t)?;
        let c = cost(agent, &t);
        let total = ch + lambda * c;
        let better = match &out {
            None => true,
            Some((_, bt, bc, _)) => {
                let tol = 1e-12 * bt.abs().max(1.0);
                total < *bt - tol || (total <= *bt + tol && c < *bc)
            }
        };
        if better {
            out = Some((t, total, c, ch));
        }
    }
    out.map(|(t, _, c, ch)| (t, c, ch))
}
