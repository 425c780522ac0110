//! On-disk formats: scenario files and trace files, both strict JSON.
//!
//! A scenario file looks like
//!
//! ```json
//! {
//!   "grid": { "width": 7, "height": 6, "blocked": [] },
//!   "start": [3, 0],
//!   "models": [
//!     { "id": "coffee", "goal": [0, 5], "beta": 2.0,
//!       "action_cost": { "down": 1.0, "left": 1.0, "right": 1.0 }, "params": {} }
//!   ],
//!   "prior": { "coffee": 0.9, "M0": 0.1 },
//!   "agent_model": "coffee",
//!   "objective": { "kind": "explicable" },
//!   "weights": { "kind": "final_only" },
//!   "lambda": 0.0
//! }
//! ```
//!
//! `m0_horizon`, `objective`, `weights` (default uniform) and `lambda`
//! (default 0) are optional, as are `blocked`, `action_cost` (default unit)
//! and `params` (the `goal` parameter is always implied). Unknown keys are
//! rejected everywhere.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;

use ghap_core::{
    Action, ActionCosts, BeliefDistribution, Cell, GridModel, GridSpec, HypothesisSet, Marginal,
    Objective, ParamValue, Scenario, Trace, WeightProfile, GOAL_KEY, UNKNOWN_MODEL_ID,
};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub grid: GridSection,
    pub start: [u32; 2],
    pub models: Vec<ModelSection>,
    pub prior: PriorSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m0_horizon: Option<usize>,
    pub agent_model: AgentRef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objective: Option<ObjectiveSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<WeightsSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub width: u32,
    pub height: u32,
    #[serde(default)]
    pub blocked: Vec<[u32; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    pub id: String,
    pub goal: [u32; 2],
    pub beta: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action_cost: Option<CostSection>,
    #[serde(default)]
    pub params: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CostSection {
    pub down: f64,
    pub left: f64,
    pub right: f64,
}

/// Prior probabilities in file order. Duplicate ids are a parse error.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PriorSection(pub Vec<(String, f64)>);

impl Serialize for PriorSection {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (id, p) in &self.0 {
            map.serialize_entry(id, p)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for PriorSection {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct PriorVisitor;

        impl<'de> Visitor<'de> for PriorVisitor {
            type Value = PriorSection;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object mapping model ids to probabilities")
            }

            fn visit_map<A: MapAccess<'de>>(
                self,
                mut map: A,
            ) -> std::result::Result<PriorSection, A::Error> {
                let mut entries: Vec<(String, f64)> = Vec::new();
                while let Some((id, p)) = map.next_entry::<String, f64>()? {
                    if entries.iter().any(|(seen, _)| *seen == id) {
                        return Err(de::Error::custom(format!("duplicate prior entry `{id}`")));
                    }
                    entries.push((id, p));
                }
                Ok(PriorSection(entries))
            }
        }

        d.deserialize_map(PriorVisitor)
    }
}

/// The agent's true model: the id of one of `models`, or a full inline model.
#[derive(Debug, Clone, PartialEq)]
pub enum AgentRef {
    Id(String),
    Inline(ModelSection),
}

impl Serialize for AgentRef {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            AgentRef::Id(id) => s.serialize_str(id),
            AgentRef::Inline(m) => m.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for AgentRef {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match Value::deserialize(d)? {
            Value::String(id) => Ok(AgentRef::Id(id)),
            v @ Value::Object(_) => ModelSection::deserialize(v)
                .map(AgentRef::Inline)
                .map_err(|e| de::Error::custom(format!("agent_model: {e}"))),
            _ => Err(de::Error::custom(
                "agent_model must be a model id or an inline model",
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObjectiveKind {
    Explicable,
    Legible,
    Predictable,
    KPredictable,
    Deceptive,
    Obfuscating,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MarginalKind {
    Prior,
    Posterior,
}

impl From<MarginalKind> for Marginal {
    fn from(m: MarginalKind) -> Marginal {
        match m {
            MarginalKind::Prior => Marginal::Prior,
            MarginalKind::Posterior => Marginal::Posterior,
        }
    }
}

impl From<Marginal> for MarginalKind {
    fn from(m: Marginal) -> MarginalKind {
        match m {
            Marginal::Prior => MarginalKind::Prior,
            Marginal::Posterior => MarginalKind::Posterior,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectiveSection {
    pub kind: ObjectiveKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_key: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_value: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    /// Predictability marginal, `posterior` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marginal: Option<MarginalKind>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightsKind {
    Uniform,
    FinalOnly,
    Discount,
    Kronecker,
    Explicit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightsSection {
    pub kind: WeightsKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ActionCode {
    #[serde(rename = "D")]
    Down,
    #[serde(rename = "L")]
    Left,
    #[serde(rename = "R")]
    Right,
}

impl From<ActionCode> for Action {
    fn from(a: ActionCode) -> Action {
        match a {
            ActionCode::Down => Action::Down,
            ActionCode::Left => Action::Left,
            ActionCode::Right => Action::Right,
        }
    }
}

impl From<Action> for ActionCode {
    fn from(a: Action) -> ActionCode {
        match a {
            Action::Down => ActionCode::Down,
            Action::Left => ActionCode::Left,
            Action::Right => ActionCode::Right,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceFile {
    pub start: [u32; 2],
    pub actions: Vec<ActionCode>,
}

impl TraceFile {
    pub fn to_trace(&self) -> Trace {
        Trace::new(
            cell(self.start),
            self.actions.iter().map(|&a| a.into()).collect(),
        )
    }

    pub fn from_trace(trace: &Trace) -> TraceFile {
        TraceFile {
            start: [trace.start.col, trace.start.row],
            actions: trace.actions.iter().map(|&a| a.into()).collect(),
        }
    }
}

/// A parsed scenario plus the settings that live outside [`Scenario`].
#[derive(Debug, Clone)]
pub struct LoadedScenario {
    pub scenario: Scenario,
    pub lambda: f64,
}

fn cell([col, row]: [u32; 2]) -> Cell {
    Cell::new(col, row)
}

fn pair(c: Cell) -> [u32; 2] {
    [c.col, c.row]
}

/// Reads a JSON parameter value: `[col,row]` is a cell, integers, booleans and
/// strings map to themselves.
pub fn param_from_json(v: &Value) -> std::result::Result<ParamValue, String> {
    match v {
        Value::Bool(b) => Ok(ParamValue::Bool(*b)),
        Value::String(s) => Ok(ParamValue::Text(s.clone())),
        Value::Number(n) => n
            .as_i64()
            .map(ParamValue::Int)
            .ok_or_else(|| format!("`{n}` is not an integer")),
        Value::Array(items) => match items.as_slice() {
            [c, r] => match (c.as_u64(), r.as_u64()) {
                (Some(c), Some(r)) if c <= u32::MAX as u64 && r <= u32::MAX as u64 => {
                    Ok(ParamValue::Cell(Cell::new(c as u32, r as u32)))
                }
                _ => Err(format!("`{v}` is not a [col,row] cell")),
            },
            _ => Err(format!("`{v}` is not a [col,row] cell")),
        },
        _ => Err(format!("unsupported parameter value `{v}`")),
    }
}

pub fn param_to_json(p: &ParamValue) -> Value {
    match p {
        ParamValue::Cell(c) => serde_json::json!([c.col, c.row]),
        ParamValue::Int(i) => Value::from(*i),
        ParamValue::Bool(b) => Value::from(*b),
        ParamValue::Text(s) => Value::from(s.clone()),
    }
}

impl ModelSection {
    fn build(&self, grid: &GridSpec, start: Cell, key: &str, path: &Path) -> Result<GridModel> {
        let mut b = GridModel::builder(self.id.clone(), grid.clone(), start, cell(self.goal))
            .beta(self.beta);
        if let Some(c) = self.action_cost {
            b = b.costs(ActionCosts {
                down: c.down,
                left: c.left,
                right: c.right,
            });
        }
        for (k, v) in &self.params {
            let value = param_from_json(v)
                .map_err(|e| CliError::parse(path, format!("{key}.params.{k}: {e}")))?;
            b = b.param(k.clone(), value);
        }
        b.build()
            .map_err(|e| CliError::core(format!("{}: {key}", path.display()), e))
    }

    fn from_model(m: &GridModel) -> ModelSection {
        let c = m.action_cost();
        ModelSection {
            id: m.id().to_string(),
            goal: pair(m.goal()),
            beta: m.beta(),
            action_cost: Some(CostSection {
                down: c.down,
                left: c.left,
                right: c.right,
            }),
            params: m
                .params()
                .iter()
                .filter(|(k, _)| k.as_str() != GOAL_KEY)
                .map(|(k, v)| (k.clone(), param_to_json(v)))
                .collect(),
        }
    }
}

fn unused<T>(field: &Option<T>, section: &str, name: &str, kind: &str, path: &Path) -> Result<()> {
    match field {
        Some(_) => Err(CliError::parse(
            path,
            format!("{section}.{name} is not used by kind `{kind}`"),
        )),
        None => Ok(()),
    }
}

fn required<'a, T>(
    field: &'a Option<T>,
    section: &str,
    name: &str,
    kind: &str,
    path: &Path,
) -> Result<&'a T> {
    field.as_ref().ok_or_else(|| {
        CliError::parse(
            path,
            format!("{section}.{name} is required for kind `{kind}`"),
        )
    })
}

impl ObjectiveSection {
    fn to_objective(&self, path: &Path) -> Result<Objective> {
        let s = "objective";
        let kind = serde_json::to_value(self.kind).expect("kind serializes");
        let kind = kind.as_str().unwrap_or_default();
        let marginal = self.marginal.map(Marginal::from).unwrap_or_default();
        if !matches!(self.kind, ObjectiveKind::Legible) {
            unused(&self.theta_key, s, "theta_key", kind, path)?;
            unused(&self.theta_value, s, "theta_value", kind, path)?;
        }
        if !matches!(self.kind, ObjectiveKind::KPredictable) {
            unused(&self.k, s, "k", kind, path)?;
        }
        if !matches!(
            self.kind,
            ObjectiveKind::Predictable | ObjectiveKind::KPredictable
        ) {
            unused(&self.marginal, s, "marginal", kind, path)?;
        }
        Ok(match self.kind {
            ObjectiveKind::Explicable => Objective::Explicable,
            ObjectiveKind::Legible => {
                let theta_key = required(&self.theta_key, s, "theta_key", kind, path)?.clone();
                let raw = required(&self.theta_value, s, "theta_value", kind, path)?;
                let theta_value = param_from_json(raw)
                    .map_err(|e| CliError::parse(path, format!("objective.theta_value: {e}")))?;
                Objective::Legible {
                    theta_key,
                    theta_value,
                }
            }
            ObjectiveKind::Predictable => Objective::Predictable { marginal },
            ObjectiveKind::KPredictable => Objective::KPredictable {
                k: *required(&self.k, s, "k", kind, path)?,
                marginal,
            },
            ObjectiveKind::Deceptive => Objective::Deceptive,
            ObjectiveKind::Obfuscating => Objective::Obfuscating,
        })
    }

    fn from_objective(o: &Objective) -> ObjectiveSection {
        let mut out = ObjectiveSection {
            kind: ObjectiveKind::Explicable,
            theta_key: None,
            theta_value: None,
            k: None,
            marginal: None,
        };
        match o {
            Objective::Explicable => {}
            Objective::Legible {
                theta_key,
                theta_value,
            } => {
                out.kind = ObjectiveKind::Legible;
                out.theta_key = Some(theta_key.clone());
                out.theta_value = Some(param_to_json(theta_value));
            }
            Objective::Predictable { marginal } => {
                out.kind = ObjectiveKind::Predictable;
                out.marginal = Some((*marginal).into());
            }
            Objective::KPredictable { k, marginal } => {
                out.kind = ObjectiveKind::KPredictable;
                out.k = Some(*k);
                out.marginal = Some((*marginal).into());
            }
            Objective::Deceptive => out.kind = ObjectiveKind::Deceptive,
            Objective::Obfuscating => out.kind = ObjectiveKind::Obfuscating,
        }
        out
    }
}

impl WeightsSection {
    fn to_profile(&self, path: &Path) -> Result<WeightProfile> {
        let s = "weights";
        let kind = serde_json::to_value(self.kind).expect("kind serializes");
        let kind = kind.as_str().unwrap_or_default();
        if !matches!(self.kind, WeightsKind::Discount) {
            unused(&self.gamma, s, "gamma", kind, path)?;
        }
        if !matches!(self.kind, WeightsKind::Kronecker) {
            unused(&self.k, s, "k", kind, path)?;
        }
        if !matches!(self.kind, WeightsKind::Explicit) {
            unused(&self.values, s, "values", kind, path)?;
        }
        let profile = match self.kind {
            WeightsKind::Uniform => WeightProfile::Uniform,
            WeightsKind::FinalOnly => WeightProfile::FinalOnly,
            WeightsKind::Discount => {
                WeightProfile::Discount(*required(&self.gamma, s, "gamma", kind, path)?)
            }
            WeightsKind::Kronecker => {
                WeightProfile::KroneckerAt(*required(&self.k, s, "k", kind, path)?)
            }
            WeightsKind::Explicit => {
                WeightProfile::Explicit(required(&self.values, s, "values", kind, path)?.clone())
            }
        };
        profile
            .validate()
            .map_err(|e| CliError::core(format!("{}: weights", path.display()), e))?;
        Ok(profile)
    }

    fn from_profile(w: &WeightProfile) -> WeightsSection {
        let mut out = WeightsSection {
            kind: WeightsKind::Uniform,
            gamma: None,
            k: None,
            values: None,
        };
        match w {
            WeightProfile::Uniform => {}
            WeightProfile::FinalOnly => out.kind = WeightsKind::FinalOnly,
            WeightProfile::Discount(g) => {
                out.kind = WeightsKind::Discount;
                out.gamma = Some(*g);
            }
            WeightProfile::KroneckerAt(k) => {
                out.kind = WeightsKind::Kronecker;
                out.k = Some(*k);
            }
            WeightProfile::Explicit(v) => {
                out.kind = WeightsKind::Explicit;
                out.values = Some(v.clone());
            }
        }
        out
    }
}

impl ScenarioFile {
    /// Builds the scenario; `path` only labels diagnostics.
    pub fn to_scenario(&self, path: &Path) -> Result<LoadedScenario> {
        let ctx = |key: &str| format!("{}: {key}", path.display());
        let grid = GridSpec::new(
            self.grid.width,
            self.grid.height,
            self.grid.blocked.iter().copied().map(cell),
        )
        .map_err(|e| CliError::core(ctx("grid"), e))?;
        let start = cell(self.start);
        let models = self
            .models
            .iter()
            .enumerate()
            .map(|(i, m)| m.build(&grid, start, &format!("models[{i}]"), path))
            .collect::<Result<Vec<_>>>()?;
        let prior = BeliefDistribution::new(self.prior.0.iter().map(|(id, p)| (id.as_str(), *p)))
            .map_err(|e| CliError::core(ctx("prior"), e))?;
        let hypotheses = HypothesisSet::new(models, prior, self.m0_horizon)
            .map_err(|e| CliError::core(ctx("models"), e))?;
        let agent = match &self.agent_model {
            AgentRef::Id(id) => hypotheses.model(id).cloned().ok_or_else(|| {
                CliError::parse(path, format!("agent_model: unknown model id `{id}`"))
            })?,
            AgentRef::Inline(m) => m.build(&grid, start, "agent_model", path)?,
        };
        let weights = match &self.weights {
            Some(w) => w.to_profile(path)?,
            None => WeightProfile::Uniform,
        };
        let objective = self
            .objective
            .as_ref()
            .map(|o| o.to_objective(path))
            .transpose()?;
        let lambda = self.lambda.unwrap_or(0.0);
        if !(lambda.is_finite() && lambda >= 0.0) {
            return Err(CliError::parse(
                path,
                format!("lambda: must be finite and non-negative, got {lambda}"),
            ));
        }
        let scenario = Scenario::new(hypotheses, agent, weights, objective)
            .map_err(|e| CliError::core(ctx("agent_model"), e))?;
        Ok(LoadedScenario { scenario, lambda })
    }

    pub fn from_scenario(scenario: &Scenario, lambda: f64) -> ScenarioFile {
        let hs = scenario.hypotheses();
        let grid = hs.grid();
        let agent = scenario.agent();
        let agent_model = if hs.model(agent.id()).is_some() {
            AgentRef::Id(agent.id().to_string())
        } else {
            AgentRef::Inline(ModelSection::from_model(agent))
        };
        ScenarioFile {
            grid: GridSection {
                width: grid.width(),
                height: grid.height(),
                blocked: grid.blocked().iter().copied().map(pair).collect(),
            },
            start: pair(hs.start()),
            models: hs.models().iter().map(ModelSection::from_model).collect(),
            prior: PriorSection(
                hs.prior()
                    .iter()
                    .map(|(id, p)| (id.to_string(), p))
                    .collect(),
            ),
            m0_horizon: (hs.m0_horizon() != grid.max_trace_len()).then_some(hs.m0_horizon()),
            agent_model,
            objective: scenario.objective().map(ObjectiveSection::from_objective),
            weights: Some(WeightsSection::from_profile(scenario.weights())),
            lambda: (lambda != 0.0).then_some(lambda),
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn parse_scenario_str(text: &str, path: &Path) -> Result<LoadedScenario> {
    let file: ScenarioFile =
        serde_json::from_str(text).map_err(|e| CliError::parse(path, e.to_string()))?;
    file.to_scenario(path)
}

pub fn load_scenario(path: &Path) -> Result<LoadedScenario> {
    parse_scenario_str(&read(path)?, path)
}

/// Loads a trace and checks it against the scenario's grid and start.
pub fn load_trace(path: &Path, scenario: &Scenario) -> Result<Trace> {
    let file: TraceFile =
        serde_json::from_str(&read(path)?).map_err(|e| CliError::parse(path, e.to_string()))?;
    let trace = file.to_trace();
    let hs = scenario.hypotheses();
    if trace.start != hs.start() {
        return Err(CliError::parse(
            path,
            format!(
                "start: trace starts at {} but the scenario starts at {}",
                trace.start,
                hs.start()
            ),
        ));
    }
    ghap_core::validate_trace(hs.grid(), &trace).map_err(|v| {
        CliError::core(
            format!("{}: actions", path.display()),
            ghap_core::Error::InvalidTrace(v),
        )
    })?;
    Ok(trace)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("file types serialize");
    text.push('\n');
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Id used for the unknown model in files and reports.
pub const M0: &str = UNKNOWN_MODEL_ID;

#[cfg(test)]
mod tests {
    use super::*;
    use ghap_core::fixtures::{bottleneck_fixture, corridor_fixture, office_fixture};

    fn p() -> &'static Path {
        Path::new("test.json")
    }

    #[test]
    fn fixtures_round_trip_through_json() {
        for s in [office_fixture(), corridor_fixture(), bottleneck_fixture()] {
            let file = ScenarioFile::from_scenario(&s, 0.25);
            let text = serde_json::to_string_pretty(&file).unwrap();
            let back = parse_scenario_str(&text, p()).unwrap();
            assert_eq!(back.scenario.hypotheses(), s.hypotheses());
            assert_eq!(back.scenario.agent(), s.agent());
            assert_eq!(back.scenario.weights(), s.weights());
            assert_eq!(back.scenario.objective(), s.objective());
            assert_eq!(back.lambda, 0.25);
        }
    }

    fn minimal() -> Value {
        serde_json::json!({
            "grid": {"width": 2, "height": 2},
            "start": [0, 0],
            "models": [{"id": "a", "goal": [1, 1], "beta": 1.0}],
            "prior": {"a": 0.8, "M0": 0.2},
            "agent_model": "a"
        })
    }

    fn parse(v: &Value) -> Result<LoadedScenario> {
        parse_scenario_str(&v.to_string(), p())
    }

    #[test]
    fn minimal_file_uses_defaults() {
        let s = parse(&minimal()).unwrap();
        assert_eq!(s.lambda, 0.0);
        assert_eq!(s.scenario.weights(), &WeightProfile::Uniform);
        assert!(s.scenario.objective().is_none());
        assert_eq!(s.scenario.agent().action_cost(), &ActionCosts::UNIT);
    }

    #[test]
    fn unknown_keys_are_named() {
        let mut v = minimal();
        v["priors"] = serde_json::json!({});
        let err = parse(&v).unwrap_err().to_string();
        assert!(err.contains("priors"), "{err}");

        let mut v = minimal();
        v["models"][0]["gaol"] = serde_json::json!([1, 1]);
        let err = parse(&v).unwrap_err().to_string();
        assert!(err.contains("gaol"), "{err}");
    }

    #[test]
    fn objective_fields_are_checked_per_kind() {
        let mut v = minimal();
        v["objective"] = serde_json::json!({"kind": "legible", "theta_key": "goal"});
        let err = parse(&v).unwrap_err().to_string();
        assert!(err.contains("theta_value"), "{err}");

        v["objective"] = serde_json::json!({"kind": "explicable", "k": 3});
        let err = parse(&v).unwrap_err().to_string();
        assert!(err.contains("objective.k"), "{err}");

        v["objective"] =
            serde_json::json!({"kind": "legible", "theta_key": "goal", "theta_value": [1, 1]});
        let s = parse(&v).unwrap();
        assert_eq!(
            s.scenario.objective(),
            Some(&Objective::Legible {
                theta_key: "goal".into(),
                theta_value: ParamValue::Cell(Cell::new(1, 1))
            })
        );
    }

    #[test]
    fn duplicate_prior_entries_are_rejected() {
        let text = minimal()
            .to_string()
            .replace("\"M0\":0.2", "\"M0\":0.2,\"a\":0.8");
        let err = parse_scenario_str(&text, p()).unwrap_err().to_string();
        assert!(err.contains("duplicate"), "{err}");
    }

    #[test]
    fn semantic_errors_exit_with_validation_code() {
        let mut v = minimal();
        v["prior"] = serde_json::json!({"a": 0.8, "M0": 0.3});
        assert_eq!(parse(&v).unwrap_err().exit_code(), 2);
        let mut v = minimal();
        v["agent_model"] = serde_json::json!("b");
        assert_eq!(parse(&v).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn inline_agent_model() {
        let mut v = minimal();
        v["agent_model"] = serde_json::json!({"id": "true", "goal": [1, 0], "beta": 3.0});
        let s = parse(&v).unwrap();
        assert_eq!(s.scenario.agent_id(), "true");
        assert_eq!(s.scenario.agent().goal(), Cell::new(1, 0));
        let back = ScenarioFile::from_scenario(&s.scenario, 0.0);
        assert!(matches!(back.agent_model, AgentRef::Inline(_)));
    }

    #[test]
    fn params_decode() {
        assert_eq!(
            param_from_json(&serde_json::json!([2, 3])),
            Ok(ParamValue::Cell(Cell::new(2, 3)))
        );
        assert_eq!(
            param_from_json(&serde_json::json!(-4)),
            Ok(ParamValue::Int(-4))
        );
        assert_eq!(
            param_from_json(&serde_json::json!("x")),
            Ok(ParamValue::Text("x".into()))
        );
        assert!(param_from_json(&serde_json::json!(1.5)).is_err());
        assert!(param_from_json(&serde_json::json!([1, 2, 3])).is_err());
        for v in [
            ParamValue::Cell(Cell::new(1, 0)),
            ParamValue::Bool(true),
            ParamValue::Int(7),
        ] {
            assert_eq!(param_from_json(&param_to_json(&v)), Ok(v));
        }
    }

    #[test]
    fn trace_files_use_letters() {
        let t: TraceFile = serde_json::from_str(r#"{"start":[3,0],"actions":["L","D"]}"#).unwrap();
        assert_eq!(t.to_trace().action_string(), "LD");
        assert!(serde_json::from_str::<TraceFile>(r#"{"start":[3,0],"actions":["U"]}"#).is_err());
        assert_eq!(TraceFile::from_trace(&t.to_trace()), t);
    }
}
