//! Agent models as the observer hypothesizes them.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::grid::{Action, Cell, GridSpec};
use crate::trace::{ensure_valid, Trace};

/// Reserved parameter key that always mirrors a model's goal cell.
pub const GOAL_KEY: &str = "goal";

/// Per-action cost. All entries are strictly positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActionCosts {
    pub down: f64,
    pub left: f64,
    pub right: f64,
}

impl ActionCosts {
    pub const UNIT: ActionCosts = ActionCosts {
        down: 1.0,
        left: 1.0,
        right: 1.0,
    };

    pub fn get(&self, action: Action) -> f64 {
        match action {
            Action::Down => self.down,
            Action::Left => self.left,
            Action::Right => self.right,
        }
    }

    /// Cost of an action sequence, computed from per-kind counts so that any two
    /// sequences with the same action multiset get bit-identical costs.
    pub fn total(&self, actions: &[Action]) -> f64 {
        let mut counts = [0u64; 3];
        for a in actions {
            counts[a.index()] += 1;
        }
        counts[0] as f64 * self.down + counts[1] as f64 * self.left + counts[2] as f64 * self.right
    }
}

impl Default for ActionCosts {
    fn default() -> Self {
        ActionCosts::UNIT
    }
}

/// Value of a model parameter θ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ParamValue {
    Cell(Cell),
    Int(i64),
    Bool(bool),
    Text(String),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Cell(c) => write!(f, "{c}"),
            ParamValue::Int(i) => write!(f, "{i}"),
            ParamValue::Bool(b) => write!(f, "{b}"),
            ParamValue::Text(s) => f.write_str(s),
        }
    }
}

/// One hypothesized agent model: a goal-directed, Boltzmann-rational walker.
#[derive(Debug, Clone, PartialEq)]
pub struct GridModel {
    id: String,
    grid: GridSpec,
    start: Cell,
    goal: Cell,
    action_cost: ActionCosts,
    beta: f64,
    params: BTreeMap<String, ParamValue>,
}

impl GridModel {
    pub fn builder(
        id: impl Into<String>,
        grid: GridSpec,
        start: Cell,
        goal: Cell,
    ) -> GridModelBuilder {
        GridModelBuilder {
            id: id.into(),
            grid,
            start,
            goal,
            action_cost: ActionCosts::UNIT,
            beta: 1.0,
            params: BTreeMap::new(),
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn start(&self) -> Cell {
        self.start
    }

    pub fn goal(&self) -> Cell {
        self.goal
    }

    pub fn action_cost(&self) -> &ActionCosts {
        &self.action_cost
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn params(&self) -> &BTreeMap<String, ParamValue> {
        &self.params
    }

    /// Same model under a different identifier.
    pub fn renamed(&self, id: impl Into<String>) -> Result<GridModel> {
        let id = id.into();
        check_id(&id)?;
        Ok(GridModel { id, ..self.clone() })
    }

    /// Same model with a different rationality parameter.
    pub fn with_beta(&self, beta: f64) -> Result<GridModel> {
        check_beta(&self.id, beta)?;
        Ok(GridModel {
            beta,
            ..self.clone()
        })
    }

    /// Whether `trace` is a complete behavior of this model: valid, from the
    /// model's start, reaching the goal for the first time on its last step.
    pub fn is_complete(&self, trace: &Trace) -> bool {
        if trace.start != self.start || ensure_valid(&self.grid, trace).is_err() {
            return false;
        }
        let cells = trace.cells(&self.grid);
        let goal_hits = cells.iter().filter(|&&c| c == self.goal).count();
        goal_hits == 1 && *cells.last().unwrap() == self.goal
    }
}

pub struct GridModelBuilder {
    id: String,
    grid: GridSpec,
    start: Cell,
    goal: Cell,
    action_cost: ActionCosts,
    beta: f64,
    params: BTreeMap<String, ParamValue>,
}

impl GridModelBuilder {
    pub fn beta(mut self, beta: f64) -> Self {
        self.beta = beta;
        self
    }

    pub fn costs(mut self, costs: ActionCosts) -> Self {
        self.action_cost = costs;
        self
    }

    pub fn param(mut self, key: impl Into<String>, value: ParamValue) -> Self {
        self.params.insert(key.into(), value);
        self
    }

    /// Validates the model. A missing `goal` parameter is filled in from the goal cell.
    pub fn build(mut self) -> Result<GridModel> {
        let invalid = |reason: String| Error::InvalidModel {
            id: self.id.clone(),
            reason,
        };
        check_id(&self.id)?;
        for (what, cell) in [("start", self.start), ("goal", self.goal)] {
            if !self.grid.in_bounds(cell) {
                return Err(invalid(format!("{what} {cell} is out of bounds")));
            }
            if self.grid.is_blocked(cell) {
                return Err(invalid(format!("{what} {cell} is blocked")));
            }
        }
        for a in Action::ALL {
            let c = self.action_cost.get(a);
            if !(c.is_finite() && c > 0.0) {
                return Err(invalid(format!("cost of {a} must be positive, got {c}")));
            }
        }
        check_beta(&self.id, self.beta)?;
        match self.params.get(GOAL_KEY) {
            None => {
                self.params
                    .insert(GOAL_KEY.to_string(), ParamValue::Cell(self.goal));
            }
            Some(ParamValue::Cell(c)) if *c == self.goal => {}
            Some(other) => {
                return Err(invalid(format!(
                    "parameter `goal` is {other} but the goal cell is {}",
                    self.goal
                )))
            }
        }
        Ok(GridModel {
            id: self.id,
            grid: self.grid,
            start: self.start,
            goal: self.goal,
            action_cost: self.action_cost,
            beta: self.beta,
            params: self.params,
        })
    }
}

fn check_id(id: &str) -> Result<()> {
    if id.is_empty() {
        return Err(Error::InvalidModel {
            id: id.to_string(),
            reason: "identifier must be non-empty".into(),
        });
    }
    Ok(())
}

fn check_beta(id: &str, beta: f64) -> Result<()> {
    if !(beta.is_finite() && beta >= 0.0) {
        return Err(Error::InvalidModel {
            id: id.to_string(),
            reason: format!("beta must be finite and non-negative, got {beta}"),
        });
    }
    Ok(())
}

/// C(τ): sum of the model's action costs along the trace.
pub fn trace_cost(model: &GridModel, trace: &Trace) -> Result<f64> {
    ensure_valid(model.grid(), trace)?;
    Ok(model.action_cost.total(&trace.actions))
}

/// θ(M) for the given parameter key.
pub fn theta_of<'a>(model: &'a GridModel, key: &str) -> Result<&'a ParamValue> {
    model.params.get(key).ok_or_else(|| Error::UnknownParam {
        model: model.id.clone(),
        key: key.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Action::*;

    fn office_grid() -> GridSpec {
        GridSpec::open(7, 6).unwrap()
    }

    fn coffee() -> GridModel {
        GridModel::builder("coffee", office_grid(), Cell::new(3, 0), Cell::new(0, 5))
            .build()
            .unwrap()
    }

    #[test]
    fn unit_cost_sums_actions() {
        let t = Trace::from_action_str(Cell::new(3, 0), "LLLDDDDD").unwrap();
        assert_eq!(trace_cost(&coffee(), &t).unwrap(), 8.0);
        assert_eq!(
            trace_cost(&coffee(), &Trace::empty(Cell::new(3, 0))).unwrap(),
            0.0
        );
    }

    #[test]
    fn weighted_cost() {
        let m = GridModel::builder("m", office_grid(), Cell::new(3, 0), Cell::new(0, 5))
            .costs(ActionCosts {
                down: 2.0,
                left: 1.0,
                right: 1.0,
            })
            .build()
            .unwrap();
        let t = Trace::new(Cell::new(3, 0), vec![Down, Left]);
        assert_eq!(trace_cost(&m, &t).unwrap(), 3.0);
    }

    #[test]
    fn cost_rejects_invalid_trace() {
        let t = Trace::new(Cell::new(3, 0), vec![Left, Right]);
        assert!(matches!(
            trace_cost(&coffee(), &t),
            Err(Error::InvalidTrace(_))
        ));
    }

    #[test]
    fn theta_lookup() {
        let mail = GridModel::builder("mail", office_grid(), Cell::new(3, 0), Cell::new(6, 5))
            .build()
            .unwrap();
        assert_eq!(
            theta_of(&coffee(), "goal").unwrap(),
            &ParamValue::Cell(Cell::new(0, 5))
        );
        assert_eq!(
            theta_of(&mail, "goal").unwrap(),
            &ParamValue::Cell(Cell::new(6, 5))
        );
        assert_eq!(
            theta_of(&coffee(), "speed").unwrap_err(),
            Error::UnknownParam {
                model: "coffee".into(),
                key: "speed".into()
            }
        );
    }

    #[test]
    fn goal_param_must_mirror_goal() {
        let err = GridModel::builder("m", office_grid(), Cell::new(3, 0), Cell::new(0, 5))
            .param("goal", ParamValue::Cell(Cell::new(6, 5)))
            .build()
            .unwrap_err();
        assert!(matches!(err, Error::InvalidModel { .. }));
    }

    #[test]
    fn rejects_bad_models() {
        let g = GridSpec::new(3, 3, [Cell::new(1, 1)]).unwrap();
        assert!(
            GridModel::builder("m", g.clone(), Cell::new(0, 0), Cell::new(1, 1))
                .build()
                .is_err()
        );
        assert!(
            GridModel::builder("m", g.clone(), Cell::new(0, 0), Cell::new(3, 0))
                .build()
                .is_err()
        );
        assert!(
            GridModel::builder("m", g.clone(), Cell::new(0, 0), Cell::new(2, 2))
                .beta(-1.0)
                .build()
                .is_err()
        );
        assert!(GridModel::builder("m", g, Cell::new(0, 0), Cell::new(2, 2))
            .costs(ActionCosts {
                down: 0.0,
                left: 1.0,
                right: 1.0
            })
            .build()
            .is_err());
    }

    #[test]
    fn completeness_requires_first_goal_visit_at_end() {
        let m = coffee();
        assert!(m.is_complete(&Trace::from_action_str(Cell::new(3, 0), "LLLDDDDD").unwrap()));
        assert!(!m.is_complete(&Trace::from_action_str(Cell::new(3, 0), "LLLDDDD").unwrap()));
        assert!(!m.is_complete(&Trace::from_action_str(Cell::new(3, 0), "LLLDDDDDR").unwrap()));
    }
}
