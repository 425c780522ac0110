//! Canonical scenarios used by the tests, the acceptance suite and the CLI.
//!
//! The office layout is a 7x6 open floor with the agent starting mid-way
//! along the top wall and two delivery doors in the bottom corners, so that
//! both goals cost 8 steps under unit costs.

use crate::belief::{BeliefDistribution, UNKNOWN_MODEL_ID};
use crate::error::Result;
use crate::grid::{Cell, GridSpec};
use crate::hypothesis::HypothesisSet;
use crate::model::GridModel;
use crate::scenario::{Marginal, Objective, Scenario};
use crate::trace::Trace;
use crate::weights::WeightProfile;

pub const OFFICE_START: Cell = Cell::new(3, 0);
pub const COFFEE_DOOR: Cell = Cell::new(0, 5);
pub const MAIL_DOOR: Cell = Cell::new(6, 5);
pub const OFFICE_BETA: f64 = 2.0;

fn goal_model(id: &str, grid: &GridSpec, start: Cell, goal: Cell, beta: f64) -> GridModel {
    GridModel::builder(id, grid.clone(), start, goal)
        .beta(beta)
        .build()
        .expect("fixture models are valid")
}

fn two_goal_set(grid: &GridSpec, start: Cell, goals: [Cell; 2], prior: [f64; 3]) -> HypothesisSet {
    let models = vec![
        goal_model("coffee", grid, start, goals[0], OFFICE_BETA),
        goal_model("mail", grid, start, goals[1], OFFICE_BETA),
    ];
    let prior = BeliefDistribution::new([
        ("coffee", prior[0]),
        ("mail", prior[1]),
        (UNKNOWN_MODEL_ID, prior[2]),
    ])
    .expect("fixture prior is normalized");
    HypothesisSet::new(models, prior, None).expect("fixture hypothesis set is valid")
}

/// Office floor, agent delivering coffee, observer split between coffee and
/// mail with 0.10 on the unknown model. No objective, uniform weights.
pub fn office_fixture() -> Scenario {
    let grid = GridSpec::open(7, 6).expect("valid grid");
    let hs = two_goal_set(
        &grid,
        OFFICE_START,
        [COFFEE_DOOR, MAIL_DOOR],
        [0.45, 0.45, 0.10],
    );
    let agent = hs.models()[0].clone();
    Scenario::new(hs, agent, WeightProfile::Uniform, None).expect("valid fixture")
}

/// 1x6 corridor with both goals at the bottom cell and no mass on M0: every
/// prefix has exactly one completion.
pub fn corridor_fixture() -> Scenario {
    let grid = GridSpec::open(1, 6).expect("valid grid");
    let bottom = Cell::new(0, 5);
    let hs = two_goal_set(&grid, Cell::new(0, 0), [bottom, bottom], [0.5, 0.5, 0.0]);
    let agent = hs.models()[0].clone();
    Scenario::new(
        hs,
        agent,
        WeightProfile::Uniform,
        Some(Objective::Predictable {
            marginal: Marginal::Posterior,
        }),
    )
    .expect("valid fixture")
}

/// Prefix length at which the bottleneck fixture is scored.
pub const BOTTLENECK_K: usize = 5;

/// Office floor with a wall in column 1 from row 2 down, turning column 0 into
/// a one-wide lane that leads only to the coffee door. Once the agent enters
/// the lane the mail goal is unreachable and the rest of the path is forced.
/// The observer puts no mass on M0.
pub fn bottleneck_fixture() -> Scenario {
    let grid = GridSpec::new(7, 6, (2..6).map(|r| Cell::new(1, r))).expect("valid grid");
    let hs = two_goal_set(
        &grid,
        OFFICE_START,
        [COFFEE_DOOR, MAIL_DOOR],
        [0.5, 0.5, 0.0],
    );
    let agent = hs.models()[0].clone();
    Scenario::new(
        hs,
        agent,
        WeightProfile::Uniform,
        Some(Objective::KPredictable {
            k: BOTTLENECK_K,
            marginal: Marginal::Posterior,
        }),
    )
    .expect("valid fixture")
}

/// Two single-model scenarios on a 3x3 footprint with the same number of
/// dynamically possible behaviors (15) and the same number of them extending
/// the probe (3). Both models have optimal cost 2 and the probe costs 4 in
/// both, but the dense model has two optimal traces (`DR`, `RD`) where the
/// sparse one, with the left column walled off, has only `RD`.
/// Returns `(sparse, dense, probe)`.
pub fn explicability_density_pair() -> Result<(Scenario, Scenario, Trace)> {
    let start = Cell::new(0, 0);
    let goal = Cell::new(1, 1);
    let build = |blocked: Vec<Cell>, id: &str| -> Result<Scenario> {
        let grid = GridSpec::new(3, 3, blocked)?;
        let model = GridModel::builder(id, grid, start, goal)
            .beta(1.0)
            .build()?;
        let prior = BeliefDistribution::new([(id, 0.9), (UNKNOWN_MODEL_ID, 0.1)])?;
        let hs = HypothesisSet::new(vec![model.clone()], prior, None)?;
        Scenario::new(
            hs,
            model,
            WeightProfile::FinalOnly,
            Some(Objective::Explicable),
        )
    };
    let sparse = build(vec![Cell::new(0, 1), Cell::new(0, 2)], "sparse")?;
    let dense = build(vec![Cell::new(0, 2), Cell::new(2, 2)], "dense")?;
    let probe = Trace::from_action_str(start, "RRDL").expect("valid action string");
    Ok((sparse, dense, probe))
}
