//! Exhaustive enumeration of trace spaces.
//!
//! Every set is listed in a fixed order: shorter traces first, then
//! lexicographically by action sequence with `Down < Left < Right`.

use crate::error::{Error, Result};
use crate::grid::{Action, Cell, GridSpec};
use crate::model::GridModel;
use crate::trace::{ensure_valid, Trace};

/// Ordered, duplicate-free set of valid traces sharing one start cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceSet {
    start: Cell,
    traces: Vec<Trace>,
}

impl TraceSet {
    fn from_sequences(start: Cell, mut seqs: Vec<Vec<Action>>) -> Self {
        seqs.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        seqs.dedup();
        TraceSet {
            start,
            traces: seqs.into_iter().map(|a| Trace::new(start, a)).collect(),
        }
    }

    pub fn start(&self) -> Cell {
        self.start
    }

    pub fn traces(&self) -> &[Trace] {
        &self.traces
    }

    pub fn len(&self) -> usize {
        self.traces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.traces.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Trace> {
        self.traces.iter()
    }

    pub fn contains(&self, trace: &Trace) -> bool {
        trace.start == self.start
            && self
                .traces
                .binary_search_by(|t| {
                    t.actions
                        .len()
                        .cmp(&trace.actions.len())
                        .then_with(|| t.actions.cmp(&trace.actions))
                })
                .is_ok()
    }

    /// Keeps the traces matching `keep`, preserving order.
    pub fn filter(&self, mut keep: impl FnMut(&Trace) -> bool) -> TraceSet {
        TraceSet {
            start: self.start,
            traces: self.traces.iter().filter(|t| keep(t)).cloned().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a TraceSet {
    type Item = &'a Trace;
    type IntoIter = std::slice::Iter<'a, Trace>;

    fn into_iter(self) -> Self::IntoIter {
        self.traces.iter()
    }
}

/// Depth-first walker over self-avoiding paths.
struct Walker<'g> {
    grid: &'g GridSpec,
    visited: Vec<bool>,
    path: Vec<Action>,
    out: Vec<Vec<Action>>,
}

impl<'g> Walker<'g> {
    fn new(grid: &'g GridSpec, cells: &[Cell]) -> Self {
        let mut visited = vec![false; grid.cell_count()];
        for &c in cells {
            visited[grid.index(c)] = true;
        }
        Walker {
            grid,
            visited,
            path: Vec::new(),
            out: Vec::new(),
        }
    }

    fn successors(&self, cell: Cell) -> impl Iterator<Item = (Action, Cell)> + '_ {
        Action::ALL.into_iter().filter_map(move |a| {
            let next = self.grid.displace(cell, a)?;
            (self.grid.is_free(next) && !self.visited[self.grid.index(next)]).then_some((a, next))
        })
    }

    /// Collects every path that stops at the first visit of `goal`.
    fn walk_to_goal(&mut self, cell: Cell, goal: Cell) {
        if cell == goal {
            self.out.push(self.path.clone());
            return;
        }
        let next: Vec<_> = self.successors(cell).collect();
        for (a, n) in next {
            self.push(a, n);
            self.walk_to_goal(n, goal);
            self.pop(n);
        }
    }

    /// Collects every path of at most `budget` further actions, stopping anywhere.
    fn anywhere(&mut self, cell: Cell, budget: usize) {
        self.out.push(self.path.clone());
        if budget == 0 {
            return;
        }
        let next: Vec<_> = self.successors(cell).collect();
        for (a, n) in next {
            self.push(a, n);
            self.anywhere(n, budget - 1);
            self.pop(n);
        }
    }

    fn push(&mut self, a: Action, cell: Cell) {
        self.visited[self.grid.index(cell)] = true;
        self.path.push(a);
    }

    fn pop(&mut self, cell: Cell) {
        self.visited[self.grid.index(cell)] = false;
        self.path.pop();
    }
}

/// All complete behaviors of a goal model: valid traces from its start that
/// end at the first visit of its goal. Empty when the goal is unreachable.
pub fn enumerate_complete_traces(model: &GridModel) -> TraceSet {
    let mut w = Walker::new(model.grid(), &[model.start()]);
    w.walk_to_goal(model.start(), model.goal());
    TraceSet::from_sequences(model.start(), w.out)
}

/// Complete behaviors of `model` that begin with `prefix`.
pub fn enumerate_completions(model: &GridModel, prefix: &Trace) -> Result<TraceSet> {
    ensure_valid(model.grid(), prefix)?;
    if prefix.start != model.start() {
        return Err(Error::StartMismatch {
            col: prefix.start.col,
            row: prefix.start.row,
        });
    }
    let cells = prefix.cells(model.grid());
    let end = *cells.last().unwrap();
    // A prefix that already visited the goal before its last step has no completion.
    if cells[..cells.len() - 1].contains(&model.goal()) {
        return Ok(TraceSet::from_sequences(model.start(), Vec::new()));
    }
    let mut w = Walker::new(model.grid(), &cells);
    w.path = prefix.actions.clone();
    w.walk_to_goal(end, model.goal());
    Ok(TraceSet::from_sequences(model.start(), w.out))
}

/// Every valid trace from `start` with at most `horizon` actions; each
/// stopping point counts as a complete behavior.
pub fn universal_trace_set(grid: &GridSpec, start: Cell, horizon: usize) -> Result<TraceSet> {
    ensure_valid(grid, &Trace::empty(start))?;
    let mut w = Walker::new(grid, &[start]);
    w.anywhere(start, horizon);
    Ok(TraceSet::from_sequences(start, w.out))
}

/// Minimum cost over a model's complete traces, `None` when there are none.
pub fn optimal_cost(model: &GridModel, set: &TraceSet) -> Option<f64> {
    set.iter()
        .map(|t| model.action_cost().total(&t.actions))
        .min_by(f64::total_cmp)
}
