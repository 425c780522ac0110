//! Behavior traces: a start cell plus a sequence of actions.

use std::fmt;

use crate::error::{Error, Result};
use crate::grid::{Action, Cell, GridSpec};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Trace {
    pub start: Cell,
    pub actions: Vec<Action>,
}

impl Trace {
    pub fn new(start: Cell, actions: Vec<Action>) -> Self {
        Trace { start, actions }
    }

    pub fn empty(start: Cell) -> Self {
        Trace {
            start,
            actions: Vec::new(),
        }
    }

    /// Parses the compact `D`/`L`/`R` alphabet. The empty string is the empty trace.
    pub fn from_action_str(start: Cell, s: &str) -> Option<Self> {
        let actions = s
            .chars()
            .map(Action::from_char)
            .collect::<Option<Vec<_>>>()?;
        Some(Trace { start, actions })
    }

    pub fn len(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }

    pub fn action_string(&self) -> String {
        self.actions.iter().map(|a| a.as_char()).collect()
    }

    /// State sequence induced on `grid`, stopping early if a step leaves the grid.
    pub fn cells(&self, grid: &GridSpec) -> Vec<Cell> {
        let mut out = Vec::with_capacity(self.actions.len() + 1);
        let mut cur = self.start;
        out.push(cur);
        for &a in &self.actions {
            match grid.displace(cur, a) {
                Some(next) => {
                    cur = next;
                    out.push(cur);
                }
                None => break,
            }
        }
        out
    }

    /// Final cell, assuming the trace is valid on `grid`.
    pub fn end(&self, grid: &GridSpec) -> Cell {
        *self
            .cells(grid)
            .last()
            .expect("cells always holds the start")
    }

    /// First `i` actions as a trace.
    pub fn prefix(&self, i: usize) -> Result<Trace> {
        if i > self.len() {
            return Err(Error::StepOutOfRange {
                step: i,
                len: self.len(),
            });
        }
        Ok(Trace {
            start: self.start,
            actions: self.actions[..i].to_vec(),
        })
    }

    /// Splits at timestep `i` into the observed prefix and the remaining actions.
    pub fn split(&self, i: usize) -> Result<(Trace, Vec<Action>)> {
        let prefix = self.prefix(i)?;
        Ok((prefix, self.actions[i..].to_vec()))
    }

    pub fn concat(&self, postfix: &[Action]) -> Trace {
        let mut actions = self.actions.clone();
        actions.extend_from_slice(postfix);
        Trace {
            start: self.start,
            actions,
        }
    }

    pub fn is_prefix_of(&self, other: &Trace) -> bool {
        self.start == other.start && other.actions.starts_with(&self.actions)
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.start, self.action_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    OutOfBounds,
    Blocked,
    Revisit,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ViolationKind::OutOfBounds => "out-of-bounds",
            ViolationKind::Blocked => "blocked",
            ViolationKind::Revisit => "revisit",
        };
        f.write_str(s)
    }
}

/// First offending step of an invalid trace. Step 0 refers to the start cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceViolation {
    pub step: usize,
    pub kind: ViolationKind,
}

impl fmt::Display for TraceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at step {}", self.kind, self.step)
    }
}

/// Checks bounds, blocked cells and the no-revisit rule.
pub fn validate_trace(grid: &GridSpec, trace: &Trace) -> std::result::Result<(), TraceViolation> {
    let start = trace.start;
    if !grid.in_bounds(start) {
        return Err(TraceViolation {
            step: 0,
            kind: ViolationKind::OutOfBounds,
        });
    }
    if grid.is_blocked(start) {
        return Err(TraceViolation {
            step: 0,
            kind: ViolationKind::Blocked,
        });
    }
    let mut visited = vec![false; grid.cell_count()];
    visited[grid.index(start)] = true;
    let mut cur = start;
    for (i, &a) in trace.actions.iter().enumerate() {
        let step = i + 1;
        let next = grid.displace(cur, a).ok_or(TraceViolation {
            step,
            kind: ViolationKind::OutOfBounds,
        })?;
        if grid.is_blocked(next) {
            return Err(TraceViolation {
                step,
                kind: ViolationKind::Blocked,
            });
        }
        let idx = grid.index(next);
        if visited[idx] {
            return Err(TraceViolation {
                step,
                kind: ViolationKind::Revisit,
            });
        }
        visited[idx] = true;
        cur = next;
    }
    Ok(())
}

/// `validate_trace` lifted into the crate error type.
pub(crate) fn ensure_valid(grid: &GridSpec, trace: &Trace) -> Result<()> {
    validate_trace(grid, trace).map_err(Error::InvalidTrace)
}
