//! Grid geometry: cells, the three movement actions and the grid itself.
//!
//! Cells are addressed as `(col, row)` with row 0 at the top, so `Down`
//! increases the row index.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub col: u32,
    pub row: u32,
}

impl Cell {
    pub const fn new(col: u32, row: u32) -> Self {
        Cell { col, row }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.col, self.row)
    }
}

impl From<(u32, u32)> for Cell {
    fn from((col, row): (u32, u32)) -> Self {
        Cell { col, row }
    }
}

/// One movement step. There is deliberately no `Up`.
///
/// The derived ordering `Down < Left < Right` is the enumeration order used
/// everywhere traces are listed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Action {
    Down,
    Left,
    Right,
}

impl Action {
    pub const ALL: [Action; 3] = [Action::Down, Action::Left, Action::Right];

    /// Displacement `(dcol, drow)`.
    pub fn delta(self) -> (i64, i64) {
        match self {
            Action::Down => (0, 1),
            Action::Left => (-1, 0),
            Action::Right => (1, 0),
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_char(self) -> char {
        match self {
            Action::Down => 'D',
            Action::Left => 'L',
            Action::Right => 'R',
        }
    }

    pub fn from_char(c: char) -> Option<Action> {
        match c {
            'D' => Some(Action::Down),
            'L' => Some(Action::Left),
            'R' => Some(Action::Right),
            _ => None,
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Rectangular grid with an optional set of blocked cells.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridSpec {
    width: u32,
    height: u32,
    blocked: BTreeSet<Cell>,
}

impl GridSpec {
    pub fn new(width: u32, height: u32, blocked: impl IntoIterator<Item = Cell>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidGrid(format!(
                "dimensions must be positive, got {width}x{height}"
            )));
        }
        let mut set = BTreeSet::new();
        for cell in blocked {
            if cell.col >= width || cell.row >= height {
                return Err(Error::InvalidGrid(format!(
                    "blocked cell {cell} lies outside the {width}x{height} grid"
                )));
            }
            if !set.insert(cell) {
                return Err(Error::InvalidGrid(format!(
                    "blocked cell {cell} listed twice"
                )));
            }
        }
        Ok(GridSpec {
            width,
            height,
            blocked: set,
        })
    }

    /// An empty `width` x `height` grid.
    pub fn open(width: u32, height: u32) -> Result<Self> {
        Self::new(width, height, std::iter::empty())
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn blocked(&self) -> &BTreeSet<Cell> {
        &self.blocked
    }

    pub fn cell_count(&self) -> usize {
        self.width as usize * self.height as usize
    }

    pub fn in_bounds(&self, cell: Cell) -> bool {
        cell.col < self.width && cell.row < self.height
    }

    pub fn is_blocked(&self, cell: Cell) -> bool {
        self.blocked.contains(&cell)
    }

    /// In bounds and not blocked.
    pub fn is_free(&self, cell: Cell) -> bool {
        self.in_bounds(cell) && !self.is_blocked(cell)
    }

    /// Dense row-major index, for visited bitmaps.
    pub fn index(&self, cell: Cell) -> usize {
        cell.row as usize * self.width as usize + cell.col as usize
    }

    /// Raw displacement of `cell` by `action`; `None` when it leaves the grid.
    /// Blocked cells are not filtered here.
    pub fn displace(&self, cell: Cell, action: Action) -> Option<Cell> {
        let (dc, dr) = action.delta();
        let col = cell.col as i64 + dc;
        let row = cell.row as i64 + dr;
        if col < 0 || row < 0 || col >= self.width as i64 || row >= self.height as i64 {
            return None;
        }
        Some(Cell::new(col as u32, row as u32))
    }

    /// Default bound on behavior length under the no-revisit rule.
    pub fn max_trace_len(&self) -> usize {
        self.cell_count() - 1
    }
}
