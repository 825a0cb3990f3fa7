//! Deterministic two-room grid environment.
//!
//! An 18-cell grid (3 rows by 6 columns) split into two 3x3 rooms. An
//! impassable wall separates columns 2 and 3 except at row 1, where a
//! single door connects cells 8 and 9. The agent starts in the upper-left
//! corner, commits to a fixed sequence of 7 elementary moves, and observes
//! only the final cell. Reaching the lower-right corner pays a reward of 1.
//!
//! The module also provides [`exact_final_distribution`], which computes
//! the exact probability of each final cell under a factorized per-slot
//! policy by forward propagation of the state-occupancy vector. It agrees
//! with literal enumeration of all 4^7 sequences and serves as the test
//! oracle for the sampling code.

use crate::effect_model::EffectDistribution;
use crate::error::{Error, Result};
use crate::policy::SlotDistribution;

/// Number of grid cells.
pub const STATE_COUNT: usize = 18;
/// Number of elementary actions.
pub const ACTION_COUNT: usize = 4;
/// Number of moves in an open-loop command.
pub const SEQUENCE_LEN: usize = 7;

const GRID_HEIGHT: usize = 3;
const GRID_WIDTH: usize = 6;

/// One elementary displacement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Action {
    East,
    South,
    West,
    North,
}

impl Action {
    /// All actions, in index order.
    pub const ALL: [Action; ACTION_COUNT] =
        [Action::East, Action::South, Action::West, Action::North];

    /// Row index of this action in a Q table.
    pub fn index(self) -> usize {
        match self {
            Action::East => 0,
            Action::South => 1,
            Action::West => 2,
            Action::North => 3,
        }
    }

    /// (row delta, column delta) of the displacement.
    pub fn delta(self) -> (i32, i32) {
        match self {
            Action::East => (0, 1),
            Action::South => (1, 0),
            Action::West => (0, -1),
            Action::North => (-1, 0),
        }
    }

    /// Single-letter symbol used in trial logs.
    pub fn symbol(self) -> char {
        match self {
            Action::East => 'E',
            Action::South => 'S',
            Action::West => 'W',
            Action::North => 'N',
        }
    }

    /// Inverse of [`Action::symbol`].
    pub fn from_symbol(c: char) -> Result<Self> {
        match c {
            'E' => Ok(Action::East),
            'S' => Ok(Action::South),
            'W' => Ok(Action::West),
            'N' => Ok(Action::North),
            other => Err(Error::BadActionSymbol(other)),
        }
    }
}

impl std::fmt::Display for Action {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A grid cell, indexed row-major: id = row * 6 + col.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateId(u8);

impl StateId {
    /// Builds a state id, rejecting ids outside 0..18.
    pub fn new(id: usize) -> Result<Self> {
        if id < STATE_COUNT {
            Ok(StateId(id as u8))
        } else {
            Err(Error::BadStateId(id))
        }
    }

    pub fn from_row_col(row: usize, col: usize) -> Result<Self> {
        if row < GRID_HEIGHT && col < GRID_WIDTH {
            Ok(StateId((row * GRID_WIDTH + col) as u8))
        } else {
            Err(Error::BadStateId(row * GRID_WIDTH + col))
        }
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn row(self) -> usize {
        self.0 as usize / GRID_WIDTH
    }

    pub fn col(self) -> usize {
        self.0 as usize % GRID_WIDTH
    }

    /// Iterates over all 18 cells in id order.
    pub fn all() -> impl Iterator<Item = StateId> {
        (0..STATE_COUNT as u8).map(StateId)
    }
}

impl std::fmt::Display for StateId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A fixed-length open-loop command of 7 elementary moves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ActionSequence([Action; SEQUENCE_LEN]);

impl ActionSequence {
    pub fn new(moves: [Action; SEQUENCE_LEN]) -> Self {
        ActionSequence(moves)
    }

    pub fn moves(&self) -> &[Action; SEQUENCE_LEN] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = Action> + '_ {
        self.0.iter().copied()
    }
}

impl std::fmt::Display for ActionSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for a in self.0 {
            write!(f, "{}", a.symbol())?;
        }
        Ok(())
    }
}

impl std::str::FromStr for ActionSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().collect();
        if chars.len() != SEQUENCE_LEN {
            return Err(Error::BadSequenceLength {
                expected: SEQUENCE_LEN,
                got: chars.len(),
            });
        }
        let mut moves = [Action::East; SEQUENCE_LEN];
        for (slot, c) in chars.into_iter().enumerate() {
            moves[slot] = Action::from_symbol(c)?;
        }
        Ok(ActionSequence(moves))
    }
}

/// The two-room world: 3x6 grid, wall between columns 2 and 3 with a
/// single door at row 1, start at the upper-left corner, goal at the
/// lower-right corner.
#[derive(Clone, Copy, Debug)]
pub struct TwoRoomWorld {
    height: usize,
    width: usize,
    /// First column of room B; the wall runs between `room_split - 1`
    /// and `room_split`.
    room_split: usize,
    /// The one row where the wall is passable.
    door_row: usize,
    start: StateId,
    goal: StateId,
}

impl TwoRoomWorld {
    pub fn new() -> Self {
        TwoRoomWorld {
            height: GRID_HEIGHT,
            width: GRID_WIDTH,
            room_split: 3,
            door_row: 1,
            start: StateId(0),
            goal: StateId((STATE_COUNT - 1) as u8),
        }
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn door_row(&self) -> usize {
        self.door_row
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn goal(&self) -> StateId {
        self.goal
    }

    /// True for cells in room A (the room containing the start).
    pub fn in_room_a(&self, state: StateId) -> bool {
        state.col() < self.room_split
    }

    /// Applies one elementary move. Moves that would exit the grid or
    /// cross the inter-room wall anywhere but the door leave the agent
    /// in place.
    pub fn step(&self, state: StateId, action: Action) -> StateId {
        let (dr, dc) = action.delta();
        let row = state.row() as i32 + dr;
        let col = state.col() as i32 + dc;
        if row < 0 || row >= self.height as i32 || col < 0 || col >= self.width as i32 {
            return state;
        }
        let crosses_wall = (state.col() == self.room_split - 1 && dc == 1)
            || (state.col() == self.room_split && dc == -1);
        if crosses_wall && state.row() != self.door_row {
            return state;
        }
        StateId::from_row_col(row as usize, col as usize).expect("in-bounds move")
    }

    /// Executes a full command from the start cell and returns the final
    /// cell. Intermediate cells are not exposed.
    pub fn rollout(&self, seq: &ActionSequence) -> StateId {
        seq.iter().fold(self.start, |s, a| self.step(s, a))
    }

    /// 1 at the goal cell, 0 everywhere else.
    pub fn reward(&self, state: StateId) -> u32 {
        u32::from(state == self.goal)
    }
}

impl Default for TwoRoomWorld {
    fn default() -> Self {
        Self::new()
    }
}

/// Exact probability of each final cell under a factorized per-slot policy.
///
/// Propagates the state-occupancy vector through the 7 deterministic steps,
/// which is equivalent to enumerating all 4^7 sequences because the slots
/// are independent and the dynamics deterministic. Rejects slot lists whose
/// length differs from 7.
pub fn exact_final_distribution(
    world: &TwoRoomWorld,
    slot_probs: &[SlotDistribution],
) -> Result<EffectDistribution> {
    if slot_probs.len() != SEQUENCE_LEN {
        return Err(Error::SlotCount {
            expected: SEQUENCE_LEN,
            got: slot_probs.len(),
        });
    }
    let mut occupancy = [0.0f64; STATE_COUNT];
    occupancy[world.start().index()] = 1.0;
    for slot in slot_probs {
        let mut next = [0.0f64; STATE_COUNT];
        for state in StateId::all() {
            let mass = occupancy[state.index()];
            if mass == 0.0 {
                continue;
            }
            for action in Action::ALL {
                next[world.step(state, action).index()] += mass * slot.prob(action);
            }
        }
        occupancy = next;
    }
    EffectDistribution::new(occupancy)
}
