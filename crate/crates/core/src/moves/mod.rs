//! Reidemeister moves: site enumeration, application, classification,
//! sequence verification and small-scale unknotting search.
//!
//! Sites refer to the ids of the diagram they were found in. Applying a move
//! renumbers everything, so a sequence of moves is always read against the
//! diagram produced by the previous step.

mod apply;
mod classify;
mod family;
mod format;
mod search;
mod table;
mod verify;

use std::fmt;

use thiserror::Error;

use crate::planar::{CrossingId, EdgeId, FaceSide, RegionId, Side};

pub use apply::{apply, find_sites};
pub use classify::{classify_r2, classify_r3, classify_site, R3Class};
pub use family::{regular_l_sequence, unknot_l_sequence};
pub use format::{format_moves, parse_moves, FormatError, MoveLine};
pub use search::{bfs_unknot, lower_bounds, LowerBounds, MoveSet, SearchError, SearchResult, DEFAULT_STATE_BUDGET};
pub use table::{table_check, CellTally, TableColumn, TableReport, TableRow};
pub use verify::{measure_deltas, verify_lines, verify_sequence, Deltas, StepFailure, VerificationReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("illegal move site: {0}")]
    IllegalSite(String),
    #[error("moves require a one-component diagram")]
    MultiComponent,
    #[error("not a triangle move site: {0}")]
    IneligibleSite(String),
    #[error("classification cross-check failed: {0}")]
    Inconsistent(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveKind {
    R1Create,
    R1Remove,
    R1FCreate,
    R1FRemove,
    R2Create,
    R2Remove,
    R3,
}

impl MoveKind {
    pub const ALL: [MoveKind; 7] = [
        MoveKind::R1Create,
        MoveKind::R1Remove,
        MoveKind::R1FCreate,
        MoveKind::R1FRemove,
        MoveKind::R2Create,
        MoveKind::R2Remove,
        MoveKind::R3,
    ];
}

/// Where and how a move is performed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveSite {
    /// A kink on the given side of `edge`; `over` when the strand entering
    /// the kink first passes over.
    R1Create { edge: EdgeId, side: Side, over: bool },
    /// Removal of the kink at `crossing` whose loop bounds the monogon `face`.
    R1Remove { crossing: CrossingId, face: RegionId },
    /// Two adjacent kinks of opposite sign on the same side of `edge`; `over`
    /// describes the first kink as for [`MoveSite::R1Create`].
    R1FCreate { edge: EdgeId, side: Side, over: bool },
    /// Removal of two consecutive kinks of opposite sign on the same side.
    R1FRemove { first: CrossingId, second: CrossingId },
    /// Pushes the two edge sides (which border a common face) across each
    /// other; `first_over` when the strand of `first` ends up on top.
    R2Create { first: FaceSide, second: FaceSide, first_over: bool },
    /// Removal of the bigon `face`.
    R2Remove { face: RegionId },
    /// The triangle move across the triangular `face`.
    R3 { face: RegionId },
}

impl MoveSite {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveSite::R1Create { .. } => MoveKind::R1Create,
            MoveSite::R1Remove { .. } => MoveKind::R1Remove,
            MoveSite::R1FCreate { .. } => MoveKind::R1FCreate,
            MoveSite::R1FRemove { .. } => MoveKind::R1FRemove,
            MoveSite::R2Create { .. } => MoveKind::R2Create,
            MoveSite::R2Remove { .. } => MoveKind::R2Remove,
            MoveSite::R3 { .. } => MoveKind::R3,
        }
    }

    /// True for plain (unframed) first moves.
    pub fn is_plain_r1(&self) -> bool {
        matches!(self, MoveSite::R1Create { .. } | MoveSite::R1Remove { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        })
    }
}

/// Classification of one move instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveTags {
    /// Side of the loop relative to the curve and sign of its crossing.
    R1 { side: Side, sign: i32 },
    R1F { side: Side },
    R2 { matched: bool },
    R3 { ascending: bool, positive: bool },
}

/// A move instance together with its classification and, once measured, the
/// invariant changes it causes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveRecord {
    pub site: MoveSite,
    pub direction: Direction,
    pub tags: MoveTags,
    pub deltas: Option<Deltas>,
}
