//! The move-file format: one move per line, `#` starts a comment.
//!
//! ```text
//! R1+ L e5 over        kink left of edge 5, entering strand passes over
//! R1- c3 t7            remove the kink at crossing 3 (loop face optional)
//! R1F+ R e0 under      framed kink pair
//! R1F- c3 c4
//! R2+ m e2L e7 over=first
//! R2- u t5
//! R3 f t12
//! ```
//!
//! Ids are the 0-based ids of the diagram reached by the preceding lines.

use std::fmt::Write;

use thiserror::Error;

use crate::planar::{Diagram, FaceSide, Side};

use super::{Direction, MoveRecord, MoveSite, MoveTags};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {reason}")]
pub struct FormatError {
    pub line: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum LineSite {
    Exact(MoveSite),
    R1Remove { crossing: usize, face: Option<usize> },
    R2Create { first: (usize, Option<Side>), second: (usize, Option<Side>), first_over: bool },
}

/// One parsed line; sites that leave details out are resolved against a diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveLine {
    pub line: usize,
    pub direction: Direction,
    /// For second moves, the recorded matched/unmatched tag.
    pub matched: Option<bool>,
    site: LineSite,
}

impl MoveLine {
    pub fn resolve(&self, d: &Diagram) -> Result<MoveSite, String> {
        match self.site {
            LineSite::Exact(s) => Ok(s),
            LineSite::R1Remove { crossing, face: Some(face) } => Ok(MoveSite::R1Remove { crossing, face }),
            LineSite::R1Remove { crossing, face: None } => {
                if crossing >= d.crossing_count() {
                    return Err(format!("unknown crossing {crossing}"));
                }
                let ks = super::apply::kinks_at(d, crossing);
                match ks.as_slice() {
                    [k] => Ok(MoveSite::R1Remove { crossing, face: k.face }),
                    [] => Err(format!("no removable kink at crossing {crossing}")),
                    _ => Err(format!("crossing {crossing} has two kinks; name the loop face")),
                }
            }
            LineSite::R2Create { first, second, first_over } => {
                let options = |(edge, side): (usize, Option<Side>)| -> Vec<FaceSide> {
                    [Side::Left, Side::Right]
                        .into_iter()
                        .filter(|&s| side.map_or(true, |x| x == s))
                        .map(|side| FaceSide { edge, side })
                        .collect()
                };
                for e in [first.0, second.0] {
                    if e >= d.edge_count() {
                        return Err(format!("unknown edge {e}"));
                    }
                }
                let mut found = Vec::new();
                for a in options(first) {
                    for b in options(second) {
                        let same_edge_ok = a.edge != b.edge || a.side == b.side;
                        if same_edge_ok && d.face_of(a) == d.face_of(b) {
                            found.push(MoveSite::R2Create { first: a, second: b, first_over });
                        }
                    }
                }
                match found.as_slice() {
                    [s] => Ok(*s),
                    [] => Err("the two edges share no face".into()),
                    _ => Err("ambiguous second move; give the sides as e2L / e7R".into()),
                }
            }
        }
    }
}

fn err(line: usize, reason: impl Into<String>) -> FormatError {
    FormatError { line, reason: reason.into() }
}

fn id(tok: &str, prefix: char, line: usize) -> Result<usize, FormatError> {
    tok.strip_prefix(prefix)
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| err(line, format!("expected {prefix}<id>, found `{tok}`")))
}

fn side(tok: &str, line: usize) -> Result<Side, FormatError> {
    match tok {
        "L" => Ok(Side::Left),
        "R" => Ok(Side::Right),
        _ => Err(err(line, format!("expected L or R, found `{tok}`"))),
    }
}

fn over(tok: &str, line: usize) -> Result<bool, FormatError> {
    match tok {
        "over" => Ok(true),
        "under" => Ok(false),
        _ => Err(err(line, format!("expected over or under, found `{tok}`"))),
    }
}

fn edge_with_side(tok: &str, line: usize) -> Result<(usize, Option<Side>), FormatError> {
    let (body, s) = match tok.chars().last() {
        Some('L') => (&tok[..tok.len() - 1], Some(Side::Left)),
        Some('R') => (&tok[..tok.len() - 1], Some(Side::Right)),
        _ => (tok, None),
    };
    Ok((id(body, 'e', line)?, s))
}

fn matched(tok: &str, line: usize) -> Result<bool, FormatError> {
    match tok {
        "m" => Ok(true),
        "u" => Ok(false),
        _ => Err(err(line, format!("expected m or u, found `{tok}`"))),
    }
}

pub fn parse_moves(text: &str) -> Result<Vec<MoveLine>, FormatError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = content.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        let arity = |n: usize| {
            if toks.len() == n {
                Ok(())
            } else {
                Err(err(line, format!("`{}` takes {} arguments", toks[0], n - 1)))
            }
        };
        let exact = |s: MoveSite| LineSite::Exact(s);
        let (direction, m, site) = match toks[0] {
            "R1+" | "R1F+" => {
                arity(4)?;
                let (edge, side, over) = (id(toks[2], 'e', line)?, side(toks[1], line)?, over(toks[3], line)?);
                let s = if toks[0] == "R1+" {
                    MoveSite::R1Create { edge, side, over }
                } else {
                    MoveSite::R1FCreate { edge, side, over }
                };
                (Direction::Forward, None, exact(s))
            }
            "R1-" => {
                if toks.len() != 2 && toks.len() != 3 {
                    return Err(err(line, "`R1-` takes a crossing and an optional face"));
                }
                let crossing = id(toks[1], 'c', line)?;
                let face = toks.get(2).map(|t| id(t, 't', line)).transpose()?;
                (Direction::Backward, None, LineSite::R1Remove { crossing, face })
            }
            "R1F-" => {
                arity(3)?;
                let s = MoveSite::R1FRemove { first: id(toks[1], 'c', line)?, second: id(toks[2], 'c', line)? };
                (Direction::Backward, None, exact(s))
            }
            "R2+" => {
                arity(5)?;
                let first_over = match toks[4] {
                    "over=first" => true,
                    "over=second" => false,
                    t => return Err(err(line, format!("expected over=first or over=second, found `{t}`"))),
                };
                let site = LineSite::R2Create {
                    first: edge_with_side(toks[2], line)?,
                    second: edge_with_side(toks[3], line)?,
                    first_over,
                };
                (Direction::Forward, Some(matched(toks[1], line)?), site)
            }
            "R2-" => {
                arity(3)?;
                let s = MoveSite::R2Remove { face: id(toks[2], 't', line)? };
                (Direction::Backward, Some(matched(toks[1], line)?), exact(s))
            }
            "R3" => {
                arity(3)?;
                let dir = match toks[1] {
                    "f" => Direction::Forward,
                    "b" => Direction::Backward,
                    t => return Err(err(line, format!("expected f or b, found `{t}`"))),
                };
                (dir, None, exact(MoveSite::R3 { face: id(toks[2], 't', line)? }))
            }
            t => return Err(err(line, format!("unknown move `{t}`"))),
        };
        out.push(MoveLine { line, direction, matched: m, site });
    }
    Ok(out)
}

pub(super) fn kind_token(r: &MoveRecord) -> &'static str {
    match r.site {
        MoveSite::R1Create { .. } | MoveSite::R1Remove { .. } => "R1",
        MoveSite::R1FCreate { .. } | MoveSite::R1FRemove { .. } => "R1F",
        MoveSite::R2Create { .. } | MoveSite::R2Remove { .. } => "R2",
        MoveSite::R3 { .. } => "R3",
    }
}

fn side_char(s: Side) -> char {
    match s {
        Side::Left => 'L',
        Side::Right => 'R',
    }
}

fn over_word(o: bool) -> &'static str {
    if o {
        "over"
    } else {
        "under"
    }
}

/// Writes records in the move-file format, one per line, fully specified.
pub fn format_moves(records: &[MoveRecord]) -> String {
    let mut s = String::new();
    for r in records {
        let m = match r.tags {
            MoveTags::R2 { matched } => if matched { "m" } else { "u" },
            _ => "",
        };
        match r.site {
            MoveSite::R1Create { edge, side, over } => writeln!(s, "R1+ {} e{edge} {}", side_char(side), over_word(over)),
            MoveSite::R1Remove { crossing, face } => writeln!(s, "R1- c{crossing} t{face}"),
            MoveSite::R1FCreate { edge, side, over } => writeln!(s, "R1F+ {} e{edge} {}", side_char(side), over_word(over)),
            MoveSite::R1FRemove { first, second } => writeln!(s, "R1F- c{first} c{second}"),
            MoveSite::R2Create { first, second, first_over } => writeln!(
                s,
                "R2+ {m} e{}{} e{}{} over={}",
                first.edge,
                side_char(first.side),
                second.edge,
                side_char(second.side),
                if first_over { "first" } else { "second" }
            ),
            MoveSite::R2Remove { face } => writeln!(s, "R2- {m} t{face}"),
            MoveSite::R3 { face } => {
                writeln!(s, "R3 {} t{face}", if r.direction == Direction::Forward { "f" } else { "b" })
            }
        }
        .expect("writing to a string");
    }
    s
}
