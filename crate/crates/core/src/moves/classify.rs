use crate::invariants::sci;
use crate::planar::{Diagram, FaceSide, Port, RegionId, Side};

use super::apply::{apply, framed_pair_side, kinks_at, strand_heights, triangle_darts};
use super::{Direction, MoveError, MoveRecord, MoveSite, MoveTags};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct R3Class {
    pub ascending: bool,
    pub positive: bool,
    pub forward: bool,
}

/// Whether the two strands of a bigon (existing or about to be created) are codirected.
pub fn classify_r2(d: &Diagram, site: MoveSite) -> Result<bool, MoveError> {
    match site {
        MoveSite::R2Create { first, second, .. } => Ok((first.side == Side::Left) == (second.side == Side::Right)),
        MoveSite::R2Remove { face } => {
            let f = d.faces().get(face).ok_or_else(|| MoveError::IllegalSite(format!("unknown face {face}")))?;
            if f.sides.len() != 2 {
                return Err(MoveError::IllegalSite(format!("face {face} is not a bigon")));
            }
            Ok(f.sides[0].side != f.sides[1].side)
        }
        _ => Err(MoveError::IllegalSite("not a second-move site".into())),
    }
}

/// Position of each edge along the knot, starting from edge 0.
fn appearance(d: &Diagram) -> Vec<usize> {
    let mut pos = vec![0; d.edges().len()];
    for (i, e) in d.component_edges(0).into_iter().enumerate() {
        pos[e] = i;
    }
    pos
}

/// Face-order indices `0, 1, 2` sorted by when the knot traverses them.
fn visit_order(d: &Diagram, sides: &[FaceSide]) -> [usize; 3] {
    let pos = appearance(d);
    let mut order = [0, 1, 2];
    order.sort_by_key(|&k| pos[sides[k].edge]);
    order
}

fn is_cyclic_shift(order: [usize; 3], of: [usize; 3]) -> bool {
    (0..3).any(|r| (0..3).all(|i| order[i] == of[(i + r) % 3]))
}

/// `q = (-1)^n`, `n` the number of sides directed along the orientation
/// the visiting order induces on the triangle.
fn triangle_q(d: &Diagram, face: RegionId) -> i32 {
    let sides = &d.faces()[face].sides;
    let clockwise = is_cyclic_shift(visit_order(d, sides), [0, 1, 2]);
    let agree = sides.iter().filter(|s| (s.side == Side::Right) == clockwise).count();
    if agree % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The triangle left behind by a triangle move whose new internal edges end at `ends`.
fn new_triangle(d: &Diagram, ends: &[Port]) -> Option<RegionId> {
    ends.iter().map(|&p| d.dart_face(p)).find(|&f| {
        let r = &d.faces()[f];
        r.sides.len() == 3 && r.sides.iter().all(|&s| ends.contains(&d.dart_of(s)))
    })
}

pub fn classify_r3(d: &Diagram, face: RegionId) -> Result<R3Class, MoveError> {
    let t = triangle_darts(d, face).ok_or_else(|| MoveError::IneligibleSite(format!("face {face}")))?;
    let heights = strand_heights(&t);
    let order = visit_order(d, &d.faces()[face].sides);
    let by_height = {
        let mut h = [0usize; 3];
        for k in 0..3 {
            h[heights[k] as usize] = k;
        }
        h
    };
    let ascending = is_cyclic_shift(order, by_height);

    let after = apply(d, MoveSite::R3 { face })?;
    let ends: Vec<Port> = t.iter().flat_map(|&(p, q)| [p.opposite(), q.opposite()]).collect();
    let new_face = new_triangle(&after, &ends).ok_or_else(|| MoveError::Inconsistent("triangle not found after move".into()))?;
    let (q0, q1) = (triangle_q(d, face), triangle_q(&after, new_face));
    if q0 == q1 {
        return Err(MoveError::Inconsistent("q unchanged by triangle move".into()));
    }
    let positive = q1 == 1;
    let forward = ascending == positive;

    let err = |e: crate::invariants::InvariantError| MoveError::Inconsistent(e.to_string());
    let delta = sci(&after).map_err(err)? - sci(d).map_err(err)?;
    if delta != if forward { 1 } else { -1 } {
        return Err(MoveError::Inconsistent(format!("triangle move classified {} but SCI changed by {delta}", if forward { "forward" } else { "backward" })));
    }
    Ok(R3Class { ascending, positive, forward })
}

/// Direction and tags of a move, without invariant deltas.
pub fn classify_site(d: &Diagram, site: MoveSite) -> Result<MoveRecord, MoveError> {
    let (direction, tags) = match site {
        MoveSite::R1Create { side, over, .. } => {
            let sign = if (side == Side::Left) == over { -1 } else { 1 };
            (Direction::Forward, MoveTags::R1 { side, sign })
        }
        MoveSite::R1Remove { crossing, face } => {
            let k = kinks_at(d, crossing)
                .into_iter()
                .find(|k| k.face == face)
                .ok_or_else(|| MoveError::IllegalSite(format!("no kink at crossing {crossing}")))?;
            (Direction::Backward, MoveTags::R1 { side: k.side, sign: d.crossings()[crossing].sign() })
        }
        MoveSite::R1FCreate { side, .. } => (Direction::Forward, MoveTags::R1F { side }),
        MoveSite::R1FRemove { first, second } => {
            let side = framed_pair_side(d, first, second)
                .ok_or_else(|| MoveError::IllegalSite(format!("no kink pair at {first}, {second}")))?;
            (Direction::Backward, MoveTags::R1F { side })
        }
        MoveSite::R2Create { .. } => (Direction::Forward, MoveTags::R2 { matched: classify_r2(d, site)? }),
        MoveSite::R2Remove { .. } => (Direction::Backward, MoveTags::R2 { matched: classify_r2(d, site)? }),
        MoveSite::R3 { face } => {
            let c = classify_r3(d, face)?;
            let direction = if c.forward { Direction::Forward } else { Direction::Backward };
            (direction, MoveTags::R3 { ascending: c.ascending, positive: c.positive })
        }
    };
    Ok(MoveRecord { site, direction, tags, deltas: None })
}
