//! Site enumeration and application.
//!
//! New crossings are laid out in a local frame where the affected edge runs
//! east; each arm is given by its compass angle and the slot numbering is
//! derived from the counterclockwise order of the arms. The outer face is
//! carried across a move by a dart whose right-hand face is known in that
//! local picture.

use crate::indices::winding_number;
use crate::planar::{Builder, CrossingId, Diagram, FaceSide, Port, RegionId, Rotation, Side};

use super::{MoveError, MoveKind, MoveSite};

#[derive(Clone, Copy)]
struct Arm {
    angle: i32,
    strand: u8,
    incoming: bool,
}

fn arm(angle: i32, strand: u8, incoming: bool) -> Arm {
    Arm { angle, strand, incoming }
}

/// Adds a crossing with the given arms; returns the port of each arm.
fn add_crossing(b: &mut Builder, arms: [Arm; 4], over_strand: u8) -> [Port; 4] {
    let mut order = [0usize, 1, 2, 3];
    order.sort_by_key(|&i| arms[i].angle.rem_euclid(360));
    let rank = |i: usize| order.iter().position(|&j| j == i).unwrap() as i32;
    let under_in = (0..4).find(|&i| arms[i].strand != over_strand && arms[i].incoming).unwrap();
    let over_in = (0..4).find(|&i| arms[i].strand == over_strand && arms[i].incoming).unwrap();
    let slot = |i: usize| (rank(i) - rank(under_in)).rem_euclid(4) as u8;
    let c = b.add_crossing(slot(over_in));
    [0, 1, 2, 3].map(|i| Port::new(c, slot(i)))
}

/// A freshly inserted kink, not yet joined to the rest of the curve.
struct Kink {
    entry: Port,
    exit: Port,
    /// Darts whose right-hand faces are the face the loop lies in, the face
    /// on the other side of the curve, and the loop itself.
    side_face: Port,
    other_face: Port,
}

fn insert_kink(b: &mut Builder, side: Side, over: bool) -> Kink {
    // Strand 0 is the first pass, strand 1 the second.
    let (a_in, a_out, b_in, b_out) = match side {
        Side::Left => (225, 45, 135, 315),
        Side::Right => (135, 315, 225, 45),
    };
    let p = add_crossing(
        b,
        [arm(a_in, 0, true), arm(a_out, 0, false), arm(b_in, 1, true), arm(b_out, 1, false)],
        if over { 0 } else { 1 },
    );
    b.link(p[1], p[2]);
    let (side_face, other_face) = match side {
        Side::Left => (p[0], p[3]),
        Side::Right => (p[2], p[0]),
    };
    Kink { entry: p[0], exit: p[3], side_face, other_face }
}

/// The ends of an edge (`None` for the crossing-free circle).
fn ends(d: &Diagram, edge: usize) -> Option<(Port, Port)> {
    if d.is_trivial_circle() {
        None
    } else {
        let e = d.edges()[edge];
        Some((e.tail, e.head))
    }
}

fn builder(d: &Diagram) -> Builder {
    if d.is_trivial_circle() {
        Builder::empty()
    } else {
        Builder::new(d)
    }
}

fn old_outer_dart(d: &Diagram) -> Port {
    d.dart_of(d.outer_side())
}

fn illegal(msg: impl Into<String>) -> MoveError {
    MoveError::IllegalSite(msg.into())
}

fn is_monogon(d: &Diagram, face: RegionId) -> bool {
    d.faces()[face].sides.len() == 1 && d.faces()[face].corners.len() == 1
}

/// A kink at `x`: its loop edge, the side of the curve the loop lies on, and
/// the edges entering and leaving the kink.
pub(super) struct KinkInfo {
    pub face: RegionId,
    pub side: Side,
    pub entry: usize,
    pub exit: usize,
}

pub(super) fn kinks_at(d: &Diagram, x: CrossingId) -> Vec<KinkInfo> {
    let mut out = Vec::new();
    if d.is_trivial_circle() {
        return out;
    }
    for (e, edge) in d.edges().iter().enumerate() {
        if edge.tail.crossing() != x || edge.head.crossing() != x {
            continue;
        }
        for side in [Side::Left, Side::Right] {
            let face = d.face_of(FaceSide { edge: e, side });
            if face != d.outer_region() && is_monogon(d, face) {
                out.push(KinkInfo { face, side, entry: d.prev_edge(e), exit: d.next_edge(e) });
            }
        }
    }
    out
}

/// Three strands of a triangle face, in face order: `(leaving port, arriving port)`.
pub(super) fn triangle_darts(d: &Diagram, face: RegionId) -> Option<[(Port, Port); 3]> {
    let f = d.faces().get(face)?;
    if f.sides.len() != 3 || face == d.outer_region() {
        return None;
    }
    let darts: Vec<(Port, Port)> = f
        .sides
        .iter()
        .map(|&s| {
            let p = d.dart_of(s);
            (p, d.mate(p))
        })
        .collect();
    let mut cs: Vec<CrossingId> = darts.iter().map(|(p, _)| p.crossing()).collect();
    cs.sort_unstable();
    cs.dedup();
    if cs.len() != 3 {
        return None;
    }
    Some([darts[0], darts[1], darts[2]])
}

/// Height of each triangle strand: 2 over both others, 0 under both.
pub(super) fn strand_heights(darts: &[(Port, Port); 3]) -> [u8; 3] {
    darts.map(|(p, q)| u8::from(p.slot() % 2 == 1) + u8::from(q.slot() % 2 == 1))
}

fn r3_eligible(d: &Diagram, face: RegionId) -> bool {
    triangle_darts(d, face).map_or(false, |t| {
        let mut h = strand_heights(&t);
        h.sort_unstable();
        h == [0, 1, 2]
    })
}

fn bigon_crossings(d: &Diagram, face: RegionId) -> Option<(CrossingId, CrossingId)> {
    let f = d.faces().get(face)?;
    if f.sides.len() != 2 || face == d.outer_region() {
        return None;
    }
    let (x, y) = (f.corners[0].0, f.corners[1].0);
    if x == y {
        return None;
    }
    let over_both = |s: FaceSide| {
        let e = d.edges()[s.edge];
        e.tail.slot() % 2 == 1 && e.head.slot() % 2 == 1
    };
    (over_both(f.sides[0]) || over_both(f.sides[1])).then_some((x, y))
}

/// Every site of the given kind, in a deterministic order.
pub fn find_sites(d: &Diagram, kind: MoveKind) -> Vec<MoveSite> {
    if d.component_count() != 1 {
        return Vec::new();
    }
    let n = d.crossing_count();
    let mut out = Vec::new();
    match kind {
        MoveKind::R1Create | MoveKind::R1FCreate => {
            for edge in 0..d.edge_count() {
                for side in [Side::Left, Side::Right] {
                    for over in [false, true] {
                        out.push(if kind == MoveKind::R1Create {
                            MoveSite::R1Create { edge, side, over }
                        } else {
                            MoveSite::R1FCreate { edge, side, over }
                        });
                    }
                }
            }
        }
        MoveKind::R1Remove => {
            for crossing in 0..n {
                for k in kinks_at(d, crossing) {
                    out.push(MoveSite::R1Remove { crossing, face: k.face });
                }
            }
        }
        MoveKind::R1FRemove => {
            for first in 0..n {
                for second in 0..n {
                    let site = MoveSite::R1FRemove { first, second };
                    if first != second && framed_pair_side(d, first, second).is_some() {
                        out.push(site);
                    }
                }
            }
        }
        MoveKind::R2Create => {
            for f in d.faces() {
                let mut sides = f.sides.clone();
                sides.sort_unstable();
                for i in 0..sides.len() {
                    for j in i..sides.len() {
                        for first_over in [false, true] {
                            out.push(MoveSite::R2Create { first: sides[i], second: sides[j], first_over });
                        }
                    }
                }
            }
        }
        MoveKind::R2Remove => {
            for face in 0..d.faces().len() {
                if bigon_crossings(d, face).is_some() {
                    out.push(MoveSite::R2Remove { face });
                }
            }
        }
        MoveKind::R3 => {
            for face in 0..d.faces().len() {
                if r3_eligible(d, face) {
                    out.push(MoveSite::R3 { face });
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// The two kinks of a framed removal, when `first` exits straight into `second`.
pub(super) fn framed_pair_side(d: &Diagram, first: CrossingId, second: CrossingId) -> Option<Side> {
    let cs = d.crossings();
    if first >= cs.len() || second >= cs.len() || cs[first].sign() == cs[second].sign() {
        return None;
    }
    for a in kinks_at(d, first) {
        for b in kinks_at(d, second) {
            if a.exit == b.entry && a.side == b.side {
                return Some(a.side);
            }
        }
    }
    None
}

fn rotation_for(winding: i64) -> Rotation {
    if winding > 0 {
        Rotation::Counterclockwise
    } else {
        Rotation::Clockwise
    }
}

fn winding(d: &Diagram) -> i64 {
    winding_number(d).expect("one-component diagram has a winding number")
}

/// A dart of the outer face whose crossing survives the deletion.
fn surviving_outer_dart(d: &Diagram, doomed: &[CrossingId]) -> Option<Port> {
    let outer = d.outer_region();
    let darts: Vec<Port> =
        (0..4 * d.crossing_count()).map(|i| Port::new(i / 4, (i % 4) as u8)).filter(|p| d.dart_face(*p) == outer).collect();
    if let Some(&p) = darts.iter().find(|p| !doomed.contains(&p.crossing())) {
        return Some(p);
    }
    // Every outer dart starts at a deleted crossing. Walk each one backwards
    // along its strand to a surviving crossing; the faces on one side of a
    // strand merge when the crossings it passes through are removed.
    darts.into_iter().find_map(|mut p| {
        for _ in 0..4 * d.crossing_count() {
            p = d.mate(p.opposite());
            if !doomed.contains(&p.crossing()) {
                return Some(p);
            }
        }
        None
    })
}

fn delete(d: &Diagram, doomed: &[CrossingId], circle_winding: i64) -> Result<Diagram, MoveError> {
    let mut b = Builder::new(d);
    if !b.delete_and_bridge(doomed) {
        return Ok(Diagram::circle_with(rotation_for(circle_winding)));
    }
    let outer = surviving_outer_dart(d, doomed).ok_or_else(|| illegal("outer face lost"))?;
    b.finish(outer).map_err(|e| illegal(e.to_string()))
}

fn side_sign(side: Side) -> i64 {
    match side {
        Side::Left => 1,
        Side::Right => -1,
    }
}

fn check_edge(d: &Diagram, edge: usize) -> Result<(), MoveError> {
    if edge < d.edge_count() {
        Ok(())
    } else {
        Err(illegal(format!("unknown edge {edge}")))
    }
}

/// Joins a chain of fresh ends into the place of `edge`.
fn splice(b: &mut Builder, d: &Diagram, edge: usize, entry: Port, exit: Port) {
    match ends(d, edge) {
        Some((t, h)) => {
            b.link(t, entry);
            b.link(exit, h);
        }
        None => b.link(exit, entry),
    }
}

/// Picks the new outer dart given darts for the two faces beside `edge`.
fn outer_beside(d: &Diagram, edge: usize, side: Side, side_dart: Port, other_dart: Port) -> Option<Port> {
    let o = d.outer_region();
    if d.face_of(FaceSide { edge, side }) == o {
        Some(side_dart)
    } else if d.face_of(FaceSide { edge, side: side.flip() }) == o {
        Some(other_dart)
    } else {
        None
    }
}

fn r1_create(d: &Diagram, edge: usize, side: Side, over: bool) -> Result<Diagram, MoveError> {
    check_edge(d, edge)?;
    let mut b = builder(d);
    let k = insert_kink(&mut b, side, over);
    splice(&mut b, d, edge, k.entry, k.exit);
    let outer = outer_beside(d, edge, side, k.side_face, k.other_face).unwrap_or_else(|| old_outer_dart(d));
    b.finish(outer).map_err(|e| illegal(e.to_string()))
}

fn r1f_create(d: &Diagram, edge: usize, side: Side, over: bool) -> Result<Diagram, MoveError> {
    check_edge(d, edge)?;
    let mut b = builder(d);
    let k1 = insert_kink(&mut b, side, over);
    let k2 = insert_kink(&mut b, side, !over);
    b.link(k1.exit, k2.entry);
    splice(&mut b, d, edge, k1.entry, k2.exit);
    let outer = outer_beside(d, edge, side, k1.side_face, k1.other_face).unwrap_or_else(|| old_outer_dart(d));
    b.finish(outer).map_err(|e| illegal(e.to_string()))
}

fn r1_remove(d: &Diagram, crossing: CrossingId, face: RegionId) -> Result<Diagram, MoveError> {
    let k = kinks_at(d, crossing)
        .into_iter()
        .find(|k| k.face == face)
        .ok_or_else(|| illegal(format!("no removable kink at crossing {crossing} with loop face {face}")))?;
    delete(d, &[crossing], winding(d) - side_sign(k.side))
}

fn r1f_remove(d: &Diagram, first: CrossingId, second: CrossingId) -> Result<Diagram, MoveError> {
    let side = (first != second)
        .then(|| framed_pair_side(d, first, second))
        .flatten()
        .ok_or_else(|| illegal(format!("crossings {first} and {second} are not a removable kink pair")))?;
    delete(d, &[first, second], winding(d) - 2 * side_sign(side))
}

fn r2_remove(d: &Diagram, face: RegionId) -> Result<Diagram, MoveError> {
    let (x, y) = bigon_crossings(d, face).ok_or_else(|| illegal(format!("face {face} is not a removable bigon")))?;
    delete(d, &[x, y], winding(d))
}

/// A strand's passage through the new crossings: `(in, out)` per crossing, in order.
fn chain(b: &mut Builder, path: &[(Port, Port)]) -> (Port, Port) {
    for w in path.windows(2) {
        b.link(w[0].1, w[1].0);
    }
    (path[0].0, path[path.len() - 1].1)
}

fn r2_create(d: &Diagram, a: FaceSide, bs: FaceSide, first_over: bool) -> Result<Diagram, MoveError> {
    check_edge(d, a.edge)?;
    check_edge(d, bs.edge)?;
    let f = d.face_of(a);
    if d.face_of(bs) != f {
        return Err(illegal(format!("{a:?} and {bs:?} do not share a face")));
    }
    if a.edge == bs.edge && a.side != bs.side {
        return Err(illegal("the two sides of one edge never share a face"));
    }
    // Local frame: `b` runs horizontally, `a` is pushed up across it through F
    // which lies below `b` and above `a`. P is the left crossing, Q the right.
    let da = a.side == Side::Left;
    let db = bs.side == Side::Right;
    let over = if first_over { 0 } else { 1 };
    let (a_p, a_q) = if da { ((225, 45), (135, 315)) } else { ((45, 225), (315, 135)) };
    let b_arms = if db { (180, 0) } else { (0, 180) };
    let mut bl = builder(d);
    let p = add_crossing(
        &mut bl,
        [arm(a_p.0, 0, true), arm(a_p.1, 0, false), arm(b_arms.0, 1, true), arm(b_arms.1, 1, false)],
        over,
    );
    let q = add_crossing(
        &mut bl,
        [arm(a_q.0, 0, true), arm(a_q.1, 0, false), arm(b_arms.0, 1, true), arm(b_arms.1, 1, false)],
        over,
    );
    let (pa, qa, pb, qb) = ((p[0], p[1]), (q[0], q[1]), (p[2], p[3]), (q[2], q[3]));
    let path_a = if da { [pa, qa] } else { [qa, pa] };
    let path_b = if db { [pb, qb] } else { [qb, pb] };
    if a == bs {
        let (entry, _) = chain(&mut bl, &[path_a[0], path_a[1], path_b[0], path_b[1]]);
        let exit = path_b[1].1;
        splice(&mut bl, d, a.edge, entry, exit);
    } else {
        let (ea, xa) = chain(&mut bl, &path_a);
        let (eb, xb) = chain(&mut bl, &path_b);
        splice(&mut bl, d, a.edge, ea, xa);
        splice(&mut bl, d, bs.edge, eb, xb);
    }
    // Darts by angle: P@180 sees the far side of `b`, Q@315 the far side of
    // `a`; F splits into the parts at P@225 and Q@0.
    let dart_at = |ports: &[Port; 4], arms: [i32; 4], angle: i32| ports[arms.iter().position(|&x| x == angle).unwrap()];
    let p_arms = [a_p.0, a_p.1, b_arms.0, b_arms.1];
    let q_arms = [a_q.0, a_q.1, b_arms.0, b_arms.1];
    let o = d.outer_region();
    let outer = if o == f {
        if da {
            dart_at(&p, p_arms, 225)
        } else {
            dart_at(&q, q_arms, 0)
        }
    } else if o == d.face_of(FaceSide { edge: bs.edge, side: bs.side.flip() }) {
        dart_at(&p, p_arms, 180)
    } else if o == d.face_of(FaceSide { edge: a.edge, side: a.side.flip() }) {
        dart_at(&q, q_arms, 315)
    } else {
        old_outer_dart(d)
    };
    bl.finish(outer).map_err(|e| illegal(e.to_string()))
}

fn r3(d: &Diagram, face: RegionId) -> Result<Diagram, MoveError> {
    if !r3_eligible(d, face) {
        return Err(MoveError::IneligibleSite(format!("face {face}")));
    }
    let t = triangle_darts(d, face).unwrap();
    let tri: Vec<CrossingId> = t.iter().map(|(p, _)| p.crossing()).collect();
    // Each side k runs from U (port u_out) to V (port v_in).
    let u_out: Vec<Port> = t.iter().map(|&(p, _)| p).collect();
    let v_in: Vec<Port> = t.iter().map(|&(_, q)| q).collect();
    let u_in: Vec<Port> = u_out.iter().map(|p| p.opposite()).collect();
    let v_out: Vec<Port> = v_in.iter().map(|p| p.opposite()).collect();
    let phi = |x: Port| {
        if let Some(k) = u_in.iter().position(|&p| p == x) {
            v_in[k]
        } else if let Some(k) = v_out.iter().position(|&p| p == x) {
            u_out[k]
        } else {
            x
        }
    };
    let mut b = Builder::new(d);
    for &x in u_in.iter().chain(v_out.iter()) {
        let y = d.mate(x);
        b.link(phi(x), phi(y));
    }
    for k in 0..3 {
        b.link(v_out[k], u_in[k]);
    }
    // Walk the outer face to a dart that is off the triangle or on an end arm.
    let start = old_outer_dart(d);
    let mut p = start;
    let outer = loop {
        if !tri.contains(&p.crossing()) {
            break p;
        }
        if u_in.contains(&p) || v_out.contains(&p) {
            break phi(p);
        }
        p = d.face_next(p);
        if p == start {
            return Err(illegal("outer face bounded by the triangle alone"));
        }
    };
    b.finish(outer).map_err(|e| illegal(e.to_string()))
}

/// Applies a move at a site of `d`.
pub fn apply(d: &Diagram, site: MoveSite) -> Result<Diagram, MoveError> {
    if d.component_count() != 1 {
        return Err(MoveError::MultiComponent);
    }
    let n = d.crossing_count();
    let known = |c: CrossingId| if c < n { Ok(()) } else { Err(illegal(format!("unknown crossing {c}"))) };
    match site {
        MoveSite::R1Create { edge, side, over } => r1_create(d, edge, side, over),
        MoveSite::R1FCreate { edge, side, over } => r1f_create(d, edge, side, over),
        MoveSite::R1Remove { crossing, face } => {
            known(crossing)?;
            r1_remove(d, crossing, face)
        }
        MoveSite::R1FRemove { first, second } => {
            known(first)?;
            known(second)?;
            r1f_remove(d, first, second)
        }
        MoveSite::R2Create { first, second, first_over } => r2_create(d, first, second, first_over),
        MoveSite::R2Remove { face } => r2_remove(d, face),
        MoveSite::R3 { face } => r3(d, face),
    }
}
