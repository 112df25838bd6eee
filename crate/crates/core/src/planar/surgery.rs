//! Structural operations that return new diagrams.

use super::{Crossing, CrossingId, Diagram, DiagramError, EdgeId, FaceSide, Port, Rotation, Side};

/// Changes the crossing `c` from over to under. Slots are relabeled so the
/// incoming under-end stays at slot 0; the underlying curve is untouched.
pub fn switch_crossing(d: &Diagram, c: CrossingId) -> Result<Diagram, DiagramError> {
    let k = d.crossing(c)?.over_in();
    let n = d.crossing_count();
    let map = |p: Port| if p.crossing() == c { p.rotate(-i32::from(k)) } else { p };
    let mut crossings = d.crossings().to_vec();
    crossings[c] = Crossing::new(4 - k);
    let mut mate = vec![Port(0); 4 * n];
    for i in 0..4 * n {
        let p = Port(i as u32);
        mate[map(p).index()] = map(d.mate(p));
    }
    let outer = map(d.dart_of(d.outer_side()));
    Ok(Diagram::from_ports(crossings, mate, outer).expect("switching preserves validity"))
}

/// Reverses every edge. Crossing signs are unchanged; region indices negate.
pub fn reverse_orientation(d: &Diagram) -> Diagram {
    if let Some(rot) = d.circle_rotation() {
        return Diagram::circle_with(match rot {
            Rotation::Counterclockwise => Rotation::Clockwise,
            Rotation::Clockwise => Rotation::Counterclockwise,
        });
    }
    let n = d.crossing_count();
    // The geometric position of each port is kept; only its slot name moves by two.
    let map = |p: Port| p.rotate(2);
    let mut mate = vec![Port(0); 4 * n];
    for i in 0..4 * n {
        let p = Port(i as u32);
        mate[map(p).index()] = map(d.mate(p));
    }
    let outer = map(d.dart_of(d.outer_side()));
    Diagram::from_ports(d.crossings().to_vec(), mate, outer).expect("reversal preserves validity")
}

fn outer_side_of(d: &Diagram, e: EdgeId) -> Result<Side, DiagramError> {
    d.edge(e)?;
    let outer = d.outer_region();
    for side in [Side::Right, Side::Left] {
        if d.face_of(FaceSide { edge: e, side }) == outer {
            return Ok(side);
        }
    }
    Err(DiagramError::EdgeNotOnOuterFace(e))
}

/// Splices `e` into the outer face of `d`, cutting `edge_d` and `edge_e`
/// and reconnecting the four ends without new crossings. Both edges need
/// the outer face on the same side.
pub fn connected_sum(
    d: &Diagram,
    e: &Diagram,
    edge_d: EdgeId,
    edge_e: EdgeId,
) -> Result<Diagram, DiagramError> {
    if d.component_count() != 1 || e.component_count() != 1 {
        return Err(DiagramError::MultiComponent);
    }
    if e.is_trivial_circle() {
        if !d.is_trivial_circle() {
            outer_side_of(d, edge_d)?;
        }
        return Ok(d.clone());
    }
    if d.is_trivial_circle() {
        outer_side_of(e, edge_e)?;
        return Ok(e.clone());
    }
    let sd = outer_side_of(d, edge_d)?;
    let se = outer_side_of(e, edge_e)?;
    if sd != se {
        return Err(DiagramError::IncompatibleSides);
    }
    let nd = d.crossing_count();
    let shift = |p: Port| Port::new(p.crossing() + nd, p.slot());
    let mut crossings = d.crossings().to_vec();
    crossings.extend_from_slice(e.crossings());
    let mut mate: Vec<Port> = (0..4 * nd).map(|i| d.mate(Port(i as u32))).collect();
    mate.extend((0..4 * e.crossing_count()).map(|i| shift(e.mate(Port(i as u32)))));
    let a = *d.edge(edge_d)?;
    let b = *e.edge(edge_e)?;
    let (tb, hb) = (shift(b.tail), shift(b.head));
    mate[a.tail.index()] = hb;
    mate[hb.index()] = a.tail;
    mate[tb.index()] = a.head;
    mate[a.head.index()] = tb;
    let outer = d.dart_of(d.outer_side());
    Diagram::from_ports(crossings, mate, outer)
}

/// Mutable port table used by the move engine.
#[derive(Clone, Debug)]
pub(crate) struct Builder {
    pub crossings: Vec<Option<Crossing>>,
    pub mate: Vec<Port>,
}

impl Builder {
    pub fn new(d: &Diagram) -> Self {
        let (cs, mate) = d.raw_parts();
        Builder { crossings: cs.iter().copied().map(Some).collect(), mate: mate.to_vec() }
    }

    pub fn empty() -> Self {
        Builder { crossings: vec![], mate: vec![] }
    }

    pub fn add_crossing(&mut self, over_in: u8) -> CrossingId {
        self.crossings.push(Some(Crossing::new(over_in)));
        self.mate.extend((0..4).map(|_| Port(u32::MAX)));
        self.crossings.len() - 1
    }

    pub fn link(&mut self, p: Port, q: Port) {
        self.mate[p.index()] = q;
        self.mate[q.index()] = p;
    }

    pub fn alive(&self, c: CrossingId) -> bool {
        self.crossings[c].is_some()
    }

    pub fn alive_count(&self) -> usize {
        self.crossings.iter().filter(|c| c.is_some()).count()
    }

    /// Deletes the given crossings, letting each strand run straight through
    /// them. Returns false when no crossing survives.
    pub fn delete_and_bridge(&mut self, doomed: &[CrossingId]) -> bool {
        for &c in doomed {
            self.crossings[c] = None;
        }
        if self.alive_count() == 0 {
            return false;
        }
        for i in 0..self.mate.len() {
            let p = Port(i as u32);
            if !self.alive(p.crossing()) {
                continue;
            }
            let mut q = self.mate[i];
            let mut guard = self.mate.len();
            while !self.alive(q.crossing()) {
                q = self.mate[q.opposite().index()];
                guard -= 1;
                assert!(guard > 0, "strand loops through deleted crossings only");
            }
            self.mate[i] = q;
        }
        true
    }

    /// Compacts surviving crossings and builds the diagram.
    pub fn finish(self, outer: Port) -> Result<Diagram, DiagramError> {
        let mut new_id = vec![usize::MAX; self.crossings.len()];
        let mut crossings = Vec::new();
        for (c, x) in self.crossings.iter().enumerate() {
            if let Some(x) = x {
                new_id[c] = crossings.len();
                crossings.push(*x);
            }
        }
        let map = |p: Port| Port::new(new_id[p.crossing()], p.slot());
        let mut mate = vec![Port(0); 4 * crossings.len()];
        for (i, &q) in self.mate.iter().enumerate() {
            let p = Port(i as u32);
            if new_id[p.crossing()] != usize::MAX {
                mate[map(p).index()] = map(q);
            }
        }
        assert!(new_id[outer.crossing()] != usize::MAX, "outer dart on a deleted crossing");
        Diagram::from_ports(crossings, mate, map(outer))
    }
}
