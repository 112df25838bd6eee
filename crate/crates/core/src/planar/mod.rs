//! Oriented knot and link diagrams stored as combinatorial planar maps.
//!
//! Every crossing has four ports numbered counterclockwise. Port 0 is where
//! the under-strand enters; a strand entering at slot `s` leaves at
//! `s + 2 (mod 4)`. The over-strand occupies slots 1 and 3 and enters at
//! whichever of the two is recorded as `over_in`.
//!
//! Faces are traced with the face on the right: leaving a crossing through
//! port `p`, walk the edge to its other end `q` and leave `q`'s crossing
//! through the next port counterclockwise from `q`. The face to the right of
//! the edge (in its own direction) is therefore the orbit of the edge's tail
//! port, and the face to its left is the orbit of its head port.

mod canonical;
mod surgery;

pub use surgery::{connected_sum, reverse_orientation, switch_crossing};
pub(crate) use surgery::Builder;

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

pub type CrossingId = usize;
pub type EdgeId = usize;
pub type RegionId = usize;

/// A port of a crossing, encoded as `4 * crossing + slot`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Port(pub u32);

impl Port {
    pub fn new(crossing: CrossingId, slot: u8) -> Self {
        Port(crossing as u32 * 4 + u32::from(slot & 3))
    }

    pub fn crossing(self) -> CrossingId {
        (self.0 / 4) as usize
    }

    pub fn slot(self) -> u8 {
        (self.0 % 4) as u8
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// The port `k` steps counterclockwise around the same crossing.
    pub fn rotate(self, k: i32) -> Port {
        Port::new(self.crossing(), (i32::from(self.slot()) + k).rem_euclid(4) as u8)
    }

    /// The port on the other end of the same strand through the crossing.
    pub fn opposite(self) -> Port {
        self.rotate(2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// Orientation of a crossing-free circle in the plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rotation {
    Counterclockwise,
    Clockwise,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    over_in: u8,
}

impl Crossing {
    pub(crate) fn new(over_in: u8) -> Self {
        debug_assert!(over_in == 1 || over_in == 3);
        Crossing { over_in }
    }

    /// Slot through which the over-strand enters (1 or 3).
    pub fn over_in(&self) -> u8 {
        self.over_in
    }

    pub fn over_out(&self) -> u8 {
        (self.over_in + 2) % 4
    }

    /// Right-hand sign: +1 when the over-strand runs from slot 3 to slot 1.
    pub fn sign(&self) -> i32 {
        if self.over_in == 3 {
            1
        } else {
            -1
        }
    }

    pub fn is_incoming(&self, slot: u8) -> bool {
        slot == 0 || slot == self.over_in
    }

    pub fn is_over(&self, slot: u8) -> bool {
        slot % 2 == 1
    }

    /// Position of corner `k` relative to the two strands. This is the one
    /// orientation test shared by every index and weight computation.
    pub fn corner_role(&self, k: u8) -> CornerRole {
        // Under-strand runs from slot 0 to slot 2, so corners 2 and 3 are on its left.
        let left_of_under = k == 2 || k == 3;
        let left_of_over = if self.over_in == 3 { k == 1 || k == 2 } else { k == 3 || k == 0 };
        match (left_of_under, left_of_over) {
            (true, true) => CornerRole::Left,
            (false, false) => CornerRole::Right,
            _ => CornerRole::Mixed,
        }
    }
}

/// Where a corner of a crossing sits relative to both strands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CornerRole {
    /// Left of both strands; its index exceeds the crossing index by one.
    Left,
    /// Right of both strands; index one below the crossing index.
    Right,
    /// Left of one strand and right of the other; same index as the crossing.
    Mixed,
}

/// A directed edge between two ports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub tail: Port,
    pub head: Port,
    pub component: usize,
}

/// One side of one edge; the unit of face bookkeeping.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FaceSide {
    pub edge: EdgeId,
    pub side: Side,
}

/// A face of the diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub id: RegionId,
    /// Boundary edge sides in traversal order.
    pub sides: Vec<FaceSide>,
    /// Crossing corners `(crossing, k)`; corner `k` lies between slots `k` and `k + 1`.
    pub corners: Vec<(CrossingId, u8)>,
}

impl Region {
    /// Adjacent crossings with multiplicity 1 or 2.
    pub fn crossing_multiplicities(&self) -> Vec<(CrossingId, usize)> {
        let mut out: Vec<(CrossingId, usize)> = Vec::new();
        let mut cs: Vec<CrossingId> = self.corners.iter().map(|&(c, _)| c).collect();
        cs.sort_unstable();
        for c in cs {
            match out.last_mut() {
                Some((last, m)) if *last == c => *m += 1,
                _ => out.push((c, 1)),
            }
        }
        out
    }
}

/// A crossing record as read from text: edge ids in slots 0..4.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RawCrossing {
    pub edges: [EdgeId; 4],
    pub over_in: u8,
}

/// Unchecked diagram data. [`validate`] reports on it and
/// [`Diagram::from_raw`] turns it into a [`Diagram`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawDiagram {
    pub crossings: Vec<RawCrossing>,
    pub outer: FaceSide,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    SlotOccupancy,
    StrandContinuity,
    Connectivity,
    Euler,
    OuterFace,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Check::SlotOccupancy => "slot occupancy",
            Check::StrandContinuity => "strand continuity",
            Check::Connectivity => "connectivity",
            Check::Euler => "euler",
            Check::OuterFace => "outer face",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub results: Vec<(Check, Result<(), String>)>,
    /// Number of faces found by traversal, when the map could be traced.
    pub faces: Option<usize>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|(_, r)| r.is_ok())
    }

    pub fn failures(&self) -> Vec<Check> {
        self.results
            .iter()
            .filter(|(_, r)| r.is_err())
            .map(|(c, _)| *c)
            .collect()
    }

    fn push(&mut self, check: Check, result: Result<(), String>) {
        self.results.push((check, result));
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (check, r) in &self.results {
            match r {
                Ok(()) => writeln!(f, "{check}: ok")?,
                Err(msg) => writeln!(f, "{check}: FAILED ({msg})")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("invalid diagram:\n{0}")]
    Invalid(ValidationReport),
    #[error("unknown crossing {0}")]
    UnknownCrossing(CrossingId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("edge {0} is not on the outer face")]
    EdgeNotOnOuterFace(EdgeId),
    #[error("outer face lies on opposite sides of the two splice edges")]
    IncompatibleSides,
    #[error("operation requires a one-component diagram")]
    MultiComponent,
}

/// An oriented, connected knot or link diagram with a designated outer face.
///
/// The crossing-free circle is a distinguished value carrying only its
/// rotation; it has no ports or edges.
#[derive(Clone, Debug)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    mate: Vec<Port>,
    edges: Vec<Edge>,
    port_edge: Vec<EdgeId>,
    components: usize,
    circle: Rotation,
    faces: Vec<Region>,
    dart_face: Vec<RegionId>,
    outer_face: RegionId,
}

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        self.canonical_form() == other.canonical_form()
    }
}

impl Eq for Diagram {}

impl Diagram {
    /// The counterclockwise crossing-free circle.
    pub fn circle() -> Self {
        Self::circle_with(Rotation::Counterclockwise)
    }

    pub fn circle_with(rotation: Rotation) -> Self {
        let (outer_side, inner_side) = match rotation {
            Rotation::Counterclockwise => (Side::Right, Side::Left),
            Rotation::Clockwise => (Side::Left, Side::Right),
        };
        let faces = vec![
            Region {
                id: 0,
                sides: vec![FaceSide { edge: 0, side: outer_side }],
                corners: vec![],
            },
            Region {
                id: 1,
                sides: vec![FaceSide { edge: 0, side: inner_side }],
                corners: vec![],
            },
        ];
        Diagram {
            crossings: vec![],
            mate: vec![],
            edges: vec![],
            port_edge: vec![],
            components: 1,
            circle: rotation,
            faces,
            dart_face: vec![],
            outer_face: 0,
        }
    }

    pub fn is_trivial_circle(&self) -> bool {
        self.crossings.is_empty()
    }

    /// Rotation of the crossing-free circle; `None` for diagrams with crossings.
    pub fn circle_rotation(&self) -> Option<Rotation> {
        self.is_trivial_circle().then_some(self.circle)
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing(&self, c: CrossingId) -> Result<&Crossing, DiagramError> {
        self.crossings.get(c).ok_or(DiagramError::UnknownCrossing(c))
    }

    /// Edges; empty for the crossing-free circle.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> Result<&Edge, DiagramError> {
        self.edges.get(e).ok_or(DiagramError::UnknownEdge(e))
    }

    /// Number of edges of the underlying curve (the circle counts as one).
    pub fn edge_count(&self) -> usize {
        if self.is_trivial_circle() {
            1
        } else {
            self.edges.len()
        }
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    pub fn mate(&self, p: Port) -> Port {
        self.mate[p.index()]
    }

    pub fn port_edge(&self, p: Port) -> EdgeId {
        self.port_edge[p.index()]
    }

    pub fn is_incoming(&self, p: Port) -> bool {
        self.crossings[p.crossing()].is_incoming(p.slot())
    }

    /// The edge following `e` along the orientation.
    pub fn next_edge(&self, e: EdgeId) -> EdgeId {
        self.port_edge(self.edges[e].head.opposite())
    }

    pub fn prev_edge(&self, e: EdgeId) -> EdgeId {
        self.port_edge(self.edges[e].tail.opposite())
    }

    pub fn faces(&self) -> &[Region] {
        &self.faces
    }

    pub fn outer_region(&self) -> RegionId {
        self.outer_face
    }

    /// The designated outer face, as one of its boundary sides.
    pub fn outer_side(&self) -> FaceSide {
        self.faces[self.outer_face].sides[0]
    }

    /// Face on the right of the dart leaving through `p`.
    pub fn dart_face(&self, p: Port) -> RegionId {
        self.dart_face[p.index()]
    }

    /// Face occupying corner `k` (between slots `k` and `k + 1`) of crossing `c`.
    pub fn corner_face(&self, c: CrossingId, k: u8) -> RegionId {
        self.dart_face(self.mate(Port::new(c, k)))
    }

    /// The face on the given side of an edge.
    pub fn face_of(&self, side: FaceSide) -> RegionId {
        if self.is_trivial_circle() {
            return self
                .faces
                .iter()
                .find(|r| r.sides[0].side == side.side)
                .map(|r| r.id)
                .unwrap_or(0);
        }
        let e = &self.edges[side.edge];
        match side.side {
            Side::Right => self.dart_face(e.tail),
            Side::Left => self.dart_face(e.head),
        }
    }

    /// The dart (port) whose right-hand face is the given edge side.
    pub fn dart_of(&self, side: FaceSide) -> Port {
        let e = &self.edges[side.edge];
        match side.side {
            Side::Right => e.tail,
            Side::Left => e.head,
        }
    }

    pub fn side_of_dart(&self, p: Port) -> FaceSide {
        let edge = self.port_edge(p);
        let side = if self.edges[edge].tail == p { Side::Right } else { Side::Left };
        FaceSide { edge, side }
    }

    /// The next dart along the face on the right of `p`.
    pub fn face_next(&self, p: Port) -> Port {
        self.mate(p).rotate(1)
    }

    /// Edges of the component containing `e`, starting at `e`, in order.
    pub fn component_edges(&self, e: EdgeId) -> Vec<EdgeId> {
        let mut out = vec![e];
        let mut cur = self.next_edge(e);
        while cur != e {
            out.push(cur);
            cur = self.next_edge(cur);
        }
        out
    }

    /// Validates raw data and builds a diagram from it.
    pub fn from_raw(raw: &RawDiagram) -> Result<Diagram, DiagramError> {
        let report = validate(raw);
        if !report.passed() {
            return Err(DiagramError::Invalid(report));
        }
        let n = raw.crossings.len();
        let mut tail_of = vec![None; 2 * n];
        let mut head_of = vec![None; 2 * n];
        let crossings: Vec<Crossing> = raw.crossings.iter().map(|r| Crossing::new(r.over_in)).collect();
        for (c, rc) in raw.crossings.iter().enumerate() {
            for s in 0..4u8 {
                let e = rc.edges[s as usize];
                if crossings[c].is_incoming(s) {
                    head_of[e] = Some(Port::new(c, s));
                } else {
                    tail_of[e] = Some(Port::new(c, s));
                }
            }
        }
        let mut mate = vec![Port(0); 4 * n];
        for e in 0..2 * n {
            let (t, h) = (tail_of[e].unwrap(), head_of[e].unwrap());
            mate[t.index()] = h;
            mate[h.index()] = t;
        }
        let outer = match raw.outer.side {
            Side::Right => tail_of[raw.outer.edge].unwrap(),
            Side::Left => head_of[raw.outer.edge].unwrap(),
        };
        let edge_order: Vec<Port> = tail_of.iter().map(|t| t.unwrap()).collect();
        Self::assemble(crossings, mate, outer, Some(edge_order))
    }

    /// Builds a diagram from port pairings, numbering edges along the orientation.
    pub(crate) fn from_ports(
        crossings: Vec<Crossing>,
        mate: Vec<Port>,
        outer_dart: Port,
    ) -> Result<Diagram, DiagramError> {
        Self::assemble(crossings, mate, outer_dart, None)
    }

    fn assemble(
        crossings: Vec<Crossing>,
        mate: Vec<Port>,
        outer_dart: Port,
        edge_tails: Option<Vec<Port>>,
    ) -> Result<Diagram, DiagramError> {
        let n = crossings.len();
        assert!(n > 0, "use Diagram::circle for the crossing-free diagram");
        let mut report = ValidationReport { results: vec![], faces: None };
        let mut ok = mate.len() == 4 * n;
        let mut pairing = Ok(());
        if ok {
            for (i, &q) in mate.iter().enumerate() {
                let p = Port(i as u32);
                if q.crossing() >= n || mate[q.index()] != p || q == p {
                    pairing = Err(format!("port {i} is not paired"));
                    ok = false;
                    break;
                }
                let pin = crossings[p.crossing()].is_incoming(p.slot());
                let qin = crossings[q.crossing()].is_incoming(q.slot());
                if pin == qin {
                    pairing = Err(format!("port {i} joins two {} ends", if pin { "incoming" } else { "outgoing" }));
                    ok = false;
                    break;
                }
            }
        } else {
            pairing = Err("port table has wrong length".into());
        }
        report.push(Check::StrandContinuity, pairing);
        if !ok {
            return Err(DiagramError::Invalid(report));
        }

        // Edge numbering.
        let tails: Vec<Port> = match edge_tails {
            Some(t) => t,
            None => {
                let mut seen = vec![false; 4 * n];
                let mut tails = Vec::with_capacity(2 * n);
                for i in 0..4 * n {
                    let p = Port(i as u32);
                    if seen[i] || crossings[p.crossing()].is_incoming(p.slot()) {
                        continue;
                    }
                    let mut cur = p;
                    while !seen[cur.index()] {
                        seen[cur.index()] = true;
                        tails.push(cur);
                        cur = mate[cur.index()].opposite();
                    }
                }
                tails
            }
        };
        let mut port_edge = vec![usize::MAX; 4 * n];
        for (e, &t) in tails.iter().enumerate() {
            port_edge[t.index()] = e;
            port_edge[mate[t.index()].index()] = e;
        }
        let mut edges: Vec<Edge> = tails
            .iter()
            .map(|&t| Edge { tail: t, head: mate[t.index()], component: usize::MAX })
            .collect();
        let mut components = 0;
        for e in 0..edges.len() {
            if edges[e].component != usize::MAX {
                continue;
            }
            let mut cur = e;
            loop {
                edges[cur].component = components;
                cur = port_edge[edges[cur].head.opposite().index()];
                if cur == e {
                    break;
                }
            }
            components += 1;
        }

        // Connectivity over crossings.
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(c) = queue.pop_front() {
            for s in 0..4 {
                let d = mate[Port::new(c, s).index()].crossing();
                if !seen[d] {
                    seen[d] = true;
                    queue.push_back(d);
                }
            }
        }
        let connected = seen.iter().all(|&b| b);
        report.push(
            Check::Connectivity,
            if connected { Ok(()) } else { Err("diagram is split".into()) },
        );

        // Faces.
        let mut dart_face = vec![usize::MAX; 4 * n];
        let mut faces = Vec::new();
        for i in 0..4 * n {
            if dart_face[i] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut sides = Vec::new();
            let mut corners = Vec::new();
            let mut p = Port(i as u32);
            while dart_face[p.index()] == usize::MAX {
                dart_face[p.index()] = id;
                let e = port_edge[p.index()];
                let side = if edges[e].tail == p { Side::Right } else { Side::Left };
                sides.push(FaceSide { edge: e, side });
                let q = mate[p.index()];
                corners.push((q.crossing(), q.slot()));
                p = q.rotate(1);
            }
            faces.push(Region { id, sides, corners });
        }
        let (v, e, f) = (n as i64, edges.len() as i64, faces.len() as i64);
        report.faces = Some(faces.len());
        report.push(
            Check::Euler,
            if v - e + f == 2 {
                Ok(())
            } else {
                Err(format!("V - E + F = {} - {} + {} = {}", v, e, f, v - e + f))
            },
        );
        let outer_ok = outer_dart.index() < 4 * n;
        report.push(
            Check::OuterFace,
            if outer_ok { Ok(()) } else { Err("outer face designation out of range".into()) },
        );
        if !report.passed() {
            return Err(DiagramError::Invalid(report));
        }
        let outer_face = dart_face[outer_dart.index()];
        Ok(Diagram {
            crossings,
            mate,
            edges,
            port_edge,
            components,
            circle: Rotation::Counterclockwise,
            faces,
            dart_face,
            outer_face,
        })
    }

    /// Re-checks the structural invariants of an already built diagram.
    pub fn validate(&self) -> ValidationReport {
        if self.is_trivial_circle() {
            return ValidationReport {
                results: vec![
                    (Check::SlotOccupancy, Ok(())),
                    (Check::StrandContinuity, Ok(())),
                    (Check::Connectivity, Ok(())),
                    (Check::Euler, Ok(())),
                    (Check::OuterFace, Ok(())),
                ],
                faces: Some(2),
            };
        }
        validate(&self.to_raw())
    }

    /// Crossing records with this diagram's edge ids.
    pub fn to_raw(&self) -> RawDiagram {
        let crossings = (0..self.crossings.len())
            .map(|c| RawCrossing {
                edges: [0, 1, 2, 3].map(|s| self.port_edge(Port::new(c, s))),
                over_in: self.crossings[c].over_in,
            })
            .collect();
        RawDiagram { crossings, outer: self.outer_side() }
    }

    /// Same diagram with crossings renumbered: crossing `c` becomes `perm[c]`.
    pub fn relabeled(&self, perm: &[CrossingId]) -> Diagram {
        if self.is_trivial_circle() {
            return self.clone();
        }
        let n = self.crossings.len();
        assert_eq!(perm.len(), n);
        let map = |p: Port| Port::new(perm[p.crossing()], p.slot());
        let mut crossings = vec![Crossing::new(1); n];
        let mut mate = vec![Port(0); 4 * n];
        for c in 0..n {
            crossings[perm[c]] = self.crossings[c];
            for s in 0..4 {
                let p = Port::new(c, s);
                mate[map(p).index()] = map(self.mate(p));
            }
        }
        let outer = map(self.dart_of(self.outer_side()));
        Diagram::from_ports(crossings, mate, outer).expect("relabeling preserves validity")
    }

    pub fn canonical_form(&self) -> Vec<u8> {
        canonical::canonical_form(self)
    }

    pub(crate) fn raw_parts(&self) -> (&[Crossing], &[Port]) {
        (&self.crossings, &self.mate)
    }
}

/// Checks slot occupancy, strand continuity, connectivity, the Euler
/// relation and the outer-face designation of raw diagram data.
pub fn validate(raw: &RawDiagram) -> ValidationReport {
    let mut report = ValidationReport { results: vec![], faces: None };
    let n = raw.crossings.len();
    if n == 0 {
        report.push(Check::SlotOccupancy, Err("no crossings; use the circle record".into()));
        return report;
    }
    let m = 2 * n;
    let mut count = vec![0usize; m];
    let mut heads = vec![0usize; m];
    let mut occupancy = Ok(());
    let mut over_ok = Ok(());
    for (c, rc) in raw.crossings.iter().enumerate() {
        if rc.over_in != 1 && rc.over_in != 3 {
            over_ok = Err(format!("crossing {c} has over-strand entering at slot {}", rc.over_in));
        }
        for s in 0..4u8 {
            let e = rc.edges[s as usize];
            if e >= m {
                occupancy = Err(format!("crossing {c} slot {s} names edge {e}, expected < {m}"));
                continue;
            }
            count[e] += 1;
            if s == 0 || s == rc.over_in {
                heads[e] += 1;
            }
        }
    }
    if occupancy.is_ok() {
        if let Some(e) = count.iter().position(|&k| k != 2) {
            occupancy = Err(format!("edge {e} occupies {} slots", count[e]));
        }
    }
    let continuity = if over_ok.is_err() {
        over_ok
    } else if occupancy.is_ok() {
        match heads.iter().position(|&h| h != 1) {
            Some(e) => Err(format!("edge {e} has {} incoming ends", heads[e])),
            None => Ok(()),
        }
    } else {
        Err("not checked".into())
    };
    let occupancy_ok = occupancy.is_ok();
    let continuity_ok = continuity.is_ok();
    report.push(Check::SlotOccupancy, occupancy);
    report.push(Check::StrandContinuity, continuity);
    if !(occupancy_ok && continuity_ok) {
        report.push(Check::Connectivity, Err("not checked".into()));
        report.push(Check::Euler, Err("not checked".into()));
        report.push(Check::OuterFace, Err("not checked".into()));
        return report;
    }
    if raw.outer.edge >= m {
        report.push(Check::Connectivity, Ok(()));
        report.push(Check::Euler, Ok(()));
        report.push(Check::OuterFace, Err(format!("edge {} does not exist", raw.outer.edge)));
        return report;
    }
    let mut tail = vec![Port(0); m];
    let mut head = vec![Port(0); m];
    let crossings: Vec<Crossing> = raw.crossings.iter().map(|r| Crossing::new(r.over_in)).collect();
    for (c, rc) in raw.crossings.iter().enumerate() {
        for s in 0..4u8 {
            let e = rc.edges[s as usize];
            if crossings[c].is_incoming(s) {
                head[e] = Port::new(c, s);
            } else {
                tail[e] = Port::new(c, s);
            }
        }
    }
    let mut mate = vec![Port(0); 4 * n];
    for e in 0..m {
        mate[tail[e].index()] = head[e];
        mate[head[e].index()] = tail[e];
    }
    let outer = match raw.outer.side {
        Side::Right => tail[raw.outer.edge],
        Side::Left => head[raw.outer.edge],
    };
    match Diagram::assemble(crossings, mate, outer, Some(tail)) {
        Ok(d) => {
            report.push(Check::Connectivity, Ok(()));
            report.push(Check::Euler, Ok(()));
            report.push(Check::OuterFace, Ok(()));
            report.faces = Some(d.faces.len());
        }
        Err(DiagramError::Invalid(inner)) => {
            for (check, r) in inner.results {
                if check != Check::StrandContinuity {
                    report.push(check, r);
                }
            }
            report.faces = inner.faces;
        }
        Err(other) => report.push(Check::Connectivity, Err(other.to_string())),
    }
    report
}

