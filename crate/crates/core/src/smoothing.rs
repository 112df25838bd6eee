//! Oriented smoothings: of one crossing (two-component splits for the
//! Hass–Nowik invariant) and of every crossing (Seifert circles).
//!
//! At an oriented smoothing the incoming under-end joins the outgoing
//! over-end and vice versa. Of the four corners, the two that lie left of one
//! strand and right of the other merge into one channel; the other two are
//! cut off. Smoothed regions are therefore unions of faces, found here with a
//! union-find over the mixed corners, and keep the index of their faces.

use thiserror::Error;

use crate::indices::{region_indices, IndexError};
use crate::planar::{CornerRole, CrossingId, Diagram, EdgeId, Port, RegionId, Side};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SmoothingError {
    #[error("unknown crossing {0}")]
    UnknownCrossing(CrossingId),
    #[error("operation requires a one-component diagram")]
    MultiComponent,
}

/// How a crossing sits relative to the two circuits of a smoothing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CrossingClass {
    /// Both strands on the first circuit (the one leaving the under-strand).
    First,
    /// Both strands on the second circuit.
    Second,
    /// One strand on each circuit.
    Between,
}

/// The result of smoothing one crossing of a knot diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkSplit {
    pub crossing: CrossingId,
    /// Class of every crossing; `None` at the smoothed crossing.
    pub classes: Vec<Option<CrossingClass>>,
    /// Signs of the crossings between the two circuits, in crossing order.
    pub between_signs: Vec<i32>,
}

pub fn smooth_at(d: &Diagram, c: CrossingId) -> Result<LinkSplit, SmoothingError> {
    if d.component_count() != 1 {
        return Err(SmoothingError::MultiComponent);
    }
    let x = d.crossing(c).map_err(|_| SmoothingError::UnknownCrossing(c))?;

    // Walk from the outgoing under-end until the knot returns to `c`.
    let mut first = vec![false; d.edges().len()];
    let mut e = d.port_edge(Port::new(c, 2));
    loop {
        first[e] = true;
        if d.edges()[e].head.crossing() == c {
            debug_assert_eq!(d.edges()[e].head.slot(), x.over_in());
            break;
        }
        e = d.next_edge(e);
    }

    let mut classes = vec![None; d.crossing_count()];
    let mut between_signs = Vec::new();
    for (y, cls) in classes.iter_mut().enumerate() {
        if y == c {
            continue;
        }
        let xy = d.crossings()[y];
        let under = first[d.port_edge(Port::new(y, 0))];
        let over = first[d.port_edge(Port::new(y, xy.over_in()))];
        *cls = Some(match (under, over) {
            (true, true) => CrossingClass::First,
            (false, false) => CrossingClass::Second,
            _ => {
                between_signs.push(xy.sign());
                CrossingClass::Between
            }
        });
    }
    Ok(LinkSplit { crossing: c, classes, between_signs })
}

/// Half the sum of the signs of the crossings between the two circuits.
pub fn linking_number(s: &LinkSplit) -> i64 {
    let total: i64 = s.between_signs.iter().map(|&x| i64::from(x)).sum();
    debug_assert!(total % 2 == 0, "odd sum of between-circuit signs");
    total / 2
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertCircle {
    /// Edges of the circle in order (edge 0 alone for the crossing-free circle).
    pub edges: Vec<EdgeId>,
    /// +1 when the circle runs counterclockwise.
    pub sign: i32,
    /// Smallest enclosing circle.
    pub parent: Option<usize>,
    /// Smoothed regions just inside and just outside the circle.
    pub inside: usize,
    pub outside: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothedRegion {
    /// Faces of the original diagram that merge into this region.
    pub faces: Vec<RegionId>,
    pub index: i64,
    /// Number of circles on the boundary.
    pub boundary: usize,
    pub bounded: bool,
    pub euler: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertForest {
    pub circles: Vec<SeifertCircle>,
    pub regions: Vec<SmoothedRegion>,
}

fn find(parent: &mut [usize], mut a: usize) -> usize {
    while parent[a] != a {
        parent[a] = parent[parent[a]];
        a = parent[a];
    }
    a
}

/// Smooths every crossing.
pub fn smooth_all(d: &Diagram) -> SeifertForest {
    let idx = region_indices(d).unwrap_or_else(|e: IndexError| panic!("valid diagram failed indexing: {e}"));
    let nf = d.faces().len();

    let mut parent: Vec<usize> = (0..nf).collect();
    for c in 0..d.crossing_count() {
        let x = d.crossings()[c];
        let mixed: Vec<RegionId> =
            (0..4).filter(|&k| x.corner_role(k) == CornerRole::Mixed).map(|k| d.corner_face(c, k)).collect();
        let (a, b) = (find(&mut parent, mixed[0]), find(&mut parent, mixed[1]));
        parent[a] = b;
    }
    let mut region_of_root = vec![usize::MAX; nf];
    let mut regions: Vec<SmoothedRegion> = Vec::new();
    let mut region_of_face = vec![0; nf];
    for f in 0..nf {
        let r = find(&mut parent, f);
        if region_of_root[r] == usize::MAX {
            region_of_root[r] = regions.len();
            regions.push(SmoothedRegion { faces: vec![], index: idx.region(f), boundary: 0, bounded: true, euler: 0 });
        }
        let id = region_of_root[r];
        debug_assert_eq!(regions[id].index, idx.region(f));
        regions[id].faces.push(f);
        region_of_face[f] = id;
    }
    let outer = region_of_face[d.outer_region()];
    regions[outer].bounded = false;

    // Seifert circuits: under-in continues as over-out, over-in as under-out.
    let circuits: Vec<Vec<EdgeId>> = if d.is_trivial_circle() {
        vec![vec![0]]
    } else {
        let mut seen = vec![false; d.edges().len()];
        let mut out = Vec::new();
        for start in 0..d.edges().len() {
            if seen[start] {
                continue;
            }
            let mut circuit = Vec::new();
            let mut e = start;
            while !seen[e] {
                seen[e] = true;
                circuit.push(e);
                let h = d.edges()[e].head;
                let x = d.crossings()[h.crossing()];
                let out_slot = if h.slot() == 0 { x.over_out() } else { 2 };
                e = d.port_edge(Port::new(h.crossing(), out_slot));
            }
            out.push(circuit);
        }
        out
    };

    let side_region = |e: EdgeId, side: Side| {
        region_of_face[d.face_of(crate::planar::FaceSide { edge: e, side })]
    };
    let mut sides: Vec<(usize, usize)> = Vec::new();
    for circuit in &circuits {
        let (l, r) = (side_region(circuit[0], Side::Left), side_region(circuit[0], Side::Right));
        regions[l].boundary += 1;
        regions[r].boundary += 1;
        sides.push((l, r));
    }

    // Regions and circles form a tree; orient it away from the outer region.
    let mut circles: Vec<SeifertCircle> = Vec::with_capacity(circuits.len());
    let mut depth_region = vec![usize::MAX; regions.len()];
    let mut via_circle: Vec<Option<usize>> = vec![None; regions.len()];
    depth_region[outer] = 0;
    let mut placed = vec![false; circuits.len()];
    let mut frontier = vec![outer];
    let mut inside_of = vec![0; circuits.len()];
    let mut outside_of = vec![0; circuits.len()];
    while let Some(r) = frontier.pop() {
        for (i, &(l, rr)) in sides.iter().enumerate() {
            if placed[i] || (l != r && rr != r) {
                continue;
            }
            placed[i] = true;
            let inner = if l == r { rr } else { l };
            inside_of[i] = inner;
            outside_of[i] = r;
            depth_region[inner] = depth_region[r] + 1;
            via_circle[inner] = Some(i);
            frontier.push(inner);
        }
    }
    for (i, circuit) in circuits.into_iter().enumerate() {
        let sign = if sides[i].0 == inside_of[i] { 1 } else { -1 };
        circles.push(SeifertCircle {
            edges: circuit,
            sign,
            parent: via_circle[outside_of[i]],
            inside: inside_of[i],
            outside: outside_of[i],
        });
    }
    for r in &mut regions {
        let b = r.boundary as i64;
        r.euler = if r.bounded { 2 - b } else { 1 - b };
    }
    SeifertForest { circles, regions }
}

/// `(index, Euler characteristic)` of every smoothed region.
pub fn region_data_smoothed(f: &SeifertForest) -> Vec<(i64, i64)> {
    f.regions.iter().map(|r| (r.index, r.euler)).collect()
}
