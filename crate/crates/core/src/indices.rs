//! Winding-number indices, crossing signs and Shumakovich-style weights.
//!
//! Region indices are integers. Edge and crossing indices are kept scaled by
//! four so that everything stays in integer arithmetic; [`Rational64`]
//! accessors are provided for formula code.

use std::collections::VecDeque;

use num_rational::Rational64;
use thiserror::Error;

use crate::planar::{CornerRole, CrossingId, Diagram, EdgeId, FaceSide, Port, RegionId, Side};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IndexError {
    #[error("region indices are inconsistent around region {0}")]
    InconsistentIndexing(RegionId),
    #[error("operation requires a one-component diagram")]
    MultiComponent,
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("unknown crossing {0}")]
    UnknownCrossing(CrossingId),
}

/// Indices of all regions, edges and crossings of a diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexMap {
    regions: Vec<i64>,
    edges_x4: Vec<i64>,
    crossings_x4: Vec<i64>,
}

impl IndexMap {
    pub fn regions(&self) -> &[i64] {
        &self.regions
    }

    pub fn region(&self, r: RegionId) -> i64 {
        self.regions[r]
    }

    /// Four times the index of edge `e`.
    pub fn edge_x4(&self, e: EdgeId) -> i64 {
        self.edges_x4[e]
    }

    pub fn edge(&self, e: EdgeId) -> Rational64 {
        Rational64::new(self.edges_x4[e], 4)
    }

    /// Four times the index of crossing `c`.
    pub fn crossing_x4(&self, c: CrossingId) -> i64 {
        self.crossings_x4[c]
    }

    pub fn crossing(&self, c: CrossingId) -> Rational64 {
        Rational64::new(self.crossings_x4[c], 4)
    }

    pub fn edge_count(&self) -> usize {
        self.edges_x4.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings_x4.len()
    }
}

/// Labels the regions breadth-first from the outer face: the region on the
/// left of a directed edge has index one more than the region on its right.
pub fn region_indices(d: &Diagram) -> Result<IndexMap, IndexError> {
    let nf = d.faces().len();
    if d.is_trivial_circle() {
        let mut regions = vec![0; nf];
        let inner = 1 - d.outer_region();
        let left = d.faces()[inner].sides[0].side == Side::Left;
        regions[inner] = if left { 1 } else { -1 };
        let edges_x4 = vec![regions[inner] * 2];
        return Ok(IndexMap { regions, edges_x4, crossings_x4: vec![] });
    }

    let mut regions: Vec<Option<i64>> = vec![None; nf];
    let outer = d.outer_region();
    regions[outer] = Some(0);
    let mut queue = VecDeque::from([outer]);
    while let Some(r) = queue.pop_front() {
        let here = regions[r].expect("queued regions are labelled");
        for s in &d.faces()[r].sides {
            let (other, value) = match s.side {
                Side::Right => (d.face_of(FaceSide { side: Side::Left, ..*s }), here + 1),
                Side::Left => (d.face_of(FaceSide { side: Side::Right, ..*s }), here - 1),
            };
            match regions[other] {
                None => {
                    regions[other] = Some(value);
                    queue.push_back(other);
                }
                Some(v) if v != value => return Err(IndexError::InconsistentIndexing(other)),
                Some(_) => {}
            }
        }
    }
    let regions: Vec<i64> = regions
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or(IndexError::InconsistentIndexing(i)))
        .collect::<Result<_, _>>()?;

    let edges_x4 = d
        .edges()
        .iter()
        .map(|e| 2 * (regions[d.dart_face(e.tail)] + regions[d.dart_face(e.head)]))
        .collect();
    let crossings_x4 = (0..d.crossing_count())
        .map(|c| (0..4).map(|k| regions[d.corner_face(c, k)]).sum())
        .collect();
    Ok(IndexMap { regions, edges_x4, crossings_x4 })
}

pub fn crossing_sign(d: &Diagram, c: CrossingId) -> Result<i32, IndexError> {
    d.crossing(c).map(|x| x.sign()).map_err(|_| IndexError::UnknownCrossing(c))
}

pub fn writhe(d: &Diagram) -> i64 {
    d.crossings().iter().map(|c| i64::from(c.sign())).sum()
}

/// The two edges entering crossing `c`, as `(e_i, e_j)`, where `e_i` crosses
/// `e_j` from left to right: the region left of `e_i` is left of both strands.
pub fn entering_pair(d: &Diagram, c: CrossingId) -> (EdgeId, EdgeId) {
    let x = d.crossings()[c];
    let under = d.port_edge(Port::new(c, 0));
    let over = d.port_edge(Port::new(c, x.over_in()));
    // The corner left of an edge entering at slot s is corner s - 1.
    if x.corner_role((x.over_in() + 3) % 4) == CornerRole::Left {
        (over, under)
    } else {
        (under, over)
    }
}

/// Crossing, edge and region weights. Region weights are stored doubled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightTable {
    /// `None` for the basepoint-free modified weights.
    pub basepoint: Option<EdgeId>,
    pub crossings: Vec<i32>,
    pub edges: Vec<i32>,
    pub regions_x2: Vec<i64>,
}

impl WeightTable {
    pub fn region(&self, r: RegionId) -> Rational64 {
        Rational64::new(self.regions_x2[r], 2)
    }

    fn build(d: &Diagram, basepoint: Option<EdgeId>, weight_of: impl Fn(CrossingId) -> i32) -> Self {
        let mut crossings = vec![0; d.crossing_count()];
        let mut edges = vec![0; d.edge_count()];
        let mut regions_x2 = vec![0; d.faces().len()];
        for (c, w) in crossings.iter_mut().enumerate() {
            *w = weight_of(c);
            let (ei, ej) = entering_pair(d, c);
            edges[ei] = *w;
            edges[ej] = -*w;
            let x = d.crossings()[c];
            for k in 0..4 {
                let r = d.corner_face(c, k);
                regions_x2[r] += match x.corner_role(k) {
                    CornerRole::Left | CornerRole::Right => i64::from(*w),
                    CornerRole::Mixed => -i64::from(*w),
                };
            }
        }
        WeightTable { basepoint, crossings, edges, regions_x2 }
    }
}

fn require_knot(d: &Diagram) -> Result<(), IndexError> {
    if d.component_count() != 1 {
        return Err(IndexError::MultiComponent);
    }
    Ok(())
}

fn require_edge(d: &Diagram, e: EdgeId) -> Result<(), IndexError> {
    if e >= d.edge_count() {
        return Err(IndexError::UnknownEdge(e));
    }
    Ok(())
}

/// Edge labels `1..=2n` along the orientation, starting at `basepoint`.
pub fn edge_labels(d: &Diagram, basepoint: EdgeId) -> Result<Vec<usize>, IndexError> {
    require_knot(d)?;
    require_edge(d, basepoint)?;
    if d.is_trivial_circle() {
        return Ok(vec![1]);
    }
    let mut labels = vec![0; d.edge_count()];
    for (i, e) in d.component_edges(basepoint).into_iter().enumerate() {
        labels[e] = i + 1;
    }
    Ok(labels)
}

/// Weights with respect to a basepoint on edge `basepoint`.
pub fn weights(d: &Diagram, basepoint: EdgeId) -> Result<WeightTable, IndexError> {
    let labels = edge_labels(d, basepoint)?;
    Ok(WeightTable::build(d, Some(basepoint), |c| {
        let (ei, ej) = entering_pair(d, c);
        if labels[ei] > labels[ej] {
            1
        } else {
            -1
        }
    }))
}

/// Basepoint-free weights driven by the crossing signs.
pub fn modified_weights(d: &Diagram) -> WeightTable {
    WeightTable::build(d, None, |c| d.crossings()[c].sign())
}

/// Winding (rotation) number of the underlying curve, from edge 0.
pub fn winding_number(d: &Diagram) -> Result<i64, IndexError> {
    winding_number_at(d, 0)
}

/// `2 ind(e_p) + sum of crossing weights`, for a basepoint on edge `basepoint`.
pub fn winding_number_at(d: &Diagram, basepoint: EdgeId) -> Result<i64, IndexError> {
    let w = weights(d, basepoint)?;
    let idx = region_indices(d)?;
    let delta_x2 = idx.edge_x4(basepoint) / 2;
    Ok(delta_x2 + w.crossings.iter().map(|&x| i64::from(x)).sum::<i64>())
}
