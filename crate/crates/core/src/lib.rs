//! Plane-curve and knot-diagram invariants computed from combinatorial
//! planar maps, together with a Reidemeister move engine.
//!
//! The main entry points are [`Diagram`] (see [`planar`]), the text format in
//! [`codec`], the invariants in [`invariants`] and the move engine in
//! [`moves`].

pub mod codec;
pub mod indices;
pub mod invariants;
pub mod moves;
pub mod planar;
pub mod smoothing;

pub use planar::{CornerRole, Crossing, CrossingId, Diagram, DiagramError, Edge, EdgeId, FaceSide, Port, Region, Side};
