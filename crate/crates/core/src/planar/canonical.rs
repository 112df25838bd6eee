//! Relabeling-invariant byte encoding of a diagram.

use std::collections::VecDeque;

use super::{Diagram, Port, Rotation, Side};

const CIRCLE_CCW: &[u8] = b"circle+";
const CIRCLE_CW: &[u8] = b"circle-";

/// Encodes the diagram once per possible root crossing, numbering crossings
/// and edges in breadth-first discovery order, and keeps the smallest
/// encoding. Slot 0 fixes the rotation at every crossing, so the root
/// crossing alone determines the numbering.
pub(crate) fn canonical_form(d: &Diagram) -> Vec<u8> {
    match d.circle_rotation() {
        Some(Rotation::Counterclockwise) => return CIRCLE_CCW.to_vec(),
        Some(Rotation::Clockwise) => return CIRCLE_CW.to_vec(),
        None => {}
    }
    (0..d.crossing_count())
        .map(|root| encode_from(d, root))
        .min()
        .expect("at least one crossing")
}

fn encode_from(d: &Diagram, root: usize) -> Vec<u8> {
    let n = d.crossing_count();
    let m = d.edges().len();
    let mut crossing_label = vec![u32::MAX; n];
    let mut edge_label = vec![u32::MAX; m];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::from([root]);
    crossing_label[root] = 0;
    let mut next_edge = 0u32;
    while let Some(c) = queue.pop_front() {
        order.push(c);
        for s in 0..4 {
            let p = Port::new(c, s);
            let e = d.port_edge(p);
            if edge_label[e] == u32::MAX {
                edge_label[e] = next_edge;
                next_edge += 1;
            }
            let other = d.mate(p).crossing();
            if crossing_label[other] == u32::MAX {
                crossing_label[other] = order.len() as u32 + queue.len() as u32;
                queue.push_back(other);
            }
        }
    }
    let mut out = Vec::with_capacity(8 + n * 20);
    let mut put = |x: u32| out.extend_from_slice(&x.to_be_bytes());
    put(n as u32);
    put(d.component_count() as u32);
    for &c in &order {
        put(u32::from(d.crossings()[c].over_in()));
        for s in 0..4 {
            put(edge_label[d.port_edge(Port::new(c, s))]);
        }
    }
    let outer = d.faces()[d.outer_region()]
        .sides
        .iter()
        .map(|fs| edge_label[fs.edge] * 2 + u32::from(fs.side == Side::Left))
        .min()
        .expect("outer face has a boundary");
    put(outer);
    out
}
