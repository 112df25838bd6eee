#![allow(dead_code)]

use knotdex::codec::gen_random;
use knotdex::indices::edge_labels;
use knotdex::planar::switch_crossing;
use knotdex::{Diagram, Port};

/// Seeded random diagrams with 1 to `max` crossings.
pub fn random_suite(count: u64, max: usize, salt: u64) -> Vec<Diagram> {
    (0..count).map(|i| gen_random(1 + (i as usize % max), salt * 10_000 + i).unwrap()).collect()
}

/// Switches crossings so that, from edge 0, every crossing is met first on
/// its under-strand.
pub fn ascending_version(d: &Diagram) -> Diagram {
    if d.is_trivial_circle() {
        return d.clone();
    }
    let labels = edge_labels(d, 0).unwrap();
    let mut out = d.clone();
    for c in 0..d.crossing_count() {
        let x = d.crossings()[c];
        let under = labels[d.port_edge(Port::new(c, 0))];
        let over = labels[d.port_edge(Port::new(c, x.over_in()))];
        if over < under {
            out = switch_crossing(&out, c).unwrap();
        }
    }
    out
}
