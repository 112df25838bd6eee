mod common;

use knotdex::codec::{gen_arnold_base, gen_torus2, parse};
use knotdex::indices::{
    crossing_sign, edge_labels, entering_pair, modified_weights, region_indices, weights, winding_number,
    winding_number_at, writhe, IndexError,
};
use knotdex::invariants::lowest_point;
use knotdex::planar::{connected_sum, reverse_orientation, switch_crossing, Rotation};
use knotdex::{CornerRole, Diagram, FaceSide, Side};

const TREFOIL: &str = "kdx 1 / X(1,4,2,5) X(3,6,4,1) X(5,2,6,3) / outer=(1,R)";

/// Edges of `a` and `b` on their outer faces with the outer face on the same side.
fn outer_pair(a: &Diagram, b: &Diagram) -> Option<(usize, usize)> {
    let sa = &a.faces()[a.outer_region()].sides;
    let sb = &b.faces()[b.outer_region()].sides;
    sa.iter().find_map(|x| sb.iter().find(|y| y.side == x.side).map(|y| (x.edge, y.edge)))
}

#[test]
fn circle_indices() {
    let ccw = Diagram::circle_with(Rotation::Counterclockwise);
    let cw = Diagram::circle_with(Rotation::Clockwise);
    let i = region_indices(&ccw).unwrap();
    assert_eq!(i.region(ccw.outer_region()), 0);
    assert_eq!(i.region(1 - ccw.outer_region()), 1);
    assert_eq!(i.edge_x4(0), 2);
    assert_eq!(region_indices(&cw).unwrap().region(1 - cw.outer_region()), -1);
    assert_eq!(winding_number(&ccw).unwrap(), 1);
    assert_eq!(winding_number(&cw).unwrap(), -1);
}

#[test]
fn trefoil_indices() {
    let d = gen_torus2(3).unwrap();
    let i = region_indices(&d).unwrap();
    let mut r = i.regions().to_vec();
    r.sort();
    assert_eq!(r, vec![0, 1, 1, 1, 2]);
    for c in 0..3 {
        assert_eq!(i.crossing_x4(c), 4);
    }
    assert_eq!(winding_number(&d).unwrap(), 2);

    // The text example puts a petal outside, which shifts every index by one.
    let d = parse(TREFOIL).unwrap();
    let mut r = region_indices(&d).unwrap().regions().to_vec();
    r.sort();
    assert_eq!(r, vec![-1, 0, 0, 0, 1]);
    assert_eq!(winding_number(&d).unwrap(), 0);
}

#[test]
fn indices_step_by_one_across_edges() {
    for d in common::random_suite(60, 9, 1) {
        let i = region_indices(&d).unwrap();
        for e in 0..d.edge_count() {
            let l = d.face_of(FaceSide { edge: e, side: Side::Left });
            let r = d.face_of(FaceSide { edge: e, side: Side::Right });
            assert_eq!(i.region(l), i.region(r) + 1);
            assert_eq!(i.edge_x4(e), 2 * (i.region(l) + i.region(r)));
        }
    }
}

#[test]
fn corner_roles_frame_the_crossing_index() {
    for d in common::random_suite(60, 9, 2) {
        let i = region_indices(&d).unwrap();
        for c in 0..d.crossing_count() {
            let x = d.crossings()[c];
            let roles: Vec<CornerRole> = (0..4).map(|k| x.corner_role(k)).collect();
            assert_eq!(roles.iter().filter(|&&r| r == CornerRole::Mixed).count(), 2);
            for k in 0..4 {
                let v = 4 * i.region(d.corner_face(c, k));
                let expected = i.crossing_x4(c)
                    + match roles[k as usize] {
                        CornerRole::Left => 4,
                        CornerRole::Right => -4,
                        CornerRole::Mixed => 0,
                    };
                assert_eq!(v, expected, "crossing {c} corner {k}");
            }
        }
    }
}

#[test]
fn reversal_negates_indices_and_keeps_signs() {
    for d in common::random_suite(50, 9, 3) {
        let r = reverse_orientation(&d);
        let a = region_indices(&d).unwrap();
        let b = region_indices(&r).unwrap();
        let mut x: Vec<i64> = a.regions().to_vec();
        let mut y: Vec<i64> = b.regions().iter().map(|v| -v).collect();
        x.sort();
        y.sort();
        assert_eq!(x, y);
        assert_eq!(writhe(&d), writhe(&r));
        assert_eq!(winding_number(&d).unwrap(), -winding_number(&r).unwrap());
    }
}

#[test]
fn switching_flips_one_sign() {
    for d in common::random_suite(30, 9, 4) {
        for c in 0..d.crossing_count() {
            let s = switch_crossing(&d, c).unwrap();
            assert_eq!(crossing_sign(&s, c).unwrap(), -crossing_sign(&d, c).unwrap());
            assert_eq!(writhe(&s), writhe(&d) - 2 * i64::from(crossing_sign(&d, c).unwrap()));
            let (a, b) = (region_indices(&s).unwrap(), region_indices(&d).unwrap());
            let (mut ra, mut rb) = (a.regions().to_vec(), b.regions().to_vec());
            ra.sort();
            rb.sort();
            assert_eq!(ra, rb);
            assert_eq!(a.crossing_x4(c), b.crossing_x4(c));
        }
    }
    let d = parse(TREFOIL).unwrap();
    assert_eq!(crossing_sign(&d, 7), Err(IndexError::UnknownCrossing(7)));
}

#[test]
fn writhe_adds_under_connected_sum() {
    let suite = common::random_suite(40, 7, 5);
    for pair in suite.chunks(2) {
        let (a, b) = (&pair[0], &pair[1]);
        let Some((ea, eb)) = outer_pair(a, b) else { continue };
        let s = connected_sum(a, b, ea, eb).unwrap();
        assert_eq!(s.crossing_count(), a.crossing_count() + b.crossing_count());
        assert_eq!(writhe(&s), writhe(a) + writhe(b));
    }
}

#[test]
fn figure_eight_curve_weights() {
    let d = gen_arnold_base(0).unwrap();
    assert_eq!(d.crossing_count(), 1);
    assert_eq!(winding_number(&d).unwrap(), 0);
    let w = weights(&d, 0).unwrap();
    assert_eq!(w.crossings.len(), 1);
    assert_eq!(w.crossings[0].abs(), 1);
    let (ei, ej) = entering_pair(&d, 0);
    assert_eq!(w.edges[ei], w.crossings[0]);
    assert_eq!(w.edges[ej], -w.crossings[0]);
    // Each crossing contributes to four corners with weights summing to zero.
    assert_eq!(w.regions_x2.iter().sum::<i64>(), 0);
}

#[test]
fn lowest_point_weights_are_signs() {
    for d in common::random_suite(60, 9, 6) {
        let a = common::ascending_version(&d);
        let bp = lowest_point(&a).unwrap().expect("ascending");
        let w = weights(&a, bp).unwrap();
        let m = modified_weights(&a);
        assert_eq!(w.crossings, m.crossings);
        assert_eq!(w.regions_x2, m.regions_x2);
    }
}

#[test]
fn winding_number_is_basepoint_independent() {
    for d in common::random_suite(50, 9, 7) {
        let w = winding_number(&d).unwrap();
        for e in 0..d.edge_count() {
            assert_eq!(winding_number_at(&d, e).unwrap(), w);
        }
    }
    for p in [3, 5, 7] {
        assert_eq!(winding_number(&gen_torus2(p).unwrap()).unwrap(), 2);
    }
}

#[test]
fn labels_run_along_the_orientation() {
    let d = gen_torus2(5).unwrap();
    let l = edge_labels(&d, 3).unwrap();
    assert_eq!(l[3], 1);
    assert_eq!(l[d.next_edge(3)], 2);
    let mut sorted = l.clone();
    sorted.sort();
    assert_eq!(sorted, (1..=10).collect::<Vec<_>>());
    assert_eq!(edge_labels(&d, 99), Err(IndexError::UnknownEdge(99)));
}
