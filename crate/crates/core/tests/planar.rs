use knotdex::planar::*;
use knotdex::Diagram;

/// Standard three-crossing planar code, 0-based edges.
fn trefoil_raw() -> RawDiagram {
    RawDiagram {
        crossings: vec![
            RawCrossing { edges: [0, 3, 1, 4], over_in: 1 },
            RawCrossing { edges: [2, 5, 3, 0], over_in: 1 },
            RawCrossing { edges: [4, 1, 5, 2], over_in: 1 },
        ],
        outer: FaceSide { edge: 0, side: Side::Right },
    }
}

fn trefoil() -> Diagram {
    Diagram::from_raw(&trefoil_raw()).unwrap()
}

#[test]
fn trefoil_validates_with_five_faces() {
    let report = validate(&trefoil_raw());
    assert!(report.passed(), "{report}");
    assert_eq!(report.faces, Some(5));
    let d = trefoil();
    assert_eq!(d.faces().len(), 5);
    assert_eq!(d.edges().len(), 6);
    assert_eq!(d.component_count(), 1);
}

#[test]
fn circle_has_two_faces() {
    let c = Diagram::circle();
    assert!(c.validate().passed());
    assert_eq!(c.faces().len(), 2);
}

#[test]
fn doubled_slot_is_rejected() {
    let mut raw = trefoil_raw();
    raw.crossings[0].edges[1] = 0;
    let report = validate(&raw);
    assert!(!report.passed());
    assert!(report.failures().contains(&Check::SlotOccupancy));
}

#[test]
fn one_kink_has_three_faces() {
    let raw = RawDiagram {
        crossings: vec![RawCrossing { edges: [0, 1, 1, 0], over_in: 1 }],
        outer: FaceSide { edge: 0, side: Side::Right },
    };
    let d = Diagram::from_raw(&raw).unwrap();
    assert_eq!(d.faces().len(), 3);
}

#[test]
fn faces_partition_sides_and_corners() {
    let d = trefoil();
    let mut sides: Vec<FaceSide> = d.faces().iter().flat_map(|r| r.sides.clone()).collect();
    sides.sort();
    sides.dedup();
    assert_eq!(sides.len(), 2 * d.edges().len());
    let corners: usize = d.faces().iter().map(|r| r.corners.len()).sum();
    assert_eq!(corners, 4 * d.crossing_count());
    for r in d.faces() {
        for (_, m) in r.crossing_multiplicities() {
            assert!(m == 1 || m == 2);
        }
    }
}

#[test]
fn switch_is_an_involution_and_keeps_faces() {
    let d = trefoil();
    for c in 0..3 {
        let s = switch_crossing(&d, c).unwrap();
        assert_ne!(s.canonical_form(), d.canonical_form());
        assert_eq!(s.faces().len(), d.faces().len());
        assert_eq!(s.crossings()[c].sign(), -d.crossings()[c].sign());
        let back = switch_crossing(&s, c).unwrap();
        assert_eq!(back.canonical_form(), d.canonical_form());
    }
    assert_eq!(
        switch_crossing(&Diagram::circle(), 0).unwrap_err(),
        DiagramError::UnknownCrossing(0)
    );
}

#[test]
fn reversal_is_an_involution_and_keeps_signs() {
    let d = trefoil();
    let r = reverse_orientation(&d);
    for c in 0..3 {
        assert_eq!(r.crossings()[c].sign(), d.crossings()[c].sign());
    }
    assert_eq!(reverse_orientation(&r).canonical_form(), d.canonical_form());
    let c = Diagram::circle();
    assert_ne!(reverse_orientation(&c).canonical_form(), c.canonical_form());
}

#[test]
fn canonical_form_ignores_labels_but_sees_mirrors() {
    let d = trefoil();
    for perm in [[1, 2, 0], [2, 1, 0], [0, 2, 1]] {
        assert_eq!(d.relabeled(&perm).canonical_form(), d.canonical_form());
    }
    let mirror = (0..3).fold(d.clone(), |acc, c| switch_crossing(&acc, c).unwrap());
    assert_ne!(mirror.canonical_form(), d.canonical_form());
    assert_eq!(Diagram::circle().canonical_form(), b"circle+".to_vec());
}

#[test]
fn connected_sum_adds_crossings() {
    let d = trefoil();
    let outer = d.outer_side();
    let e = d.relabeled(&[2, 0, 1]);
    let eo = e.faces()[e.outer_region()].sides.iter().find(|fs| fs.side == outer.side).copied().unwrap();
    let s = connected_sum(&d, &e, outer.edge, eo.edge).unwrap();
    assert_eq!(s.crossing_count(), 6);
    assert_eq!(s.component_count(), 1);
    assert_eq!(s.faces().len(), 8);
    let id = connected_sum(&d, &Diagram::circle(), outer.edge, 0).unwrap();
    assert_eq!(id.canonical_form(), d.canonical_form());
}

#[test]
fn connected_sum_rejects_inner_edges() {
    let d = trefoil();
    let outer = d.outer_region();
    let inner_edge = (0..6)
        .find(|&e| {
            d.face_of(FaceSide { edge: e, side: Side::Left }) != outer
                && d.face_of(FaceSide { edge: e, side: Side::Right }) != outer
        })
        .unwrap();
    assert_eq!(
        connected_sum(&d, &d, inner_edge, d.outer_side().edge).unwrap_err(),
        DiagramError::EdgeNotOnOuterFace(inner_edge)
    );
}
