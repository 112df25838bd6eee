use knotdex::codec::{gen_l, gen_random, gen_torus2};
use knotdex::indices::{winding_number, writhe};
use knotdex::invariants::{jminus, jplus, sci};
use knotdex::moves::{
    apply, classify_r3, classify_site, find_sites, measure_deltas, regular_l_sequence, unknot_l_sequence,
    verify_sequence, Direction, MoveKind, MoveSite, MoveTags,
};
use knotdex::{Diagram, Side};

fn samples() -> Vec<Diagram> {
    let mut out = vec![Diagram::circle(), gen_torus2(3).unwrap(), gen_l(2).unwrap()];
    for seed in 0..12 {
        out.push(gen_random(1 + (seed as usize % 6), seed).unwrap());
    }
    out
}

#[test]
fn circle_has_four_kink_sites() {
    assert_eq!(find_sites(&Diagram::circle(), MoveKind::R1Create).len(), 4);
}

#[test]
fn kink_on_circle() {
    for side in [Side::Left, Side::Right] {
        for over in [false, true] {
            let site = MoveSite::R1Create { edge: 0, side, over };
            let d = apply(&Diagram::circle(), site).unwrap();
            assert_eq!(d.crossing_count(), 1);
            assert!(d.validate().passed());
            let rec = classify_site(&Diagram::circle(), site).unwrap();
            let MoveTags::R1 { sign, .. } = rec.tags else { panic!() };
            assert_eq!(d.crossings()[0].sign(), sign);
            // The crossing index is the index of the face holding the loop.
            let inside = if side == Side::Left { 1 } else { 0 };
            assert_eq!(sci(&d).unwrap(), i64::from(sign) * inside);
            let w = if side == Side::Left { 2 } else { 0 };
            assert_eq!(winding_number(&d).unwrap(), w);
        }
    }
}

#[test]
fn framed_kink_pair_keeps_writhe_and_sci() {
    for side in [Side::Left, Side::Right] {
        let d = apply(&Diagram::circle(), MoveSite::R1FCreate { edge: 0, side, over: true }).unwrap();
        assert_eq!(d.crossing_count(), 2);
        assert_eq!(writhe(&d), 0);
        assert_eq!(sci(&d).unwrap(), 0);
        let back = find_sites(&d, MoveKind::R1FRemove);
        assert!(!back.is_empty());
        assert_eq!(apply(&d, back[0]).unwrap(), Diagram::circle());
    }
}

/// Both triangles of the alternating trefoil have a cyclic over/under pattern.
#[test]
fn alternating_trefoil_has_no_triangle_sites() {
    let d = gen_torus2(3).unwrap();
    assert_eq!(d.faces().iter().filter(|f| f.sides.len() == 3).count(), 2);
    assert!(find_sites(&d, MoveKind::R3).is_empty());
}

/// Every creation is undone by some removal.
#[test]
fn creations_are_invertible() {
    for d in samples() {
        let key = d.canonical_form();
        for kind in [MoveKind::R1Create, MoveKind::R1FCreate, MoveKind::R2Create] {
            let back_kind = match kind {
                MoveKind::R1Create => MoveKind::R1Remove,
                MoveKind::R1FCreate => MoveKind::R1FRemove,
                _ => MoveKind::R2Remove,
            };
            for site in find_sites(&d, kind) {
                let e = apply(&d, site).unwrap_or_else(|err| panic!("{site:?}: {err}"));
                assert!(e.validate().passed());
                let ok = find_sites(&e, back_kind)
                    .into_iter()
                    .any(|b| apply(&e, b).map_or(false, |f| f.canonical_form() == key));
                assert!(ok, "no inverse for {site:?}");
            }
        }
    }
}

#[test]
fn triangle_moves_are_involutions() {
    for d in samples() {
        let key = d.canonical_form();
        for site in find_sites(&d, MoveKind::R3) {
            let e = apply(&d, site).unwrap();
            assert!(e.validate().passed());
            let ok = find_sites(&e, MoveKind::R3)
                .into_iter()
                .any(|b| apply(&e, b).map_or(false, |f| f.canonical_form() == key));
            assert!(ok, "no inverse for {site:?}");
        }
    }
}

#[test]
fn second_move_classification_matches_j_jumps() {
    for d in samples() {
        for site in find_sites(&d, MoveKind::R2Create) {
            let e = apply(&d, site).unwrap();
            let rec = classify_site(&d, site).unwrap();
            let MoveTags::R2 { matched } = rec.tags else { panic!() };
            let (dp, dm) = (jplus(&e).unwrap() - jplus(&d).unwrap(), jminus(&e).unwrap() - jminus(&d).unwrap());
            if matched {
                assert_eq!((dp, dm), (2, 0), "{site:?}");
            } else {
                assert_eq!((dp, dm), (0, -2), "{site:?}");
            }
        }
    }
}

#[test]
fn triangle_classification_is_coherent() {
    let mut seen = 0;
    for d in samples() {
        for site in find_sites(&d, MoveKind::R3) {
            let MoveSite::R3 { face } = site else { unreachable!() };
            let c = classify_r3(&d, face).unwrap();
            assert_eq!(c.forward, c.ascending == c.positive);
            let e = apply(&d, site).unwrap();
            let delta = measure_deltas(&d, &e).unwrap();
            assert_eq!(delta.sci, if c.forward { 1 } else { -1 });
            assert_eq!(delta.cowrithe, if c.positive { 1 } else { -1 }, "{site:?}");
            seen += 1;
        }
    }
    assert!(seen > 0);
}

#[test]
fn l_sequences_unknot() {
    for n in 1..=3 {
        let seq = unknot_l_sequence(n).unwrap();
        let rep = verify_sequence(&gen_l(n).unwrap(), &seq, true);
        assert!(rep.valid(), "{:?}", rep.failure);
        assert!(rep.final_diagram.is_trivial_circle());
        assert_eq!(rep.r3_count(), n * (n + 1) / 2);
        let reg = regular_l_sequence(n).unwrap();
        assert_eq!(reg.len(), 2 * n);
        let rep = verify_sequence(&gen_l(n).unwrap(), &reg, false);
        assert!(rep.valid() && rep.final_diagram.is_trivial_circle());
        assert!(reg.iter().all(|r| r.direction == Direction::Backward));
    }
}

#[test]
fn l_family_sci() {
    for n in 1..=5 {
        assert_eq!(sci(&gen_l(n).unwrap()).unwrap(), (n * (n + 1) / 2) as i64);
    }
}
