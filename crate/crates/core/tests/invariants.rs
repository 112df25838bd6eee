mod common;

use knotdex::codec::{gen_arnold_base, gen_d, gen_l, gen_torus2};
use knotdex::indices::region_indices;
use knotdex::invariants::{
    cowrithe, g_functional, hn, is_ascending, jminus, jplus, sci, sci_st_check, sci_via_edges, sci_via_regions,
    st, st_at, st_formulas, vassiliev_derivative, GroupElement, InvariantError, MAX_DERIVATIVE_SET,
};
use knotdex::moves::{apply, find_sites, MoveKind, MoveSite};
use knotdex::planar::{connected_sum, reverse_orientation, switch_crossing};
use knotdex::{Diagram, Side};
use num_rational::Rational64;

fn outer_pair(a: &Diagram, b: &Diagram) -> Option<(usize, usize)> {
    let sa = &a.faces()[a.outer_region()].sides;
    let sb = &b.faces()[b.outer_region()].sides;
    sa.iter().find_map(|x| sb.iter().find(|y| y.side == x.side).map(|y| (x.edge, y.edge)))
}

fn group(x: &[(i64, i64)], y: &[(i64, i64)]) -> GroupElement {
    let mut g = GroupElement::zero();
    for &(k, c) in x {
        g.add_x(k, c);
    }
    for &(k, c) in y {
        g.add_y(k, c);
    }
    g
}

#[test]
fn arnold_base_values() {
    let k0 = gen_arnold_base(0).unwrap();
    assert_eq!((jplus(&k0).unwrap(), jminus(&k0).unwrap(), st(&k0).unwrap()), (0, -1, 0));
    for i in 0..=4i64 {
        let k = gen_arnold_base(i as usize + 1).unwrap();
        assert_eq!(jplus(&k).unwrap(), -2 * i, "J+ of K_{}", i + 1);
        assert_eq!(jminus(&k).unwrap(), -3 * i, "J- of K_{}", i + 1);
        assert_eq!(st(&k).unwrap(), i, "St of K_{}", i + 1);
    }
}

#[test]
fn circle_values() {
    let o = Diagram::circle();
    assert_eq!(sci(&o).unwrap(), 0);
    assert_eq!(sci_via_edges(&o).unwrap(), 0);
    assert_eq!(sci_via_regions(&o).unwrap(), 0);
    assert!(hn(&o).unwrap().is_zero());
    assert_eq!(cowrithe(&o).unwrap(), 0);
    let r = sci_st_check(&o).unwrap();
    assert!(r.holds);
    assert_eq!(r.sci, 0);
}

#[test]
fn family_sci_values() {
    assert_eq!(sci(&gen_d(2).unwrap()).unwrap(), 6);
    assert_eq!(sci(&gen_l(3).unwrap()).unwrap(), 6);
    for n in 1..=8i64 {
        let d = gen_d(n as usize).unwrap();
        let v = sci(&d).unwrap();
        assert_eq!(v, (3 * n * n - n + 2) / 2);
        assert_eq!(sci_via_edges(&d).unwrap(), v);
        assert_eq!(sci_via_regions(&d).unwrap(), v);
        assert_eq!(g_functional(&hn(&d).unwrap()), 2 * n * n + 2 * n - 1);
    }
    for n in 1..=8i64 {
        assert_eq!(sci(&gen_l(n as usize).unwrap()).unwrap(), n * (n + 1) / 2);
    }
}

#[test]
fn sci_formulas_agree() {
    for d in common::random_suite(200, 10, 21) {
        let v = sci(&d).unwrap();
        assert_eq!(sci_via_edges(&d).unwrap(), v);
        assert_eq!(sci_via_regions(&d).unwrap(), v);
    }
}

#[test]
fn strangeness_is_well_defined() {
    for d in common::random_suite(50, 10, 22) {
        let v = st_at(&d, 0).unwrap();
        for e in 0..d.edge_count() {
            let [a, b, c] = st_formulas(&d, e).unwrap();
            assert_eq!(a, Rational64::from(v));
            assert_eq!(b, a);
            assert_eq!(c, a);
        }
        assert_eq!(st(&reverse_orientation(&d)).unwrap(), v);
        assert_eq!(jplus(&d).unwrap() - jminus(&d).unwrap(), d.crossing_count() as i64);
    }
}

#[test]
fn torus_hn() {
    let t3 = gen_torus2(3).unwrap();
    assert_eq!(hn(&t3).unwrap(), GroupElement::x(1) + GroupElement::x(1) + GroupElement::x(1));
    assert_eq!(cowrithe(&t3).unwrap(), -3);
    assert_eq!(sci(&t3).unwrap(), 3);
    assert!(!is_ascending(&t3).unwrap());
    for p in [3i64, 5, 7] {
        let d = gen_torus2(p as usize).unwrap();
        for mask in 0u32..(1 << p) {
            let mut s = d.clone();
            for c in 0..p as usize {
                if mask & (1 << c) != 0 {
                    s = switch_crossing(&s, c).unwrap();
                }
            }
            let k = i64::from(mask.count_ones());
            let expected = group(&[((p - 2 * k - 1) / 2, p - k)], &[((p - 2 * k + 1) / 2, k)]);
            assert_eq!(hn(&s).unwrap(), expected, "p = {p}, mask = {mask:b}");
        }
    }
}

#[test]
fn cowrithe_and_g() {
    assert_eq!(cowrithe(&gen_d(1).unwrap()).unwrap(), 1);
    assert_eq!(g_functional(&GroupElement::zero()), 0);
    for k in -3..=3 {
        assert_eq!(g_functional(&(GroupElement::x(k) + GroupElement::y(k))), 0);
    }
    let g = group(&[(2, 1)], &[(-1, 3)]);
    assert_eq!(g_functional(&g), 3 - 6);
    assert_eq!(g.to_string(), "X_2 + 3Y_-1");
    assert_eq!((g.clone() - g).to_string(), "0");
}

#[test]
fn invariants_add_under_connected_sum() {
    let suite = common::random_suite(200, 7, 23);
    let mut checked = 0;
    for pair in suite.chunks(2) {
        let (a, b) = (&pair[0], &pair[1]);
        let Some((ea, eb)) = outer_pair(a, b) else { continue };
        let s = connected_sum(a, b, ea, eb).unwrap();
        assert_eq!(sci(&s).unwrap(), sci(a).unwrap() + sci(b).unwrap());
        assert_eq!(hn(&s).unwrap(), hn(a).unwrap() + hn(b).unwrap());
        assert_eq!(cowrithe(&s).unwrap(), cowrithe(a).unwrap() + cowrithe(b).unwrap());
        checked += 1;
    }
    assert!(checked >= 50, "only {checked} pairs");
}

#[test]
fn sci_has_order_one() {
    let mut nonzero = false;
    for d in common::random_suite(50, 8, 24) {
        let idx = region_indices(&d).unwrap();
        for a in 0..d.crossing_count() {
            let first = vassiliev_derivative(|x: &Diagram| sci(x).unwrap(), &d, &[a]).unwrap();
            assert_eq!(4 * first, 2 * i64::from(d.crossings()[a].sign()) * idx.crossing_x4(a));
            nonzero |= first != 0;
            for b in a + 1..d.crossing_count() {
                assert_eq!(vassiliev_derivative(|x: &Diagram| sci(x).unwrap(), &d, &[a, b]).unwrap(), 0);
            }
        }
    }
    assert!(nonzero);
}

#[test]
fn hn_derivative_on_torus_knots() {
    for p in [3usize, 5] {
        let d = gen_torus2(p).unwrap();
        let all: Vec<usize> = (0..p).collect();
        let g = vassiliev_derivative(|x: &Diagram| hn(x).unwrap(), &d, &all).unwrap();
        assert_eq!(g.x_coeff((p as i64 - 1) / 2), p as i64);
    }
    let d = gen_d(2).unwrap();
    let big: Vec<usize> = (0..=MAX_DERIVATIVE_SET).collect();
    assert_eq!(
        vassiliev_derivative(|x: &Diagram| sci(x).unwrap(), &d, &big),
        Err(InvariantError::SetTooLarge(MAX_DERIVATIVE_SET + 1))
    );
}

#[test]
fn ascending_diagrams_satisfy_the_bridge() {
    for d in common::random_suite(100, 10, 25) {
        let a = common::ascending_version(&d);
        assert!(is_ascending(&a).unwrap());
        let r = sci_st_check(&a).unwrap();
        assert!(r.holds, "{r:?}");
        assert_eq!(r.predicted, Some(Rational64::from(r.sci)));
    }
}

#[test]
fn first_move_changes() {
    for d in common::random_suite(40, 8, 26) {
        for site in find_sites(&d, MoveKind::R1Create) {
            let MoveSite::R1Create { side, .. } = site else { unreachable!() };
            let e = apply(&d, site).unwrap();
            let c = d.crossing_count();
            let ind_x4 = region_indices(&e).unwrap().crossing_x4(c);
            assert_eq!(ind_x4 % 4, 0);
            let w = if side == Side::Left { 1 } else { -1 };
            let ind = ind_x4 / 4;
            assert_eq!(st(&e).unwrap() - st(&d).unwrap(), w * ind);
            assert_eq!(jplus(&e).unwrap() - jplus(&d).unwrap(), -2 * w * ind);
            assert_eq!(jminus(&e).unwrap() - jminus(&d).unwrap(), -2 * w * ind - 1);
        }
    }
}
