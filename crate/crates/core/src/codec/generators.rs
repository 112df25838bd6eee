//! Diagram families.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::kdx::{parse, serialize};
use crate::moves::{apply, find_sites, MoveKind, MoveSite};
use crate::planar::{Builder, Diagram, EdgeId, Port, Side};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
}

/// The standard alternating diagram of the `(2, p)` torus knot, `p` odd.
pub fn gen_torus2(p: usize) -> Result<Diagram, GenError> {
    if p < 3 || p % 2 == 0 {
        return Err(GenError::BadParameter(format!("torus2 needs an odd p >= 3, got {p}")));
    }
    // Slots: 0 inner in, 1 inner out, 2 outer out, 3 outer in.
    let mut b = Builder::empty();
    for _ in 0..p {
        b.add_crossing(3);
    }
    for i in 0..p {
        let j = (i + 1) % p;
        b.link(Port::new(i, 2), Port::new(j, 3));
        b.link(Port::new(i, 1), Port::new(j, 0));
    }
    Ok(normalize(&b.finish(Port::new(0, 1)).expect("torus diagram is valid")))
}

/// The diagram as it reads back from its own KDX text. Generators return
/// this form so that ids in memory match ids in a written file.
pub fn normalize(d: &Diagram) -> Diagram {
    parse(&serialize(d)).expect("serialized diagrams parse")
}

fn kink(d: &Diagram, edge: EdgeId, side: Side, over: bool) -> Diagram {
    apply(d, MoveSite::R1Create { edge, side, over }).expect("kink insertion is always legal")
}

/// Edge leaving crossing `c` through its under-strand.
fn under_out(d: &Diagram, c: usize) -> EdgeId {
    d.port_edge(Port::new(c, 2))
}

/// Edge entering crossing `c` through its under-strand.
fn under_in(d: &Diagram, c: usize) -> EdgeId {
    d.port_edge(Port::new(c, 0))
}

/// Arnold's base curves: `K_0` is the figure eight, `K_1` the circle and
/// `K_{i+1}` a circle with `i` small inner loops. Every kink is entered
/// along its under-strand, so the diagram is ascending.
pub fn gen_arnold_base(i: usize) -> Result<Diagram, GenError> {
    let circle = Diagram::circle();
    if i == 0 {
        return Ok(normalize(&kink(&circle, 0, Side::Right, false)));
    }
    let mut d = circle;
    for k in 0..i - 1 {
        let edge = if k == 0 { 0 } else { under_in(&d, k - 1) };
        d = kink(&d, edge, Side::Left, false);
    }
    Ok(normalize(&d))
}

/// `L_n` with `curls` negative outer kinks in front of the first nested
/// kink and, optionally, one more negative kink on the loop of nested kink
/// `at` (the slide positions of the framed unknotting sequence).
pub(crate) fn l_family(n: usize, curls: usize, at: Option<usize>) -> Diagram {
    let mut d = Diagram::circle();
    // Nested positive kinks: crossing j - 1 sits inside the loop of crossing j - 2.
    for j in 0..n {
        let edge = if j == 0 { 0 } else { under_out(&d, j - 1) };
        d = kink(&d, edge, Side::Left, false);
    }
    for _ in 0..curls {
        d = kink(&d, under_in(&d, 0), Side::Right, false);
    }
    if let Some(j) = at {
        let edge = if j == 0 { under_in(&d, 0) } else { under_out(&d, j - 1) };
        d = kink(&d, edge, Side::Right, false);
    }
    d
}

/// The unknot `L_n`: `n` nested positive kinks and `n` negative outer kinks.
pub fn gen_l(n: usize) -> Result<Diagram, GenError> {
    if n == 0 {
        return Err(GenError::BadParameter("L_n needs n >= 1".into()));
    }
    Ok(normalize(&l_family(n, n, None)))
}

/// Closure of a braid drawn upwards with the closing arcs on the right.
/// Letter `(i, positive)` crosses positions `i` and `i + 1`.
fn braid_closure(strands: usize, word: &[(usize, bool)]) -> Diagram {
    let mut b = Builder::empty();
    let mut top: Vec<Option<Port>> = vec![None; strands];
    let mut bottom: Vec<Option<Port>> = vec![None; strands];
    for &(i, positive) in word {
        let c = b.add_crossing(if positive { 3 } else { 1 });
        // Slots of the south-west, south-east, north-west and north-east arms.
        let [sw, se, nw, ne] = if positive { [3, 0, 2, 1] } else { [0, 1, 3, 2] };
        for (pos, slot) in [(i, sw), (i + 1, se)] {
            match top[pos] {
                Some(q) => b.link(q, Port::new(c, slot)),
                None => bottom[pos] = Some(Port::new(c, slot)),
            }
        }
        top[i] = Some(Port::new(c, nw));
        top[i + 1] = Some(Port::new(c, ne));
    }
    for (t, s) in top.iter().zip(&bottom) {
        b.link(t.expect("every strand crosses"), s.expect("every strand crosses"));
    }
    let outer = bottom[strands - 1].expect("every strand crosses");
    b.finish(outer).expect("braid closures are valid")
}

/// The unknot `D_n`. Its core is the closure of the `(n + 2)`-strand braid
/// `s1^(2n-1) (s2 .. s(n+1)) (s1 .. sn) s(n+1)^-(2n+1) sn^-1 .. s2^-1`, which
/// has `7n - 1` crossings and writhe `n - 1`. Then `n - 1` negative kinks go
/// on the edge leaving the first crossing along the leftmost strand, on the
/// side facing away from the braid, which brings the writhe to zero.
pub fn gen_d(n: usize) -> Result<Diagram, GenError> {
    if n == 0 {
        return Err(GenError::BadParameter("D_n needs n >= 1".into()));
    }
    let mut word = vec![(0, true); 2 * n - 1];
    word.extend((1..=n).map(|i| (i, true)));
    word.extend((0..n).map(|i| (i, true)));
    word.extend(std::iter::repeat_n((n, false), 2 * n + 1));
    word.extend((1..n).rev().map(|i| (i, false)));
    let mut d = braid_closure(n + 2, &word);
    for _ in 1..n {
        let edge = d.port_edge(Port::new(0, 2));
        d = kink(&d, edge, Side::Left, true);
    }
    Ok(normalize(&d))
}

/// A diagram with `n` crossings reached from the circle by a seeded random
/// walk of Reidemeister moves.
pub fn gen_random(n: usize, seed: u64) -> Result<Diagram, GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut d = Diagram::circle();
    let mut steps = 0;
    while d.crossing_count() != n || steps < 2 * n {
        steps += 1;
        let c = d.crossing_count();
        let mut kinds = vec![MoveKind::R3, MoveKind::R3];
        if c < n {
            kinds.extend([MoveKind::R1Create, MoveKind::R1Create]);
            if c + 2 <= n {
                kinds.extend([MoveKind::R2Create, MoveKind::R2Create, MoveKind::R2Create]);
            }
        }
        if c > 0 && rng.gen_bool(0.2) {
            kinds.extend([MoveKind::R1Remove, MoveKind::R2Remove]);
        }
        let kind = *kinds.choose(&mut rng).unwrap();
        let sites = find_sites(&d, kind);
        if let Some(&site) = sites.choose(&mut rng) {
            if let Ok(next) = apply(&d, site) {
                d = next;
            }
        }
        if steps > 1000 + 100 * n {
            return Err(GenError::BadParameter(format!("random walk failed to reach {n} crossings")));
        }
    }
    Ok(normalize(&d))
}
