//! One line per acceptance criterion; exits non-zero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use knotdex::codec::{gen_arnold_base, gen_d, gen_l, gen_random, gen_torus2};
use knotdex::indices::region_indices;
use knotdex::invariants::{
    g_functional, hn, jminus, jplus, sci, sci_via_edges, sci_via_regions, st, st_formulas, vassiliev_derivative,
    GroupElement,
};
use knotdex::moves::{
    apply, bfs_unknot, find_sites, regular_l_sequence, MoveKind, table_check, unknot_l_sequence, verify_sequence, MoveSet, TableReport,
};
use knotdex::planar::{connected_sum, switch_crossing};
use knotdex::Diagram;
use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_diagrams(count: u64, max: usize, salt: u64) -> Vec<Diagram> {
    (0..count).map(|i| gen_random(1 + (i as usize % max), salt * 10_000 + i).unwrap()).collect()
}

fn outer_pair(a: &Diagram, b: &Diagram) -> Option<(usize, usize)> {
    let sa = &a.faces()[a.outer_region()].sides;
    let sb = &b.faces()[b.outer_region()].sides;
    sa.iter().find_map(|x| sb.iter().find(|y| y.side == x.side).map(|y| (x.edge, y.edge)))
}

/// A framed-equivalent unknot: the circle pushed through seeded framed
/// creations and triangle moves, staying at or below `max` crossings.
fn framed_scramble(seed: u64, steps: usize, max: usize) -> Diagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut d = Diagram::circle();
    for _ in 0..steps {
        let mut sites = find_sites(&d, MoveKind::R3);
        if d.crossing_count() + 2 <= max {
            sites.extend(find_sites(&d, MoveKind::R1FCreate));
            sites.extend(find_sites(&d, MoveKind::R2Create));
        }
        let Some(&s) = sites.choose(&mut rng) else { break };
        d = apply(&d, s).unwrap();
    }
    d
}

fn criterion_1() -> Outcome {
    for n in 1..=12i64 {
        let d = sci(&gen_d(n as usize).unwrap()).unwrap();
        ensure(d == (3 * n * n - n + 2) / 2, || format!("SCI(D_{n}) = {d}"))?;
        let l = gen_l(n as usize).unwrap();
        ensure(l.crossing_count() == 2 * n as usize, || format!("L_{n} has {} crossings", l.crossing_count()))?;
        let s = sci(&l).unwrap();
        ensure(s == n * (n + 1) / 2, || format!("SCI(L_{n}) = {s}"))?;
    }
    Ok("D_n and L_n closed forms for n = 1..12".into())
}

fn torus_expected(p: i64, k: i64) -> GroupElement {
    let mut g = GroupElement::zero();
    g.add_x((p - 2 * k - 1) / 2, p - k);
    g.add_y((p - 2 * k + 1) / 2, k);
    g
}

fn criterion_2() -> Outcome {
    for n in 1..=8i64 {
        let h = hn(&gen_d(n as usize).unwrap()).unwrap();
        let mut want = GroupElement::zero();
        want.add_x(n, n);
        want.add_x(-n, n);
        want.add_x(-1, 2 * n - 1);
        want.add_y(0, 4 * n - 1);
        ensure(h == want, || format!("HN(D_{n}) = {h}"))?;
        let g = g_functional(&h);
        ensure(g == 2 * n * n + 2 * n - 1, || format!("g(HN(D_{n})) = {g}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut subsets = 0;
    for p in [3usize, 5, 7] {
        let d = gen_torus2(p).unwrap();
        let masks: Vec<u32> = if p <= 5 {
            (0..1u32 << p).collect()
        } else {
            (0..50).map(|_| sample(&mut rng, 1 << p, 1).index(0) as u32).collect()
        };
        for mask in masks {
            let mut s = d.clone();
            for c in (0..p).filter(|c| mask & (1 << c) != 0) {
                s = switch_crossing(&s, c).unwrap();
            }
            let h = hn(&s).unwrap();
            let want = torus_expected(p as i64, i64::from(mask.count_ones()));
            ensure(h == want, || format!("T(2,{p}) switched {mask:b}: {h}, expected {want}"))?;
            subsets += 1;
        }
    }
    Ok(format!("HN(D_n), g for n = 1..8; {subsets} torus switch patterns"))
}

fn criterion_3() -> Outcome {
    let k0 = gen_arnold_base(0).unwrap();
    let v = (jplus(&k0).unwrap(), jminus(&k0).unwrap(), st(&k0).unwrap());
    ensure(v == (0, -1, 0), || format!("K_0: (J+, J-, St) = {v:?}"))?;
    for i in 0..=4i64 {
        let k = gen_arnold_base(i as usize + 1).unwrap();
        let v = (jplus(&k).unwrap(), jminus(&k).unwrap(), st(&k).unwrap());
        ensure(v == (-2 * i, -3 * i, i), || format!("K_{}: (J+, J-, St) = {v:?}", i + 1))?;
    }
    Ok("K_0 and K_1..K_5".into())
}

fn criterion_4() -> Outcome {
    for (i, d) in random_diagrams(200, 10, 4).iter().enumerate() {
        let idx = region_indices(d).unwrap();
        let x4: i64 = (0..d.crossing_count()).map(|c| i64::from(d.crossings()[c].sign()) * idx.crossing_x4(c)).sum();
        ensure(x4 % 4 == 0, || format!("diagram {i}: 4 SCI = {x4}"))?;
        let s = sci(d).unwrap();
        let (e, r) = (sci_via_edges(d).unwrap(), sci_via_regions(d).unwrap());
        ensure(s == e && e == r, || format!("diagram {i}: SCI formulas {s}, {e}, {r}"))?;
        let base = st_formulas(d, 0).unwrap()[0];
        for bp in 0..d.edge_count() {
            let f = st_formulas(d, bp).unwrap();
            ensure(f.iter().all(|&x| x == base), || format!("diagram {i}, basepoint {bp}: St formulas {f:?}"))?;
        }
        ensure(base.is_integer(), || format!("diagram {i}: St = {base}"))?;
        let (jp, jm) = (jplus(d).unwrap(), jminus(d).unwrap());
        ensure(jp - jm == d.crossing_count() as i64, || format!("diagram {i}: J+ - J- = {}", jp - jm))?;
    }
    Ok("200 random diagrams, every basepoint".into())
}

fn criteria_5_6() -> (Outcome, Outcome) {
    let r: TableReport = table_check(500, 7);
    let five = if r.passed() {
        let min = r.samples.values().min().copied().unwrap_or(0);
        if min >= 500 {
            let cells: usize = r.cells.values().map(|c| c.checked).sum();
            Ok(format!("{} cells, {cells} checks, >= {min} samples per move kind", r.cells.len()))
        } else {
            Err(format!("only {min} samples for some move kind"))
        }
    } else {
        Err(format!("{r}"))
    };
    let six = if r.r3_checked > 0 && r.r3_incoherent == 0 && r.errors == 0 {
        Ok(format!("{} triangle sites coherent", r.r3_checked))
    } else {
        Err(format!("{} of {} triangle sites incoherent", r.r3_incoherent, r.r3_checked))
    };
    (five, six)
}

fn criterion_7() -> Outcome {
    let sci_of = |x: &Diagram| sci(x).unwrap();
    let mut nonzero = 0;
    for (i, d) in random_diagrams(50, 8, 7).iter().enumerate() {
        for a in 0..d.crossing_count() {
            if vassiliev_derivative(sci_of, d, &[a]).unwrap() != 0 {
                nonzero += 1;
            }
            for b in a + 1..d.crossing_count() {
                let v = vassiliev_derivative(sci_of, d, &[a, b]).unwrap();
                ensure(v == 0, || format!("diagram {i}: second derivative at {{{a}, {b}}} = {v}"))?;
            }
        }
    }
    ensure(nonzero > 0, || "every first derivative vanished".into())?;
    for p in [3usize, 5] {
        let all: Vec<usize> = (0..p).collect();
        let g = vassiliev_derivative(|x: &Diagram| hn(x).unwrap(), &gen_torus2(p).unwrap(), &all).unwrap();
        let c = g.x_coeff((p as i64 - 1) / 2);
        ensure(c == p as i64, || format!("T(2,{p}) full derivative coefficient {c}"))?;
    }
    Ok(format!("second derivatives vanish, {nonzero} nonzero first derivatives, torus coefficients p"))
}

fn criterion_8() -> Outcome {
    let suite = random_diagrams(400, 7, 8);
    let mut pairs = 0;
    for w in suite.chunks(2) {
        if pairs == 100 {
            break;
        }
        let (a, b) = (&w[0], &w[1]);
        let Some((ea, eb)) = outer_pair(a, b) else { continue };
        let s = connected_sum(a, b, ea, eb).unwrap();
        ensure(sci(&s).unwrap() == sci(a).unwrap() + sci(b).unwrap(), || format!("SCI not additive on pair {pairs}"))?;
        ensure(hn(&s).unwrap() == hn(a).unwrap() + hn(b).unwrap(), || format!("HN not additive on pair {pairs}"))?;
        pairs += 1;
    }
    ensure(pairs == 100, || format!("only {pairs} pairs had compatible outer edges"))?;
    Ok("100 connected sums".into())
}

fn criterion_9() -> Outcome {
    for n in 1..=6 {
        let seq = unknot_l_sequence(n).unwrap();
        let rep = verify_sequence(&gen_l(n).unwrap(), &seq, true);
        ensure(rep.valid() && rep.final_diagram.is_trivial_circle(), || format!("framed L_{n}: {:?}", rep.failure))?;
        ensure(rep.r3_count() == n * (n + 1) / 2, || format!("framed L_{n}: {} triangle moves", rep.r3_count()))?;
    }
    for n in 1..=10 {
        let seq = regular_l_sequence(n).unwrap();
        let rep = verify_sequence(&gen_l(n).unwrap(), &seq, false);
        ensure(seq.len() == 2 * n, || format!("regular L_{n}: {} moves", seq.len()))?;
        ensure(rep.valid() && rep.final_diagram.is_trivial_circle(), || format!("regular L_{n}: {:?}", rep.failure))?;
    }
    let l1 = bfs_unknot(&gen_l(1).unwrap(), 6, 1_000_000, MoveSet::Framed).map_err(|e| e.to_string())?;
    ensure(l1.min_r3_moves == Some(1), || format!("L_1 minimum triangle moves {:?}", l1.min_r3_moves))?;

    let mut targets = vec![gen_l(2).unwrap(), gen_d(1).unwrap()];
    targets.extend((0..20).map(|seed| framed_scramble(seed, 6, 4)));
    let mut completed = 1;
    for (i, d) in targets.iter().enumerate() {
        let Ok(r) = bfs_unknot(d, 6, 1_000_000, MoveSet::Framed) else { continue };
        let Some(m) = r.min_r3_moves else {
            return Err(format!("target {i}: framed unknot not reached ({:?})", r.reachable));
        };
        let bound = sci(d).unwrap().unsigned_abs() as usize;
        ensure(m >= bound, || format!("target {i}: {m} triangle moves < |SCI| = {bound}"))?;
        completed += 1;
    }
    Ok(format!("framed L_1..L_6, regular L_1..L_10, {completed} completed searches respect |SCI|"))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let (five, six) = criteria_5_6();
    let mut results: Vec<(u32, Outcome)> = vec![
        (1, criterion_1()),
        (2, criterion_2()),
        (3, criterion_3()),
        (4, criterion_4()),
        (5, five),
        (6, six),
        (7, criterion_7()),
        (8, criterion_8()),
        (9, criterion_9()),
    ];
    let ten = if results.iter().any(|(k, r)| (*k == 1 || *k == 9) && r.is_err()) {
        Err("criterion 1 or 9 failed".into())
    } else {
        Ok("asymptotic gap accepted through exact bound attainment (criteria 1 and 9)".into())
    };
    results.push((10, ten));

    let mut failed = 0;
    for (k, r) in &results {
        match r {
            Ok(msg) => println!("criterion {k}: PASS ({msg})"),
            Err(msg) => {
                failed += 1;
                println!("criterion {k}: FAIL ({msg})");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed in {:.1}s", results.len() - failed, start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
