//! Unknotting sequences for the `L_n` family.

use crate::codec::{gen_l, l_family, GenError};
use crate::planar::Diagram;

use super::apply::{apply, find_sites};
use super::classify::classify_site;
use super::{MoveKind, MoveRecord, MoveSite};

/// Moves one negative kink past the next nested crossing: a second move
/// creating a bigon, a triangle move and a second move removing a bigon.
fn slide(d: &Diagram, target: &Diagram) -> Option<Vec<MoveSite>> {
    let want = target.canonical_form();
    for s1 in find_sites(d, MoveKind::R2Create) {
        let Ok(d1) = apply(d, s1) else { continue };
        for s2 in find_sites(&d1, MoveKind::R3) {
            let Ok(d2) = apply(&d1, s2) else { continue };
            for s3 in find_sites(&d2, MoveKind::R2Remove) {
                let Ok(d3) = apply(&d2, s3) else { continue };
                if d3.canonical_form() == want {
                    return Some(vec![s1, s2, s3]);
                }
            }
        }
    }
    None
}

fn records(mut d: Diagram, sites: &[MoveSite]) -> (Diagram, Vec<MoveRecord>) {
    let mut out = Vec::new();
    for &s in sites {
        out.push(classify_site(&d, s).expect("constructed move is legal"));
        d = apply(&d, s).expect("constructed move is legal");
    }
    (d, out)
}

/// A framed unknotting sequence for `L_n` with `n(n+1)/2` triangle moves.
///
/// Stage `k` slides the last negative kink of `L_k` through the `k` nested
/// crossings onto the innermost loop and then removes the bigon it forms
/// there, leaving `L_{k-1}`.
pub fn unknot_l_sequence(n: usize) -> Result<Vec<MoveRecord>, GenError> {
    let mut d = gen_l(n)?;
    let mut seq = Vec::new();
    for k in (1..=n).rev() {
        for j in 1..=k {
            let target = l_family(k, k - 1, Some(j));
            let sites = slide(&d, &target)
                .ok_or_else(|| GenError::BadParameter(format!("no slide found at stage {k}, step {j}")))?;
            let (next, recs) = records(d, &sites);
            seq.extend(recs);
            d = next;
        }
        let bigon = find_sites(&d, MoveKind::R2Remove);
        let want = l_family(k - 1, k - 1, None).canonical_form();
        let site = bigon
            .into_iter()
            .find(|&s| apply(&d, s).map_or(false, |e| e.canonical_form() == want))
            .ok_or_else(|| GenError::BadParameter(format!("no closing bigon at stage {k}")))?;
        let (next, recs) = records(d, &[site]);
        seq.extend(recs);
        d = next;
    }
    Ok(seq)
}

/// The `2n` plain first moves that remove every kink of `L_n`.
pub fn regular_l_sequence(n: usize) -> Result<Vec<MoveRecord>, GenError> {
    let mut d = gen_l(n)?;
    let mut seq = Vec::new();
    while let Some(&site) = find_sites(&d, MoveKind::R1Remove).first() {
        let (next, recs) = records(d, &[site]);
        seq.extend(recs);
        d = next;
    }
    Ok(seq)
}
