use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use crate::indices::{winding_number, writhe};
use crate::invariants::{cowrithe, hn, jminus, jplus, sci, st, GroupElement, InvariantError};
use crate::planar::Diagram;

use super::apply::apply;
use super::classify::classify_site;
use super::format::MoveLine;
use super::{Direction, MoveError, MoveRecord, MoveSite, MoveTags};

/// Changes of the tracked invariants across one move or a whole sequence.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Deltas {
    pub n: i64,
    pub writhe: i64,
    pub winding: i64,
    pub sci: i64,
    pub hn: GroupElement,
    pub cowrithe: i64,
    pub st: i64,
    pub jplus: i64,
    pub jminus: i64,
}

impl Add for Deltas {
    type Output = Deltas;

    fn add(self, o: Deltas) -> Deltas {
        Deltas {
            n: self.n + o.n,
            writhe: self.writhe + o.writhe,
            winding: self.winding + o.winding,
            sci: self.sci + o.sci,
            hn: self.hn + o.hn,
            cowrithe: self.cowrithe + o.cowrithe,
            st: self.st + o.st,
            jplus: self.jplus + o.jplus,
            jminus: self.jminus + o.jminus,
        }
    }
}

fn snapshot(d: &Diagram) -> Result<Deltas, InvariantError> {
    Ok(Deltas {
        n: d.crossing_count() as i64,
        writhe: writhe(d),
        winding: winding_number(d)?,
        sci: sci(d)?,
        hn: hn(d)?,
        cowrithe: cowrithe(d)?,
        st: st(d)?,
        jplus: jplus(d)?,
        jminus: jminus(d)?,
    })
}

/// Invariant changes from `before` to `after`, measured on both diagrams.
pub fn measure_deltas(before: &Diagram, after: &Diagram) -> Result<Deltas, InvariantError> {
    let (a, b) = (snapshot(before)?, snapshot(after)?);
    Ok(Deltas {
        n: b.n - a.n,
        writhe: b.writhe - a.writhe,
        winding: b.winding - a.winding,
        sci: b.sci - a.sci,
        hn: b.hn - a.hn,
        cowrithe: b.cowrithe - a.cowrithe,
        st: b.st - a.st,
        jplus: b.jplus - a.jplus,
        jminus: b.jminus - a.jminus,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepFailure {
    pub step: usize,
    pub reason: String,
}

impl fmt::Display for StepFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {}: {}", self.step, self.reason)
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    /// Replayed steps with measured classification and deltas.
    pub steps: Vec<MoveRecord>,
    /// Diagram after the last successful step.
    pub final_diagram: Diagram,
    /// Move counts keyed by kind and classification, e.g. `R3 asc pos forward`.
    pub counts: BTreeMap<String, usize>,
    /// Changes from the initial to the final diagram.
    pub total: Deltas,
    /// Whether `total` equals the sum of the per-step deltas.
    pub consistent: bool,
    pub failure: Option<StepFailure>,
}

impl VerificationReport {
    pub fn valid(&self) -> bool {
        self.failure.is_none() && self.consistent
    }

    pub fn r3_count(&self) -> usize {
        self.steps.iter().filter(|r| matches!(r.tags, MoveTags::R3 { .. })).count()
    }
}

/// Key for [`VerificationReport::counts`].
pub(super) fn count_key(r: &MoveRecord) -> String {
    let kind = super::format::kind_token(r);
    let tags = match r.tags {
        MoveTags::R1 { side, sign } => format!("{} {}", side_name(side), if sign > 0 { "pos" } else { "neg" }),
        MoveTags::R1F { side } => side_name(side).to_string(),
        MoveTags::R2 { matched } => matched_name(matched).to_string(),
        MoveTags::R3 { ascending, positive } => {
            format!("{} {}", if ascending { "asc" } else { "desc" }, if positive { "pos" } else { "neg" })
        }
    };
    format!("{kind} {tags} {}", r.direction)
}

fn side_name(s: crate::planar::Side) -> &'static str {
    match s {
        crate::planar::Side::Left => "left",
        crate::planar::Side::Right => "right",
    }
}

/// What a step asserts about itself, beyond its site.
#[derive(Clone, Debug, Default)]
pub(super) struct Claims {
    pub direction: Option<Direction>,
    pub tags: Option<MoveTags>,
    pub matched: Option<bool>,
    pub deltas: Option<Deltas>,
}

/// Replays `seq` from `initial`. Each record's direction and tags are the
/// claims being checked; any recorded deltas are checked too. With `framed`,
/// plain first moves are rejected.
pub fn verify_sequence(initial: &Diagram, seq: &[MoveRecord], framed: bool) -> VerificationReport {
    replay(initial, seq.len(), framed, |i, _| {
        let r = &seq[i];
        let claims = Claims { direction: Some(r.direction), tags: Some(r.tags), matched: None, deltas: r.deltas.clone() };
        Ok((r.site, claims))
    })
}

/// Replays parsed move-file lines; sites are resolved against the diagram
/// reached so far.
pub fn verify_lines(initial: &Diagram, lines: &[MoveLine], framed: bool) -> VerificationReport {
    replay(initial, lines.len(), framed, |i, d| {
        let l = &lines[i];
        let site = l.resolve(d)?;
        Ok((site, Claims { direction: Some(l.direction), tags: None, matched: l.matched, deltas: None }))
    })
}

pub(super) fn replay<F>(initial: &Diagram, len: usize, framed: bool, mut next_site: F) -> VerificationReport
where
    F: FnMut(usize, &Diagram) -> Result<(MoveSite, Claims), String>,
{
    let mut d = initial.clone();
    let mut steps = Vec::new();
    let mut counts = BTreeMap::new();
    let mut sum = Deltas::default();
    let mut failure = None;
    for i in 0..len {
        match next_site(i, &d).and_then(|(site, claims)| step(&d, site, &claims, framed)) {
            Ok((next, rec)) => {
                sum = sum + rec.deltas.clone().unwrap_or_default();
                *counts.entry(count_key(&rec)).or_insert(0) += 1;
                steps.push(rec);
                d = next;
            }
            Err(reason) => {
                failure = Some(StepFailure { step: i, reason });
                break;
            }
        }
    }
    let total = measure_deltas(initial, &d).unwrap_or_default();
    let consistent = failure.is_some() || total == sum;
    VerificationReport { steps, final_diagram: d, counts, total, consistent, failure }
}

fn step(d: &Diagram, site: MoveSite, claims: &Claims, framed: bool) -> Result<(Diagram, MoveRecord), String> {
    if framed && site.is_plain_r1() {
        return Err("plain first move not allowed in a framed sequence".into());
    }
    let mut rec = classify_site(d, site).map_err(|e: MoveError| e.to_string())?;
    if let Some(dir) = claims.direction {
        if rec.direction != dir {
            return Err(format!("move is {}, recorded as {dir}", rec.direction));
        }
    }
    if let Some(tags) = claims.tags {
        if rec.tags != tags {
            return Err(format!("move classified as {:?}, recorded as {tags:?}", rec.tags));
        }
    }
    if let (Some(m), MoveTags::R2 { matched }) = (claims.matched, rec.tags) {
        if m != matched {
            return Err(format!("bigon is {}, recorded as {}", matched_name(matched), matched_name(m)));
        }
    }
    let next = apply(d, site).map_err(|e| e.to_string())?;
    let deltas = measure_deltas(d, &next).map_err(|e| e.to_string())?;
    if let Some(want) = &claims.deltas {
        if *want != deltas {
            return Err(format!("recorded deltas {want:?} differ from measured {deltas:?}"));
        }
    }
    rec.deltas = Some(deltas);
    Ok((next, rec))
}

fn matched_name(m: bool) -> &'static str {
    if m {
        "matched"
    } else {
        "unmatched"
    }
}
