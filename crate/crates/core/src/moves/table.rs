//! Randomized check of how the tracked invariants change under each kind of
//! move, against the table of forward changes.
//!
//! Every sample applies one move to a seeded random diagram, classifies it,
//! measures the invariant changes on the two diagrams and compares them with
//! the expected forward change (negated for backward moves).

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::codec::gen_random;
use crate::indices::region_indices;
use crate::invariants::GroupElement;
use crate::planar::{Diagram, Side};

use super::{apply, classify_site, find_sites, measure_deltas, Deltas, Direction, MoveKind, MoveSite, MoveTags};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TableColumn {
    R1,
    R1F,
    R2Matched,
    R2Unmatched,
    R3Ascending,
    R3Descending,
}

impl TableColumn {
    pub const ALL: [TableColumn; 6] = [
        TableColumn::R1,
        TableColumn::R1F,
        TableColumn::R2Matched,
        TableColumn::R2Unmatched,
        TableColumn::R3Ascending,
        TableColumn::R3Descending,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TableColumn::R1 => "R1",
            TableColumn::R1F => "R1F",
            TableColumn::R2Matched => "R2m",
            TableColumn::R2Unmatched => "R2u",
            TableColumn::R3Ascending => "R3asc",
            TableColumn::R3Descending => "R3desc",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TableRow {
    Writhe,
    Crossings,
    Winding,
    Sci,
    Hn,
    Cowrithe,
    St,
    JPlus,
    /// `J+ / 2 + St`.
    JPlusHalfSt,
}

impl TableRow {
    pub const ALL: [TableRow; 9] = [
        TableRow::Writhe,
        TableRow::Crossings,
        TableRow::Winding,
        TableRow::Sci,
        TableRow::Hn,
        TableRow::Cowrithe,
        TableRow::St,
        TableRow::JPlus,
        TableRow::JPlusHalfSt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TableRow::Writhe => "writhe",
            TableRow::Crossings => "n",
            TableRow::Winding => "winding",
            TableRow::Sci => "sci",
            TableRow::Hn => "hn",
            TableRow::Cowrithe => "cowrithe",
            TableRow::St => "st",
            TableRow::JPlus => "jplus",
            TableRow::JPlusHalfSt => "jplus/2+st",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CellTally {
    pub checked: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Default)]
pub struct TableReport {
    /// Successful applications per move kind.
    pub samples: BTreeMap<MoveKind, usize>,
    pub cells: BTreeMap<(TableRow, TableColumn), CellTally>,
    /// Triangle moves checked for classification coherence.
    pub r3_checked: usize,
    pub r3_incoherent: usize,
    /// The first few failures, for diagnostics.
    pub failures: Vec<String>,
    /// Failures beyond the cell tallies (illegal moves, missing samples).
    pub errors: usize,
}

const KEPT_FAILURES: usize = 20;

impl TableReport {
    pub fn passed(&self) -> bool {
        self.errors == 0 && self.r3_incoherent == 0 && self.cells.values().all(|t| t.failed == 0)
    }

    fn fail(&mut self, msg: String) {
        if self.failures.len() < KEPT_FAILURES {
            self.failures.push(msg);
        }
    }
}

impl fmt::Display for TableReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<12}", "")?;
        for c in TableColumn::ALL {
            write!(f, " {:>10}", c.name())?;
        }
        writeln!(f)?;
        for r in TableRow::ALL {
            write!(f, "{:<12}", r.name())?;
            for c in TableColumn::ALL {
                let t = self.cells.get(&(r, c)).copied().unwrap_or_default();
                let mark = if t.checked == 0 { "-".to_string() } else if t.failed == 0 { format!("ok/{}", t.checked) } else { format!("FAIL/{}", t.failed) };
                write!(f, " {mark:>10}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// What the table predicts for one cell.
enum Expect {
    Value(i64),
    Hn(fn(&GroupElement, i32) -> bool),
}

/// `ΔHN` is a single term `X_0` or `Y_0` according to the kink's sign.
fn hn_kink(g: &GroupElement, sign: i32) -> bool {
    *g == if sign > 0 { GroupElement::x(0) } else { GroupElement::y(0) }
}

fn hn_kink_pair(g: &GroupElement, _: i32) -> bool {
    *g == GroupElement::x(0) + GroupElement::y(0)
}

/// The `k` for which `g` could have the given two-term shape.
fn candidate_ks(g: &GroupElement) -> Vec<i64> {
    let mut ks: Vec<i64> = g.x_terms().chain(g.y_terms()).flat_map(|(k, _)| [k - 1, k]).collect();
    ks.sort_unstable();
    ks.dedup();
    ks
}

fn hn_matched(g: &GroupElement, _: i32) -> bool {
    candidate_ks(g).into_iter().any(|k| *g == GroupElement::x(k) + GroupElement::y(k + 1))
}

fn hn_unmatched(g: &GroupElement, _: i32) -> bool {
    candidate_ks(g).into_iter().any(|k| *g == GroupElement::x(k) + GroupElement::y(k))
}

fn hn_ascending(g: &GroupElement, _: i32) -> bool {
    candidate_ks(g).into_iter().any(|k| {
        *g == GroupElement::x(k) - GroupElement::x(k + 1) || *g == GroupElement::y(k + 1) - GroupElement::y(k)
    })
}

fn hn_descending(g: &GroupElement, _: i32) -> bool {
    candidate_ks(g).into_iter().any(|k| {
        *g == GroupElement::x(k + 1) - GroupElement::x(k) || *g == GroupElement::y(k) - GroupElement::y(k + 1)
    })
}

/// Data about the kink of a first move: sign, weight (+1 on the left of the
/// strand) and index of its crossing.
#[derive(Clone, Copy)]
struct Kink {
    sign: i32,
    weight: i64,
    index: i64,
}

fn expected(row: TableRow, col: TableColumn, kink: Option<Kink>) -> Expect {
    use TableColumn as C;
    use TableRow as R;
    let k = kink.unwrap_or(Kink { sign: 0, weight: 0, index: 0 });
    let (w, ind) = (k.weight, k.index);
    match (row, col) {
        (R::Writhe, C::R1) => Expect::Value(i64::from(k.sign)),
        (R::Writhe, _) => Expect::Value(0),
        (R::Crossings, C::R1) => Expect::Value(1),
        (R::Crossings, C::R1F | C::R2Matched | C::R2Unmatched) => Expect::Value(2),
        (R::Crossings, _) => Expect::Value(0),
        (R::Winding, C::R1) => Expect::Value(w),
        (R::Winding, C::R1F) => Expect::Value(2 * w),
        (R::Winding, _) => Expect::Value(0),
        (R::Sci, C::R1) => Expect::Value(i64::from(k.sign) * ind),
        (R::Sci, C::R3Ascending | C::R3Descending) => Expect::Value(1),
        (R::Sci, _) => Expect::Value(0),
        (R::Hn, C::R1) => Expect::Hn(hn_kink),
        (R::Hn, C::R1F) => Expect::Hn(hn_kink_pair),
        (R::Hn, C::R2Matched) => Expect::Hn(hn_matched),
        (R::Hn, C::R2Unmatched) => Expect::Hn(hn_unmatched),
        (R::Hn, C::R3Ascending) => Expect::Hn(hn_ascending),
        (R::Hn, C::R3Descending) => Expect::Hn(hn_descending),
        (R::Cowrithe | R::JPlusHalfSt, C::R2Matched | C::R3Ascending) => Expect::Value(1),
        (R::Cowrithe | R::JPlusHalfSt, C::R3Descending) => Expect::Value(-1),
        (R::Cowrithe | R::JPlusHalfSt, _) => Expect::Value(0),
        (R::St, C::R1) => Expect::Value(w * ind),
        (R::St, C::R1F) => Expect::Value(2 * w * ind),
        (R::St, C::R3Ascending) => Expect::Value(1),
        (R::St, C::R3Descending) => Expect::Value(-1),
        (R::St, _) => Expect::Value(0),
        (R::JPlus, C::R1) => Expect::Value(-2 * w * ind),
        (R::JPlus, C::R1F) => Expect::Value(-4 * w * ind),
        (R::JPlus, C::R2Matched) => Expect::Value(2),
        (R::JPlus, _) => Expect::Value(0),
    }
}

fn measured(row: TableRow, d: &Deltas) -> i64 {
    match row {
        TableRow::Writhe => d.writhe,
        TableRow::Crossings => d.n,
        TableRow::Winding => d.winding,
        TableRow::Sci => d.sci,
        TableRow::Hn => 0,
        TableRow::Cowrithe => d.cowrithe,
        TableRow::St => d.st,
        TableRow::JPlus => d.jplus,
        TableRow::JPlusHalfSt => d.jplus / 2 + d.st,
    }
}

fn negate(d: &Deltas) -> Deltas {
    Deltas {
        n: -d.n,
        writhe: -d.writhe,
        winding: -d.winding,
        sci: -d.sci,
        hn: -d.hn.clone(),
        cowrithe: -d.cowrithe,
        st: -d.st,
        jplus: -d.jplus,
        jminus: -d.jminus,
    }
}

/// Sign, weight and index of the kink crossing `c` of `d`.
fn kink_data(d: &Diagram, c: usize, side: Side) -> Kink {
    let x4 = region_indices(d).expect("valid diagram").crossing_x4(c);
    debug_assert_eq!(x4 % 4, 0, "kink crossings have integral index");
    Kink { sign: d.crossings()[c].sign(), weight: if side == Side::Left { 1 } else { -1 }, index: x4 / 4 }
}

/// The crossing a first move creates or removes, looked up in the diagram
/// where it exists. Created crossings are appended after the old ones.
fn kink_crossing(site: MoveSite, before: &Diagram) -> Option<(bool, usize)> {
    match site {
        MoveSite::R1Create { .. } | MoveSite::R1FCreate { .. } => Some((true, before.crossing_count())),
        MoveSite::R1Remove { crossing, .. } => Some((false, crossing)),
        MoveSite::R1FRemove { first, .. } => Some((false, first)),
        _ => None,
    }
}

/// Applies `site` to `d` and tallies every cell it touches.
fn check_sample(report: &mut TableReport, d: &Diagram, site: MoveSite) -> Result<(), String> {
    let record = classify_site(d, site).map_err(|e| format!("{site:?}: {e}"))?;
    let after = apply(d, site).map_err(|e| format!("{site:?}: {e}"))?;
    let raw = measure_deltas(d, &after).map_err(|e| format!("{site:?}: {e}"))?;
    let forward = record.direction == Direction::Forward;
    let delta = if forward { raw.clone() } else { negate(&raw) };

    let (col, kink) = match record.tags {
        MoveTags::R1 { side, .. } | MoveTags::R1F { side } => {
            let (created, c) = kink_crossing(site, d).expect("first moves have a kink");
            let k = kink_data(if created { &after } else { d }, c, side);
            let col = if matches!(record.tags, MoveTags::R1 { .. }) { TableColumn::R1 } else { TableColumn::R1F };
            (col, Some(k))
        }
        MoveTags::R2 { matched: true } => (TableColumn::R2Matched, None),
        MoveTags::R2 { matched: false } => (TableColumn::R2Unmatched, None),
        MoveTags::R3 { ascending, positive } => {
            report.r3_checked += 1;
            let confirmed = raw.sci == if forward { 1 } else { -1 };
            if !confirmed || forward != (ascending == positive) {
                report.r3_incoherent += 1;
                report.fail(format!("{site:?}: asc {ascending} pos {positive} forward {forward} dsci {}", raw.sci));
            }
            (if ascending { TableColumn::R3Ascending } else { TableColumn::R3Descending }, None)
        }
    };

    if delta.jplus % 2 != 0 {
        return Err(format!("{site:?}: odd change of J+ {}", delta.jplus));
    }
    for row in TableRow::ALL {
        let ok = match expected(row, col, kink) {
            Expect::Value(v) => measured(row, &delta) == v,
            Expect::Hn(pattern) => pattern(&delta.hn, kink.map_or(0, |k| k.sign)),
        };
        let tally = report.cells.entry((row, col)).or_default();
        tally.checked += 1;
        if !ok {
            tally.failed += 1;
            let got = if row == TableRow::Hn { delta.hn.to_string() } else { measured(row, &delta).to_string() };
            report.fail(format!("{} {}: {site:?} ({}) gave {got}", row.name(), col.name(), record.direction));
        }
    }
    Ok(())
}

/// Runs `samples` applications of every move kind on random diagrams of at
/// most eight crossings.
pub fn table_check(samples: usize, seed: u64) -> TableReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = TableReport::default();
    for kind in MoveKind::ALL {
        let mut got = 0;
        let mut attempts = 0;
        while got < samples && attempts < 200 * samples.max(1) {
            attempts += 1;
            let n = rng.gen_range(0..=8);
            let Ok(d) = gen_random(n, rng.gen()) else { continue };
            let Some(&site) = find_sites(&d, kind).choose(&mut rng) else { continue };
            match check_sample(&mut report, &d, site) {
                Ok(()) => got += 1,
                Err(e) => {
                    report.errors += 1;
                    report.fail(e);
                }
            }
        }
        if got < samples {
            report.errors += 1;
            report.fail(format!("{kind:?}: only {got} of {samples} samples found"));
        }
        report.samples.insert(kind, got);
    }
    report
}
