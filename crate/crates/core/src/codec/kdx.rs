//! The KDX text format.
//!
//! ```text
//! kdx 1
//! # edge labels counterclockwise from the incoming under-end
//! X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)
//! dir 4 -
//! outer=(1,R)
//! ```
//!
//! Records are separated by whitespace, newlines or `/`. `dir e +` says edge
//! `e` points into the crossing where it first occurs (records in file order,
//! then slots in order); `dir e -` says it points out of it. Directions that
//! are not given are inferred from the slot roles and, failing that, from
//! label succession. `outer=(e,L|R)` names the face on that side of edge `e`
//! and defaults to the right of edge 1. A crossing-free diagram is written
//! `circle`; its `outer` side distinguishes the two rotations.

use std::fmt::Write as _;

use thiserror::Error;

use crate::planar::{Check, Diagram, DiagramError, FaceSide, RawCrossing, RawDiagram, Rotation, Side, ValidationReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("inconsistent labels: {0}")]
    InconsistentLabels(String),
    #[error("diagram is not realizable in the plane:\n{0}")]
    NotRealizable(ValidationReport),
    #[error("missing outer face: {0}")]
    MissingOuterFace(String),
}

#[derive(Default)]
struct Document {
    header: bool,
    circle: bool,
    crossings: Vec<[usize; 4]>,
    dirs: Vec<(usize, bool, usize)>,
    outer: Option<(usize, Side)>,
}

fn syntax(line: usize, reason: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, reason: reason.into() }
}

fn parse_label(s: &str, line: usize) -> Result<usize, ParseError> {
    match s.trim().parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(syntax(line, format!("bad edge label {:?}", s.trim()))),
    }
}

fn scan(text: &str) -> Result<Document, ParseError> {
    let mut doc = Document::default();
    for (i, raw_line) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw_line.split('#').next().unwrap_or("");
        for chunk in content.split('/') {
            let mut rest = chunk.trim_start();
            while !rest.is_empty() {
                rest = scan_record(&mut doc, rest, line)?.trim_start();
            }
        }
    }
    if !doc.header {
        return Err(syntax(1, "missing `kdx 1` header"));
    }
    Ok(doc)
}

/// Consumes one record from the front of `s`, returning what is left.
fn scan_record<'a>(doc: &mut Document, s: &'a str, line: usize) -> Result<&'a str, ParseError> {
    if !doc.header {
        let mut words = s.split_whitespace();
        let (Some("kdx"), Some(v)) = (words.next(), words.next()) else {
            return Err(syntax(line, "expected `kdx 1` header"));
        };
        if v != "1" {
            return Err(syntax(line, format!("unsupported version {v}")));
        }
        doc.header = true;
        let after = s.trim_start().strip_prefix("kdx").unwrap().trim_start();
        return Ok(&after[v.len()..]);
    }
    if let Some(body) = s.strip_prefix("X(") {
        let close = body.find(')').ok_or_else(|| syntax(line, "unterminated crossing record"))?;
        let fields: Vec<&str> = body[..close].split(',').collect();
        if fields.len() != 4 {
            return Err(syntax(line, "crossing record needs four labels"));
        }
        let mut labels = [0; 4];
        for (slot, f) in fields.iter().enumerate() {
            labels[slot] = parse_label(f, line)?;
        }
        doc.crossings.push(labels);
        return Ok(&body[close + 1..]);
    }
    if let Some(body) = s.strip_prefix("outer=(") {
        let close = body.find(')').ok_or_else(|| syntax(line, "unterminated outer record"))?;
        let (e, side) = body[..close].split_once(',').ok_or_else(|| syntax(line, "outer record needs (edge,L|R)"))?;
        let side = match side.trim() {
            "L" => Side::Left,
            "R" => Side::Right,
            other => return Err(syntax(line, format!("bad side {other:?}"))),
        };
        if doc.outer.replace((parse_label(e, line)?, side)).is_some() {
            return Err(syntax(line, "duplicate outer record"));
        }
        return Ok(&body[close + 1..]);
    }
    let word_end = s.find(char::is_whitespace).unwrap_or(s.len());
    match &s[..word_end] {
        "circle" => {
            doc.circle = true;
            Ok(&s[word_end..])
        }
        "dir" => {
            let mut words = s[word_end..].split_whitespace();
            let (Some(e), Some(sign)) = (words.next(), words.next()) else {
                return Err(syntax(line, "dir record needs an edge and a sign"));
            };
            let into_first = match sign {
                "+" => true,
                "-" => false,
                other => return Err(syntax(line, format!("bad direction {other:?}"))),
            };
            doc.dirs.push((parse_label(e, line)?, into_first, line));
            let consumed = s.find(sign).unwrap() + sign.len();
            Ok(&s[consumed..])
        }
        other => Err(syntax(line, format!("unknown record {other:?}"))),
    }
}

/// Reads a KDX document.
pub fn parse(text: &str) -> Result<Diagram, ParseError> {
    let doc = scan(text)?;
    if doc.circle {
        if !doc.crossings.is_empty() || !doc.dirs.is_empty() {
            return Err(ParseError::InconsistentLabels("a circle record admits no other records".into()));
        }
        return match doc.outer.unwrap_or((1, Side::Right)) {
            (1, Side::Right) => Ok(Diagram::circle_with(Rotation::Counterclockwise)),
            (1, Side::Left) => Ok(Diagram::circle_with(Rotation::Clockwise)),
            (e, _) => Err(ParseError::MissingOuterFace(format!("the circle has only edge 1, not {e}"))),
        };
    }
    if doc.crossings.is_empty() {
        return Err(syntax(1, "no crossing records"));
    }
    let raw = resolve(&doc)?;
    Diagram::from_raw(&raw).map_err(|err| match err {
        DiagramError::Invalid(report) => {
            let labels_wrong = report
                .failures()
                .iter()
                .any(|c| matches!(c, Check::SlotOccupancy | Check::StrandContinuity));
            if labels_wrong {
                ParseError::InconsistentLabels(report.to_string())
            } else {
                ParseError::NotRealizable(report)
            }
        }
        other => ParseError::InconsistentLabels(other.to_string()),
    })
}

/// Works out the over-strand direction at every crossing.
fn resolve(doc: &Document) -> Result<RawDiagram, ParseError> {
    let n = doc.crossings.len();
    let m = 2 * n;
    let mut occurrences: Vec<Vec<(usize, usize)>> = vec![Vec::new(); m + 1];
    for (c, labels) in doc.crossings.iter().enumerate() {
        for (slot, &e) in labels.iter().enumerate() {
            if e > m {
                return Err(ParseError::InconsistentLabels(format!(
                    "label {e} out of range 1..={m} for {n} crossings"
                )));
            }
            occurrences[e].push((c, slot));
        }
    }
    if let Some(e) = (1..=m).find(|&e| occurrences[e].len() != 2) {
        return Err(ParseError::InconsistentLabels(format!(
            "label {e} occurs {} times, expected 2",
            occurrences[e].len()
        )));
    }

    // head[e] = index (0 or 1) of the occurrence where edge e enters a crossing.
    let mut head: Vec<Option<usize>> = vec![None; m + 1];
    let set = |head: &mut Vec<Option<usize>>, e: usize, h: usize| -> Result<bool, ParseError> {
        match head[e] {
            Some(old) if old != h => Err(ParseError::InconsistentLabels(format!("edge {e} has conflicting directions"))),
            Some(_) => Ok(false),
            None => {
                head[e] = Some(h);
                Ok(true)
            }
        }
    };
    for &(e, into_first, line) in &doc.dirs {
        if e > m {
            return Err(syntax(line, format!("dir names unknown edge {e}")));
        }
        set(&mut head, e, if into_first { 0 } else { 1 })?;
    }
    for e in 1..=m {
        for (k, &(_, slot)) in occurrences[e].iter().enumerate() {
            match slot {
                0 => {
                    set(&mut head, e, k)?;
                }
                2 => {
                    set(&mut head, e, 1 - k)?;
                }
                _ => {}
            }
        }
    }

    let occurrence_index = |e: usize, c: usize, slot: usize| {
        occurrences[e].iter().position(|&o| o == (c, slot)).unwrap()
    };
    let mut over_in: Vec<Option<u8>> = vec![None; n];
    loop {
        let mut progress = false;
        for c in 0..n {
            if over_in[c].is_some() {
                continue;
            }
            let [_, b, _, d] = doc.crossings[c];
            let b_in = head[b].map(|h| h == occurrence_index(b, c, 1));
            let d_in = head[d].map(|h| h == occurrence_index(d, c, 3));
            let slot = match (b_in, d_in) {
                (Some(true), Some(true)) | (Some(false), Some(false)) => {
                    return Err(ParseError::InconsistentLabels(format!(
                        "over-strand of crossing {} enters or leaves at both ends",
                        c + 1
                    )))
                }
                (Some(true), _) | (_, Some(false)) => 1,
                (Some(false), _) | (_, Some(true)) => 3,
                (None, None) => continue,
            };
            over_in[c] = Some(slot);
            let (b_head, d_head) = if slot == 1 { (true, false) } else { (false, true) };
            let bi = occurrence_index(b, c, 1);
            let di = occurrence_index(d, c, 3);
            set(&mut head, b, if b_head { bi } else { 1 - bi })?;
            set(&mut head, d, if d_head { di } else { 1 - di })?;
            progress = true;
        }
        if progress {
            continue;
        }
        // Fall back on label succession for the first undetermined crossing.
        let Some(c) = (0..n).find(|&c| over_in[c].is_none()) else { break };
        let [_, b, _, d] = doc.crossings[c];
        let (bi, di) = (occurrence_index(b, c, 1), occurrence_index(d, c, 3));
        if d == b + 1 {
            set(&mut head, b, bi)?;
        } else if b == d + 1 {
            set(&mut head, d, di)?;
        } else {
            return Err(ParseError::InconsistentLabels(format!(
                "cannot orient the over-strand of crossing {}; add a dir record",
                c + 1
            )));
        }
    }

    let (outer_edge, outer_side) = doc.outer.unwrap_or((1, Side::Right));
    if outer_edge > m {
        return Err(ParseError::MissingOuterFace(format!("outer face names unknown edge {outer_edge}")));
    }
    let crossings = doc
        .crossings
        .iter()
        .zip(&over_in)
        .map(|(labels, o)| RawCrossing { edges: labels.map(|e| e - 1), over_in: o.unwrap() })
        .collect();
    Ok(RawDiagram { crossings, outer: FaceSide { edge: outer_edge - 1, side: outer_side } })
}

/// Writes a diagram as KDX. Edge labels run consecutively along each
/// component and records are sorted, so equal inputs give equal bytes.
pub fn serialize(d: &Diagram) -> String {
    let mut out = String::from("kdx 1\n");
    if d.is_trivial_circle() {
        out.push_str("circle\n");
        let side = match d.circle_rotation() {
            Some(Rotation::Clockwise) => 'L',
            _ => 'R',
        };
        let _ = writeln!(out, "outer=(1,{side})");
        return out;
    }

    let mut label = vec![0usize; d.edges().len()];
    let mut next = 1;
    for start in 0..d.edges().len() {
        if label[start] == 0 {
            for e in d.component_edges(start) {
                label[e] = next;
                next += 1;
            }
        }
    }

    let raw = d.to_raw();
    let mut records: Vec<([usize; 4], u8)> =
        raw.crossings.iter().map(|rc| (rc.edges.map(|e| label[e]), rc.over_in)).collect();
    records.sort_unstable();

    let m = label.len();
    let mut first_is_head: Vec<Option<bool>> = vec![None; m + 1];
    for (labels, over_in) in &records {
        for (slot, &e) in labels.iter().enumerate() {
            if first_is_head[e].is_none() {
                first_is_head[e] = Some(slot == 0 || slot == *over_in as usize);
            }
        }
    }

    for (labels, _) in &records {
        let _ = writeln!(out, "X({},{},{},{})", labels[0], labels[1], labels[2], labels[3]);
    }
    for (e, h) in first_is_head.iter().enumerate().skip(1) {
        let _ = writeln!(out, "dir {e} {}", if h == &Some(true) { '+' } else { '-' });
    }

    let outer = &d.faces()[d.outer_region()];
    let best = outer
        .sides
        .iter()
        .map(|s| (label[s.edge], s.side == Side::Left))
        .min()
        .expect("outer face has a boundary");
    let _ = writeln!(out, "outer=({},{})", best.0, if best.1 { 'L' } else { 'R' });
    out
}
