use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::invariants::{g_functional, hn, sci, InvariantError};
use crate::planar::Diagram;

use super::apply::{apply, find_sites};
use super::classify::classify_site;
use super::{MoveKind, MoveRecord, MoveSite};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LowerBounds {
    /// Lower bound on the number of triangle moves in any framed unknotting
    /// sequence (plain first moves change SCI too).
    pub sci_bound: u64,
    /// Lower bound on the length of any framed unknotting sequence.
    pub g_bound: u64,
}

pub fn lower_bounds(d: &Diagram) -> Result<LowerBounds, InvariantError> {
    Ok(LowerBounds { sci_bound: sci(d)?.unsigned_abs(), g_bound: g_functional(&hn(d)?).unsigned_abs() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveSet {
    /// Framed first moves, second and third moves.
    Framed,
    /// Plain first moves, second and third moves.
    Regular,
}

impl MoveSet {
    fn kinds(self) -> &'static [MoveKind] {
        match self {
            MoveSet::Framed => &[MoveKind::R1FCreate, MoveKind::R1FRemove, MoveKind::R2Create, MoveKind::R2Remove, MoveKind::R3],
            MoveSet::Regular => &[MoveKind::R1Create, MoveKind::R1Remove, MoveKind::R2Create, MoveKind::R2Remove, MoveKind::R3],
        }
    }
}

/// Default bound on the number of distinct diagrams visited per search.
pub const DEFAULT_STATE_BUDGET: usize = 1_000_000;

#[derive(Clone, Debug, Default)]
pub struct SearchResult {
    /// `Some(false)` only when the search completed without reaching the circle.
    pub reachable: Option<bool>,
    pub min_total_moves: Option<usize>,
    pub min_r3_moves: Option<usize>,
    /// Every unknotting sequence within the cap uses at least this many
    /// triangle moves (exact when `min_r3_moves` is known).
    pub r3_lower_bound: usize,
    /// A sequence attaining `min_r3_moves`.
    pub witness: Vec<MoveRecord>,
    /// Distinct diagrams visited over both searches.
    pub states: usize,
    pub complete: bool,
}

#[derive(Debug, Error, Clone)]
pub enum SearchError {
    #[error("diagram has {0} crossings, above the cap")]
    TooManyCrossings(usize),
    #[error("search requires a one-component diagram")]
    MultiComponent,
    #[error("state budget exhausted after {} states", .0.states)]
    BudgetExceeded(Box<SearchResult>),
}

fn growth(kind: MoveKind) -> usize {
    match kind {
        MoveKind::R1Create => 1,
        MoveKind::R1FCreate | MoveKind::R2Create => 2,
        _ => 0,
    }
}

fn successors(d: &Diagram, set: MoveSet, cap: usize) -> Vec<(MoveSite, Diagram)> {
    let mut out = Vec::new();
    for &kind in set.kinds() {
        if d.crossing_count() + growth(kind) > cap {
            continue;
        }
        for site in find_sites(d, kind) {
            if let Ok(next) = apply(d, site) {
                out.push((site, next));
            }
        }
    }
    out
}

struct Graph {
    nodes: Vec<Diagram>,
    index: HashMap<Vec<u8>, usize>,
    parent: Vec<Option<(usize, MoveSite)>>,
}

impl Graph {
    fn new(start: &Diagram) -> Self {
        let mut index = HashMap::new();
        index.insert(start.canonical_form(), 0);
        Graph { nodes: vec![start.clone()], index, parent: vec![None] }
    }

    fn witness(&self, mut at: usize) -> Vec<MoveRecord> {
        let mut path = Vec::new();
        while let Some((p, site)) = self.parent[at] {
            path.push((p, site));
            at = p;
        }
        path.reverse();
        path.into_iter()
            .map(|(p, site)| classify_site(&self.nodes[p], site).expect("site applied during search"))
            .collect()
    }
}

/// Fewest triangle moves (other moves free), by 0-1 breadth-first search.
fn min_r3(start: &Diagram, set: MoveSet, cap: usize, budget: usize) -> (Option<(usize, Vec<MoveRecord>)>, usize, usize, bool) {
    let mut g = Graph::new(start);
    let mut dist = vec![0usize];
    let mut done = vec![false];
    let mut queue = VecDeque::from([0usize]);
    let mut level = 0;
    while let Some(u) = queue.pop_front() {
        if done[u] {
            continue;
        }
        done[u] = true;
        level = dist[u];
        if g.nodes[u].is_trivial_circle() {
            let n = g.nodes.len();
            return (Some((dist[u], g.witness(u))), level, n, true);
        }
        for (site, next) in successors(&g.nodes[u].clone(), set, cap) {
            let w = usize::from(site.kind() == MoveKind::R3);
            let nd = dist[u] + w;
            let key = next.canonical_form();
            let v = match g.index.get(&key) {
                Some(&v) => {
                    if done[v] || dist[v] <= nd {
                        continue;
                    }
                    v
                }
                None => {
                    if g.nodes.len() >= budget {
                        let n = g.nodes.len();
                        return (None, level, n, false);
                    }
                    let v = g.nodes.len();
                    g.index.insert(key, v);
                    g.nodes.push(next);
                    g.parent.push(None);
                    dist.push(usize::MAX);
                    done.push(false);
                    v
                }
            };
            dist[v] = nd;
            g.parent[v] = Some((u, site));
            if w == 0 {
                queue.push_front(v);
            } else {
                queue.push_back(v);
            }
        }
    }
    let n = g.nodes.len();
    (None, level, n, true)
}

/// Fewest moves of any kind, by breadth-first search.
fn min_total(start: &Diagram, set: MoveSet, cap: usize, budget: usize) -> (Option<usize>, usize, bool) {
    let mut seen: HashMap<Vec<u8>, usize> = HashMap::new();
    seen.insert(start.canonical_form(), 0);
    let mut queue = VecDeque::from([(start.clone(), 0usize)]);
    while let Some((d, k)) = queue.pop_front() {
        if d.is_trivial_circle() {
            return (Some(k), seen.len(), true);
        }
        for (_, next) in successors(&d, set, cap) {
            let key = next.canonical_form();
            if seen.contains_key(&key) {
                continue;
            }
            if seen.len() >= budget {
                return (None, seen.len(), false);
            }
            seen.insert(key, k + 1);
            queue.push_back((next, k + 1));
        }
    }
    (None, seen.len(), true)
}

/// Exhaustive search for an unknotting sequence among diagrams with at most
/// `max_crossings` crossings, visiting at most `max_states` diagrams per pass.
pub fn bfs_unknot(d: &Diagram, max_crossings: usize, max_states: usize, set: MoveSet) -> Result<SearchResult, SearchError> {
    if d.component_count() != 1 {
        return Err(SearchError::MultiComponent);
    }
    if d.crossing_count() > max_crossings {
        return Err(SearchError::TooManyCrossings(d.crossing_count()));
    }
    let (found, level, states_a, complete_a) = min_r3(d, set, max_crossings, max_states);
    let mut r = SearchResult { r3_lower_bound: level, states: states_a, ..SearchResult::default() };
    match found {
        Some((k, witness)) => {
            r.min_r3_moves = Some(k);
            r.r3_lower_bound = k;
            r.witness = witness;
            r.reachable = Some(true);
        }
        None if complete_a => r.reachable = Some(false),
        None => {}
    }
    if r.reachable == Some(false) {
        r.complete = true;
        return Ok(r);
    }
    let (total, states_b, complete_b) = min_total(d, set, max_crossings, max_states);
    r.min_total_moves = total;
    r.states += states_b;
    r.complete = complete_a && complete_b;
    if r.complete {
        Ok(r)
    } else {
        Err(SearchError::BudgetExceeded(Box::new(r)))
    }
}
