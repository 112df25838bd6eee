//! Numerical invariants of knot diagrams and of their underlying curves.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use num_rational::Rational64;
use num_traits::Zero;
use thiserror::Error;

use crate::indices::{edge_labels, modified_weights, region_indices, weights, IndexError, IndexMap};
use crate::planar::{switch_crossing, CrossingId, Diagram, EdgeId, Port};
use crate::smoothing::{linking_number, region_data_smoothed, smooth_all, smooth_at};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("operation requires a one-component diagram")]
    MultiComponent,
    #[error("crossing set of size {0} exceeds the limit of {max}", max = MAX_DERIVATIVE_SET)]
    SetTooLarge(usize),
    #[error("unknown crossing {0}")]
    UnknownCrossing(CrossingId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
}

impl From<IndexError> for InvariantError {
    fn from(e: IndexError) -> Self {
        match e {
            IndexError::MultiComponent => InvariantError::MultiComponent,
            IndexError::UnknownEdge(e) => InvariantError::UnknownEdge(e),
            IndexError::UnknownCrossing(c) => InvariantError::UnknownCrossing(c),
            IndexError::InconsistentIndexing(_) => panic!("valid diagram failed indexing: {e}"),
        }
    }
}

fn require_knot(d: &Diagram) -> Result<(), InvariantError> {
    if d.component_count() != 1 {
        return Err(InvariantError::MultiComponent);
    }
    Ok(())
}

fn indices(d: &Diagram) -> IndexMap {
    region_indices(d).unwrap_or_else(|e| panic!("valid diagram failed indexing: {e}"))
}

fn integral(r: Rational64, what: &str) -> i64 {
    assert!(r.is_integer(), "{what} evaluated to the non-integer {r}");
    r.to_integer()
}

/// Self-crossing index: the sum of `sgn(c) ind(c)`.
pub fn sci(d: &Diagram) -> Result<i64, InvariantError> {
    require_knot(d)?;
    let idx = indices(d);
    let x4: i64 = d
        .crossings()
        .iter()
        .enumerate()
        .map(|(c, x)| i64::from(x.sign()) * idx.crossing_x4(c))
        .sum();
    assert!(x4 % 4 == 0, "self-crossing index is not an integer");
    Ok(x4 / 4)
}

/// Self-crossing index from modified edge weights and squared edge indices.
pub fn sci_via_edges(d: &Diagram) -> Result<i64, InvariantError> {
    require_knot(d)?;
    let idx = indices(d);
    let w = modified_weights(d);
    // ind(e)^2 = x4^2 / 16, halved.
    let total: i64 = w.edges.iter().enumerate().map(|(e, &we)| i64::from(we) * idx.edge_x4(e).pow(2)).sum();
    Ok(integral(Rational64::new(total, 32), "edge formula"))
}

/// Self-crossing index from modified region weights and cubed region indices.
pub fn sci_via_regions(d: &Diagram) -> Result<i64, InvariantError> {
    require_knot(d)?;
    let idx = indices(d);
    let w = modified_weights(d);
    let total: i64 = w.regions_x2.iter().enumerate().map(|(r, &wr)| wr * idx.region(r).pow(3)).sum();
    Ok(integral(Rational64::new(total, 6), "region formula"))
}

/// The three Shumakovich sums for one basepoint: crossing, edge and region form.
pub fn st_formulas(d: &Diagram, basepoint: EdgeId) -> Result<[Rational64; 3], InvariantError> {
    let w = weights(d, basepoint)?;
    let idx = indices(d);
    let delta = idx.edge(basepoint);
    let tail = delta * delta - Rational64::new(1, 4);
    let by_crossings: Rational64 =
        (0..d.crossing_count()).map(|c| Rational64::from(i64::from(w.crossings[c])) * idx.crossing(c)).sum();
    let by_edges: Rational64 = (0..d.edges().len())
        .map(|e| Rational64::from(i64::from(w.edges[e])) * idx.edge(e) * idx.edge(e))
        .sum::<Rational64>()
        / 2;
    let by_regions: Rational64 = (0..d.faces().len())
        .map(|r| w.region(r) * Rational64::from(idx.region(r).pow(3)))
        .sum::<Rational64>()
        / 3;
    Ok([by_crossings + tail, by_edges + tail, by_regions + tail])
}

/// Arnold's strangeness from a single basepoint; the three formulas must agree.
pub fn st_at(d: &Diagram, basepoint: EdgeId) -> Result<i64, InvariantError> {
    require_knot(d)?;
    let [a, b, c] = st_formulas(d, basepoint)?;
    assert!(a == b && b == c, "strangeness formulas disagree: {a}, {b}, {c}");
    Ok(integral(a, "strangeness"))
}

/// Arnold's strangeness. Debug builds evaluate every basepoint and check
/// that they agree.
pub fn st(d: &Diagram) -> Result<i64, InvariantError> {
    st_checked(d, cfg!(debug_assertions))
}

/// Strangeness, optionally cross-checked over all basepoints.
pub fn st_checked(d: &Diagram, all_basepoints: bool) -> Result<i64, InvariantError> {
    let value = st_at(d, 0)?;
    if all_basepoints {
        for e in 1..d.edges().len() {
            let other = st_at(d, e)?;
            assert_eq!(value, other, "strangeness depends on the basepoint ({e})");
        }
    }
    Ok(value)
}

/// `sum of chi(r) ind(r)^2` over the regions of the Seifert smoothing.
fn viro_sum(d: &Diagram) -> i64 {
    region_data_smoothed(&smooth_all(d)).iter().map(|&(i, chi)| chi * i * i).sum()
}

pub fn jplus(d: &Diagram) -> Result<i64, InvariantError> {
    require_knot(d)?;
    Ok(1 + d.crossing_count() as i64 - viro_sum(d))
}

pub fn jminus(d: &Diagram) -> Result<i64, InvariantError> {
    require_knot(d)?;
    Ok(1 - viro_sum(d))
}

/// An element of the free abelian group on `X_k`, `Y_k` (`k` an integer).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupElement {
    x: BTreeMap<i64, i64>,
    y: BTreeMap<i64, i64>,
}

impl GroupElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn x(k: i64) -> Self {
        let mut g = Self::zero();
        g.add_x(k, 1);
        g
    }

    pub fn y(k: i64) -> Self {
        let mut g = Self::zero();
        g.add_y(k, 1);
        g
    }

    fn bump(map: &mut BTreeMap<i64, i64>, k: i64, c: i64) {
        let v = map.entry(k).or_insert(0);
        *v += c;
        if *v == 0 {
            map.remove(&k);
        }
    }

    pub fn add_x(&mut self, k: i64, c: i64) {
        Self::bump(&mut self.x, k, c);
    }

    pub fn add_y(&mut self, k: i64, c: i64) {
        Self::bump(&mut self.y, k, c);
    }

    pub fn x_coeff(&self, k: i64) -> i64 {
        self.x.get(&k).copied().unwrap_or(0)
    }

    pub fn y_coeff(&self, k: i64) -> i64 {
        self.y.get(&k).copied().unwrap_or(0)
    }

    /// Nonzero `X` terms as `(k, coefficient)`, ascending in `k`.
    pub fn x_terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.x.iter().map(|(&k, &c)| (k, c))
    }

    pub fn y_terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.y.iter().map(|(&k, &c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_empty() && self.y.is_empty()
    }
}

impl AddAssign<&GroupElement> for GroupElement {
    fn add_assign(&mut self, rhs: &GroupElement) {
        for (k, c) in rhs.x_terms() {
            self.add_x(k, c);
        }
        for (k, c) in rhs.y_terms() {
            self.add_y(k, c);
        }
    }
}

impl Add for GroupElement {
    type Output = GroupElement;
    fn add(mut self, rhs: GroupElement) -> GroupElement {
        self += &rhs;
        self
    }
}

impl Neg for GroupElement {
    type Output = GroupElement;
    fn neg(self) -> GroupElement {
        GroupElement {
            x: self.x.into_iter().map(|(k, c)| (k, -c)).collect(),
            y: self.y.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl Sub for GroupElement {
    type Output = GroupElement;
    fn sub(self, rhs: GroupElement) -> GroupElement {
        self + (-rhs)
    }
}

impl Zero for GroupElement {
    fn zero() -> Self {
        GroupElement::default()
    }

    fn is_zero(&self) -> bool {
        GroupElement::is_zero(self)
    }
}

impl std::iter::Sum for GroupElement {
    fn sum<I: Iterator<Item = GroupElement>>(iter: I) -> Self {
        iter.fold(GroupElement::zero(), |a, b| a + b)
    }
}

/// Canonical rendering: `X` terms by ascending index, then `Y` terms,
/// e.g. `2X_-1 + X_3 - Y_0`; the zero element prints as `0`.
impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms = self.x_terms().map(|(k, c)| ('X', k, c)).chain(self.y_terms().map(|(k, c)| ('Y', k, c)));
        for (i, (name, k, c)) in terms.enumerate() {
            let magnitude = c.abs();
            match (i, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if magnitude != 1 {
                write!(f, "{magnitude}")?;
            }
            write!(f, "{name}_{k}")?;
        }
        Ok(())
    }
}

/// Hass–Nowik invariant: `X_lk` for each positive crossing and `Y_lk` for
/// each negative one, `lk` being the linking number after smoothing it.
pub fn hn(d: &Diagram) -> Result<GroupElement, InvariantError> {
    require_knot(d)?;
    let mut g = GroupElement::zero();
    for c in 0..d.crossing_count() {
        let lk = linking_number(&smooth_at(d, c).expect("one-component diagram"));
        if d.crossings()[c].sign() > 0 {
            g.add_x(lk, 1);
        } else {
            g.add_y(lk, 1);
        }
    }
    Ok(g)
}

/// The homomorphism `X_n -> -n`, `Y_n -> n` applied to the Hass–Nowik invariant.
pub fn cowrithe(d: &Diagram) -> Result<i64, InvariantError> {
    let g = hn(d)?;
    Ok(g.x_terms().map(|(k, c)| -k * c).sum::<i64>() + g.y_terms().map(|(k, c)| k * c).sum::<i64>())
}

/// The homomorphism `X_k -> 1 + |k|`, `Y_k -> -1 - |k|`.
pub fn g_functional(x: &GroupElement) -> i64 {
    x.x_terms().map(|(k, c)| (1 + k.abs()) * c).sum::<i64>() - x.y_terms().map(|(k, c)| (1 + k.abs()) * c).sum::<i64>()
}

/// Largest crossing set accepted by [`vassiliev_derivative`].
pub const MAX_DERIVATIVE_SET: usize = 12;

/// `sum over X subset of S of (-1)^|X| I(D_X)`, where `D_X` has the
/// crossings in `X` switched.
pub fn vassiliev_derivative<T, F>(invariant: F, d: &Diagram, set: &[CrossingId]) -> Result<T, InvariantError>
where
    T: Add<Output = T> + Sub<Output = T> + Zero,
    F: Fn(&Diagram) -> T,
{
    if set.len() > MAX_DERIVATIVE_SET {
        return Err(InvariantError::SetTooLarge(set.len()));
    }
    if let Some(&c) = set.iter().find(|&&c| c >= d.crossing_count()) {
        return Err(InvariantError::UnknownCrossing(c));
    }
    let mut total = T::zero();
    for mask in 0u32..(1 << set.len()) {
        let mut switched = d.clone();
        for (i, &c) in set.iter().enumerate() {
            if mask & (1 << i) != 0 {
                switched = switch_crossing(&switched, c).expect("crossing exists");
            }
        }
        let value = invariant(&switched);
        total = if mask.count_ones() % 2 == 0 { total + value } else { total - value };
    }
    Ok(total)
}

/// A basepoint edge from which every crossing is first met from below.
pub fn lowest_point(d: &Diagram) -> Result<Option<EdgeId>, InvariantError> {
    require_knot(d)?;
    if d.is_trivial_circle() {
        return Ok(Some(0));
    }
    for start in 0..d.edges().len() {
        let labels = edge_labels(d, start)?;
        let ascending = (0..d.crossing_count()).all(|c| {
            let x = d.crossings()[c];
            labels[d.port_edge(Port::new(c, 0))] < labels[d.port_edge(Port::new(c, x.over_in()))]
        });
        if ascending {
            return Ok(Some(start));
        }
    }
    Ok(None)
}

pub fn is_ascending(d: &Diagram) -> Result<bool, InvariantError> {
    Ok(lowest_point(d)?.is_some())
}

/// Comparison of the self-crossing index with `St - delta^2 + 1/4` at a lowest point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SciStReport {
    pub lowest_point: Option<EdgeId>,
    pub sci: i64,
    pub st: i64,
    /// Index of the lowest-point edge.
    pub delta: Option<Rational64>,
    /// `St - delta^2 + 1/4`, when the diagram is ascending.
    pub predicted: Option<Rational64>,
    pub holds: bool,
}

pub fn sci_st_check(d: &Diagram) -> Result<SciStReport, InvariantError> {
    let lowest = lowest_point(d)?;
    let sci_value = sci(d)?;
    let st_value = st(d)?;
    let delta = lowest.map(|e| indices(d).edge(e));
    let predicted = delta.map(|dl| Rational64::from(st_value) - dl * dl + Rational64::new(1, 4));
    let holds = predicted.map_or(false, |p| p == Rational64::from(sci_value));
    Ok(SciStReport { lowest_point: lowest, sci: sci_value, st: st_value, delta, predicted, holds })
}
