//! Shared domain types: weighted points, ranks, query ranges and per-query
//! instrumentation.

use std::collections::HashSet;
use std::fmt;
use std::ops::AddAssign;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A planar point carrying a positive integer weight.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightedPoint {
    pub id: u64,
    pub x: f64,
    pub y: f64,
    pub w: u64,
}

impl WeightedPoint {
    pub fn new(id: u64, x: f64, y: f64, w: u64) -> Result<Self> {
        let p = WeightedPoint { id, x, y, w };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.w == 0 {
            return Err(Error::InvalidWeight(0));
        }
        if !self.x.is_finite() || !self.y.is_finite() {
            return Err(Error::NonFiniteCoordinate { id: self.id });
        }
        Ok(())
    }

    /// `⌊log₂ w⌋`. Panics on a zero weight; every builder validates weights first.
    #[inline]
    pub fn rank(&self) -> Rank {
        rank_of(self.w).expect("weight validated at construction")
    }
}

/// `⌊log₂ w⌋` of a positive weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Rank(pub u32);

impl Rank {
    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Exact `⌊log₂ w⌋` via the position of the highest set bit.
#[inline]
pub fn rank_of(w: u64) -> Result<Rank> {
    if w == 0 {
        return Err(Error::InvalidWeight(0));
    }
    Ok(Rank(63 - w.leading_zeros()))
}

/// The rank a point must reach to answer a threshold query with weight `query_weight`.
#[inline]
pub fn rank_threshold(query_weight: u64) -> Result<Rank> {
    rank_of(query_weight)
}

/// Sum of the weights stored in a structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct TotalWeight(pub u128);

impl TotalWeight {
    pub fn of(points: &[WeightedPoint]) -> Self {
        TotalWeight(points.iter().map(|p| p.w as u128).sum())
    }

    pub fn get(self) -> u128 {
        self.0
    }

    pub fn log2(self) -> f64 {
        (self.0 as f64).log2()
    }

    /// Largest rank any stored point can have.
    pub fn max_rank(self) -> u32 {
        if self.0 == 0 {
            0
        } else {
            127 - self.0.leading_zeros()
        }
    }
}

/// Anything a point can be tested against.
pub trait Region {
    fn contains(&self, p: &WeightedPoint) -> bool;
}

/// `[x1, x2] × [y, ∞)`, closed on every side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThreeSidedRange {
    pub x1: f64,
    pub x2: f64,
    pub y: f64,
}

impl ThreeSidedRange {
    pub fn new(x1: f64, x2: f64, y: f64) -> Result<Self> {
        if x1.is_nan() || x2.is_nan() || y.is_nan() {
            return Err(Error::InvalidRange("NaN bound".into()));
        }
        if x1 > x2 {
            return Err(Error::InvalidRange(format!("x1 = {x1} > x2 = {x2}")));
        }
        Ok(ThreeSidedRange { x1, x2, y })
    }

    #[inline]
    pub fn contains(&self, p: &WeightedPoint) -> bool {
        contains(self, p)
    }
}

impl Region for ThreeSidedRange {
    #[inline]
    fn contains(&self, p: &WeightedPoint) -> bool {
        contains(self, p)
    }
}

/// Membership test for a three-sided range.
#[inline]
pub fn contains(range: &ThreeSidedRange, p: &WeightedPoint) -> bool {
    range.x1 <= p.x && p.x <= range.x2 && p.y >= range.y
}

/// `[a, b] × [c, d]`, closed on every side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourSidedRange {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl FourSidedRange {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        if [a, b, c, d].iter().any(|v| v.is_nan()) {
            return Err(Error::InvalidRange("NaN bound".into()));
        }
        if a > b || c > d {
            return Err(Error::InvalidRange(format!("[{a}, {b}] x [{c}, {d}] is empty")));
        }
        Ok(FourSidedRange { a, b, c, d })
    }

    #[inline]
    pub fn contains(&self, p: &WeightedPoint) -> bool {
        self.a <= p.x && p.x <= self.b && self.c <= p.y && p.y <= self.d
    }
}

impl Region for FourSidedRange {
    #[inline]
    fn contains(&self, p: &WeightedPoint) -> bool {
        FourSidedRange::contains(self, p)
    }
}

/// Work done by a single query. Every query starts from zero.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryCounters {
    pub tree_nodes_visited: u64,
    pub catalog_entries_scanned: u64,
    pub heap_nodes_visited: u64,
    pub pq_operations: u64,
}

impl QueryCounters {
    /// Visits that the threshold cost bound speaks about.
    pub fn visits(&self) -> u64 {
        self.tree_nodes_visited + self.catalog_entries_scanned + self.heap_nodes_visited
    }
}

impl AddAssign for QueryCounters {
    fn add_assign(&mut self, rhs: Self) {
        self.tree_nodes_visited += rhs.tree_nodes_visited;
        self.catalog_entries_scanned += rhs.catalog_entries_scanned;
        self.heap_nodes_visited += rhs.heap_nodes_visited;
        self.pq_operations += rhs.pq_operations;
    }
}

/// Checks the weight, coordinate and id constraints shared by every builder.
pub fn validate_points(points: &[WeightedPoint]) -> Result<()> {
    let mut seen = HashSet::with_capacity(points.len());
    for p in points {
        p.validate()?;
        if !seen.insert(p.id) {
            return Err(Error::DuplicateId(p.id));
        }
    }
    Ok(())
}

/// Orders points by x, breaking ties by id.
pub(crate) fn sort_by_x(points: &mut [WeightedPoint]) {
    points.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.id.cmp(&b.id)));
}

/// Index of the heaviest point, ties going to the smallest id.
pub(crate) fn heaviest(points: &[WeightedPoint]) -> usize {
    let mut best = 0;
    for (i, p) in points.iter().enumerate().skip(1) {
        let b = &points[best];
        if p.w > b.w || (p.w == b.w && p.id < b.id) {
            best = i;
        }
    }
    best
}

/// Splits an x-sorted run into a prefix and suffix whose weight sums are as
/// close as possible. Returns the prefix length; ties go to the shorter prefix.
pub(crate) fn weight_split(points: &[WeightedPoint], min_side: usize) -> usize {
    let total: u128 = points.iter().map(|p| p.w as u128).sum();
    let len = points.len();
    let lo = min_side.min(len);
    let hi = len.saturating_sub(min_side).max(lo);
    let mut prefix: u128 = points[..lo].iter().map(|p| p.w as u128).sum();
    let mut best = lo;
    let mut best_diff = (2 * prefix).abs_diff(total);
    for i in lo + 1..=hi {
        prefix += points[i - 1].w as u128;
        let diff = (2 * prefix).abs_diff(total);
        if diff < best_diff {
            best = i;
            best_diff = diff;
        }
    }
    best
}

/// `depth ≤ log₂(W / w)`, evaluated exactly as `w ≤ ⌊W / 2^depth⌋`.
pub fn within_log_bound(depth: u32, w: u64, total: TotalWeight) -> bool {
    if depth >= 128 {
        return false;
    }
    (w as u128) <= total.get() >> depth
}
