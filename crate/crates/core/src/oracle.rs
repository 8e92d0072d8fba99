//! Brute-force referees and the per-rank suffix baseline.
//!
//! The scans here define query semantics; the indexes elsewhere in the crate
//! are checked against them. [`SuffixPstBaseline`] is the straightforward
//! competitor: one priority search tree per rank `i` holding every point of
//! rank at least `i`. It answers queries correctly, but its size is
//! `Σ_p (rank(p) + 1)`, linear only when high ranks are exponentially rare.

use crate::error::{Error, Result};
use crate::types::{
    rank_threshold, sort_by_x, validate_points, QueryCounters, Region, ThreeSidedRange, WeightedPoint,
};

/// A flat point set with unique ids.
#[derive(Debug, Clone, Default)]
pub struct PointArray {
    points: Vec<WeightedPoint>,
}

impl PointArray {
    pub fn new(points: Vec<WeightedPoint>) -> Result<Self> {
        validate_points(&points)?;
        Ok(PointArray { points })
    }

    pub fn points(&self) -> &[WeightedPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Points in `range` with rank at least `⌊log₂ w⌋`.
pub fn oracle_threshold<R: Region>(pa: &PointArray, range: &R, w: u64) -> Result<Vec<WeightedPoint>> {
    let need = rank_threshold(w)?;
    Ok(pa
        .points
        .iter()
        .filter(|p| range.contains(p) && p.rank() >= need)
        .copied()
        .collect())
}

/// The `k` highest-rank points in `range`, ties by ascending id.
pub fn oracle_topk<R: Region>(pa: &PointArray, range: &R, k: usize) -> Result<Vec<WeightedPoint>> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    let mut hits: Vec<WeightedPoint> = pa.points.iter().filter(|p| range.contains(p)).copied().collect();
    hits.sort_by(|a, b| b.rank().cmp(&a.rank()).then(a.id.cmp(&b.id)));
    hits.truncate(k);
    Ok(hits)
}

/// Largest rank among the points in `range`.
pub fn oracle_max_rank<R: Region>(pa: &PointArray, range: &R) -> Option<u32> {
    pa.points.iter().filter(|p| range.contains(p)).map(|p| p.rank().get()).max()
}

/// Layer index of each `(rank, y)` pair under repeated maxima peeling.
/// `q` is dominated by `p` when `p.rank > q.rank` and `p.y ≥ q.y`.
pub fn oracle_layers(points: &[(u32, f64)]) -> Vec<usize> {
    let mut layer = vec![usize::MAX; points.len()];
    let mut remaining: Vec<usize> = (0..points.len()).collect();
    let mut current = 0;
    while !remaining.is_empty() {
        let maxima: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|&q| {
                !remaining.iter().any(|&p| points[p].0 > points[q].0 && points[p].1 >= points[q].1)
            })
            .collect();
        for &q in &maxima {
            layer[q] = current;
        }
        remaining.retain(|q| !maxima.contains(q));
        current += 1;
    }
    layer
}

/// Classic split-by-size priority search tree: heap on y, search tree on x.
#[derive(Debug, Clone, Default)]
pub struct PrioritySearchTree {
    nodes: Vec<PstNode>,
    root: Option<u32>,
}

#[derive(Debug, Clone)]
struct PstNode {
    point: WeightedPoint,
    split_key: f64,
    left: Option<u32>,
    right: Option<u32>,
}

impl PrioritySearchTree {
    pub fn build(points: &[WeightedPoint]) -> Self {
        let mut sorted = points.to_vec();
        sort_by_x(&mut sorted);
        let mut t = PrioritySearchTree { nodes: Vec::with_capacity(points.len()), root: None };
        t.root = t.build_rec(sorted);
        t
    }

    fn build_rec(&mut self, mut run: Vec<WeightedPoint>) -> Option<u32> {
        if run.is_empty() {
            return None;
        }
        let top = (0..run.len())
            .max_by(|&a, &b| run[a].y.total_cmp(&run[b].y).then(run[b].id.cmp(&run[a].id)))
            .expect("non-empty");
        let point = run.remove(top);
        let cut = run.len().div_ceil(2);
        let split_key = if cut == 0 { f64::NEG_INFINITY } else { run[cut - 1].x };
        let right = run.split_off(cut);
        let id = self.nodes.len() as u32;
        self.nodes.push(PstNode { point, split_key, left: None, right: None });
        let l = self.build_rec(run);
        let r = self.build_rec(right);
        self.nodes[id as usize].left = l;
        self.nodes[id as usize].right = r;
        Some(id)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn query(&self, range: &ThreeSidedRange, counters: &mut QueryCounters) -> Vec<WeightedPoint> {
        let mut out = Vec::new();
        let mut stack: Vec<u32> = self.root.into_iter().collect();
        while let Some(id) = stack.pop() {
            counters.tree_nodes_visited += 1;
            let n = &self.nodes[id as usize];
            if n.point.y < range.y {
                continue;
            }
            if range.contains(&n.point) {
                out.push(n.point);
            }
            if let Some(r) = n.right {
                if range.x2 >= n.split_key {
                    stack.push(r);
                }
            }
            if let Some(l) = n.left {
                if range.x1 <= n.split_key {
                    stack.push(l);
                }
            }
        }
        out
    }
}

/// One priority search tree per rank `i`, holding every point of rank ≥ `i`.
#[derive(Debug, Clone, Default)]
pub struct SuffixPstBaseline {
    per_rank: Vec<PrioritySearchTree>,
}

impl SuffixPstBaseline {
    pub fn build(points: &[WeightedPoint]) -> Result<Self> {
        validate_points(points)?;
        let max_rank = points.iter().map(|p| p.rank().get()).max();
        let per_rank = match max_rank {
            None => Vec::new(),
            Some(top) => (0..=top)
                .map(|i| {
                    let subset: Vec<_> = points.iter().filter(|p| p.rank().get() >= i).copied().collect();
                    PrioritySearchTree::build(&subset)
                })
                .collect(),
        };
        Ok(SuffixPstBaseline { per_rank })
    }

    /// Number of stored tree nodes across all ranks.
    pub fn space_nodes(&self) -> usize {
        self.per_rank.iter().map(PrioritySearchTree::len).sum()
    }

    pub fn rank_structure(&self, i: u32) -> Option<&PrioritySearchTree> {
        self.per_rank.get(i as usize)
    }

    pub fn baseline_threshold(&self, range: &ThreeSidedRange, w: u64) -> Result<Vec<WeightedPoint>> {
        Ok(self.baseline_threshold_with_counters(range, w)?.0)
    }

    pub fn baseline_threshold_with_counters(
        &self,
        range: &ThreeSidedRange,
        w: u64,
    ) -> Result<(Vec<WeightedPoint>, QueryCounters)> {
        let need = rank_threshold(w)?.get() as usize;
        let mut counters = QueryCounters::default();
        let out = match self.per_rank.get(need) {
            Some(t) => t.query(range, &mut counters),
            None => Vec::new(),
        };
        Ok((out, counters))
    }
}
