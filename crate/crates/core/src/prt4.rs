//! Four-sided range reporting.
//!
//! Points sit at the leaves of a weight-balanced search tree on x. Each
//! internal node other than the root stores a [`PriorityRangeTree`] over its
//! subtree with the axes turned: the tree dimension becomes y and the heap
//! dimension becomes x, negated for right children. A query `[a, b] × [c, d]`
//! finds the node where the searches for `a` and `b` part and asks its left
//! child for `[c, d] × [a, ∞)` and its right child for `[c, d] × [-b, ∞)`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::prt::{PriorityRangeTree, SpaceCensus, TopKRun};
use crate::types::{
    rank_threshold, sort_by_x, validate_points, weight_split, FourSidedRange, QueryCounters, ThreeSidedRange,
    TotalWeight, WeightedPoint,
};

pub type XNodeId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// Stores `(y, x)`: answers `x ≥ a`.
    Left,
    /// Stores `(y, -x)`: answers `x ≤ b`.
    Right,
}

#[derive(Debug, Clone)]
pub struct XNode {
    /// Smallest and largest x in the subtree.
    pub x_min: f64,
    pub x_max: f64,
    /// Largest x in the left subtree.
    pub split_key: f64,
    pub left: Option<XNodeId>,
    pub right: Option<XNodeId>,
    pub depth: u32,
    /// Index into the point array for a leaf.
    pub leaf: Option<u32>,
    pub orientation: Option<Orientation>,
    prt: Option<PriorityRangeTree>,
}

impl XNode {
    pub fn is_leaf(&self) -> bool {
        self.leaf.is_some()
    }

    pub fn prt(&self) -> Option<&PriorityRangeTree> {
        self.prt.as_ref()
    }
}

#[derive(Debug, Clone)]
pub struct FourSidedIndex {
    nodes: Vec<XNode>,
    root: Option<XNodeId>,
    points: Vec<WeightedPoint>,
    by_id: BTreeMap<u64, u32>,
    total_weight: TotalWeight,
}

fn turn(p: &WeightedPoint, o: Orientation) -> WeightedPoint {
    let y = match o {
        Orientation::Left => p.x,
        Orientation::Right => -p.x,
    };
    WeightedPoint { id: p.id, x: p.y, y, w: p.w }
}

/// Where a four-sided search ends up.
enum Split {
    Nothing,
    Leaf(XNodeId),
    Diverge(XNodeId),
}

impl FourSidedIndex {
    pub fn build(points: &[WeightedPoint]) -> Result<Self> {
        validate_points(points)?;
        let mut sorted = points.to_vec();
        sort_by_x(&mut sorted);
        let by_id = sorted.iter().enumerate().map(|(i, p)| (p.id, i as u32)).collect();
        let mut idx = FourSidedIndex {
            nodes: Vec::with_capacity(2 * points.len()),
            root: None,
            points: sorted,
            by_id,
            total_weight: TotalWeight::of(points),
        };
        if !idx.points.is_empty() {
            let n = idx.points.len();
            idx.root = Some(idx.build_rec(0, n, 0, None)?);
        }
        Ok(idx)
    }

    fn build_rec(&mut self, lo: usize, hi: usize, depth: u32, orientation: Option<Orientation>) -> Result<XNodeId> {
        let run = &self.points[lo..hi];
        let (x_min, x_max) = (run[0].x, run[run.len() - 1].x);
        let id = self.nodes.len() as XNodeId;
        self.nodes.push(XNode {
            x_min,
            x_max,
            split_key: x_max,
            left: None,
            right: None,
            depth,
            leaf: None,
            orientation,
            prt: None,
        });
        if hi - lo == 1 {
            self.nodes[id as usize].leaf = Some(lo as u32);
            return Ok(id);
        }
        if let Some(o) = orientation {
            let turned: Vec<WeightedPoint> = run.iter().map(|p| turn(p, o)).collect();
            self.nodes[id as usize].prt = Some(PriorityRangeTree::build(&turned)?);
        }
        let cut = lo + weight_split(run, 1);
        let split_key = self.points[cut - 1].x;
        let l = self.build_rec(lo, cut, depth + 1, Some(Orientation::Left))?;
        let r = self.build_rec(cut, hi, depth + 1, Some(Orientation::Right))?;
        let node = &mut self.nodes[id as usize];
        node.split_key = split_key;
        node.left = Some(l);
        node.right = Some(r);
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn total_weight(&self) -> TotalWeight {
        self.total_weight
    }

    pub fn root(&self) -> Option<XNodeId> {
        self.root
    }

    pub fn node(&self, id: XNodeId) -> &XNode {
        &self.nodes[id as usize]
    }

    pub fn nodes(&self) -> &[XNode] {
        &self.nodes
    }

    /// Points of a subtree, read off its leaves.
    pub fn subtree_points(&self, id: XNodeId) -> Vec<WeightedPoint> {
        let mut out = Vec::new();
        let mut stack = vec![id];
        while let Some(v) = stack.pop() {
            let node = &self.nodes[v as usize];
            if let Some(i) = node.leaf {
                out.push(self.points[i as usize]);
            }
            stack.extend(node.left);
            stack.extend(node.right);
        }
        out
    }

    /// Depth of the leaf holding each point, keyed by id.
    pub fn leaf_depths(&self) -> Vec<(WeightedPoint, u32)> {
        self.nodes
            .iter()
            .filter_map(|n| n.leaf.map(|i| (self.points[i as usize], n.depth)))
            .collect()
    }

    /// Space of the x-tree plus every per-node priority range tree.
    pub fn space(&self) -> SpaceCensus {
        let mut total = SpaceCensus { tree_nodes: self.nodes.len(), ..SpaceCensus::default() };
        for prt in self.nodes.iter().filter_map(XNode::prt) {
            let s = prt.space();
            total.tree_nodes += s.tree_nodes;
            total.heap_nodes += s.heap_nodes;
            total.catalog_cells += s.catalog_cells;
            total.bucket_cells += s.bucket_cells;
        }
        total
    }

    /// Leaves deeper than `2·log₂(W/w) + 2`.
    pub fn depth_violations(&self) -> Vec<(WeightedPoint, u32)> {
        let log_w = self.total_weight.log2();
        self.leaf_depths()
            .into_iter()
            .filter(|(p, d)| *d as f64 > 2.0 * (log_w - (p.w as f64).log2()) + 2.0 + 1e-9)
            .collect()
    }

    /// Search-order, point-placement and per-node structure audit.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        if let Some((p, d)) = self.depth_violations().first() {
            return Err(format!("point {} (w={}) has a leaf at depth {d}", p.id, p.w));
        }
        for (id, node) in self.nodes.iter().enumerate() {
            let id = id as XNodeId;
            if node.is_leaf() {
                continue;
            }
            let (l, r) = match (node.left, node.right) {
                (Some(l), Some(r)) => (l, r),
                _ => return Err(format!("internal node {id} lacks a child")),
            };
            if self.nodes[l as usize].x_max > node.split_key || self.nodes[r as usize].x_min < node.split_key {
                return Err(format!("node {id} breaks search order"));
            }
            let wants_prt = Some(id) != self.root;
            if node.prt.is_some() != wants_prt {
                return Err(format!("node {id}: structure present iff not the root"));
            }
            if let (Some(prt), Some(o)) = (&node.prt, node.orientation) {
                let mut want: Vec<WeightedPoint> = self.subtree_points(id).iter().map(|p| turn(p, o)).collect();
                let mut have: Vec<WeightedPoint> = prt.nodes().iter().map(|n| n.point).collect();
                want.sort_by_key(|p| p.id);
                have.sort_by_key(|p| p.id);
                if want != have {
                    return Err(format!("node {id} stores the wrong point set"));
                }
                prt.check_invariants()?;
            }
        }
        Ok(())
    }

    fn locate(&self, range: &FourSidedRange, counters: &mut QueryCounters) -> Split {
        let mut cur = self.root;
        while let Some(v) = cur {
            counters.tree_nodes_visited += 1;
            let node = &self.nodes[v as usize];
            if node.is_leaf() {
                return Split::Leaf(v);
            }
            cur = if range.b < node.split_key {
                node.left
            } else if range.a > node.split_key {
                node.right
            } else {
                return Split::Diverge(v);
            };
        }
        Split::Nothing
    }

    /// The two turned three-sided searches at a divergence node, with any
    /// leaf child returned for a direct test instead.
    fn halves(&self, s: XNodeId, range: &FourSidedRange) -> (Vec<(&PriorityRangeTree, ThreeSidedRange)>, Vec<WeightedPoint>) {
        let node = &self.nodes[s as usize];
        let mut searches = Vec::new();
        let mut direct = Vec::new();
        for (child, lower) in [(node.left, range.a), (node.right, -range.b)] {
            let c = &self.nodes[child.expect("internal node") as usize];
            match (c.leaf, &c.prt) {
                (Some(i), _) => direct.push(self.points[i as usize]),
                (None, Some(prt)) => searches.push((prt, ThreeSidedRange { x1: range.c, x2: range.d, y: lower })),
                (None, None) => unreachable!("non-root internal nodes carry a structure"),
            }
        }
        (searches, direct)
    }

    fn original(&self, id: u64) -> WeightedPoint {
        self.points[self.by_id[&id] as usize]
    }

    pub fn threshold_query(&self, range: &FourSidedRange, w: u64) -> Result<Vec<WeightedPoint>> {
        Ok(self.threshold_query_with_counters(range, w)?.0)
    }

    pub fn threshold_query_with_counters(
        &self,
        range: &FourSidedRange,
        w: u64,
    ) -> Result<(Vec<WeightedPoint>, QueryCounters)> {
        let need = rank_threshold(w)?;
        let mut counters = QueryCounters::default();
        let s = match self.locate(range, &mut counters) {
            Split::Nothing => return Ok((Vec::new(), counters)),
            Split::Leaf(v) => {
                let p = self.points[self.nodes[v as usize].leaf.expect("leaf") as usize];
                let hit = range.contains(&p) && p.rank() >= need;
                return Ok((if hit { vec![p] } else { Vec::new() }, counters));
            }
            Split::Diverge(s) => s,
        };
        let (searches, direct) = self.halves(s, range);
        let mut out: Vec<WeightedPoint> =
            direct.into_iter().filter(|p| range.contains(p) && p.rank() >= need).collect();
        for (prt, half) in searches {
            let (hits, c) = prt.threshold_query_with_counters(&half, w)?;
            counters += c;
            out.extend(hits.iter().map(|p| self.original(p.id)));
        }
        Ok((out, counters))
    }

    /// `min(k, |range ∩ P|)` points of highest rank, non-increasing in rank.
    /// Both halves share one rank queue so neither is searched deeper than
    /// the current best rank allows.
    pub fn top_k(&self, range: &FourSidedRange, k: usize) -> Result<Vec<WeightedPoint>> {
        Ok(self.top_k_with_counters(range, k)?.0)
    }

    pub fn top_k_with_counters(&self, range: &FourSidedRange, k: usize) -> Result<(Vec<WeightedPoint>, QueryCounters)> {
        if k == 0 {
            return Err(Error::ZeroK);
        }
        let mut counters = QueryCounters::default();
        let s = match self.locate(range, &mut counters) {
            Split::Nothing => return Ok((Vec::new(), counters)),
            Split::Leaf(v) => {
                let p = self.points[self.nodes[v as usize].leaf.expect("leaf") as usize];
                return Ok((if range.contains(&p) { vec![p] } else { Vec::new() }, counters));
            }
            Split::Diverge(s) => s,
        };
        let (searches, direct) = self.halves(s, range);
        let mut out: Vec<WeightedPoint> = direct.into_iter().filter(|p| range.contains(p)).collect();
        if !searches.is_empty() {
            let mut run = TopKRun::new(searches, k)?;
            run.run()?;
            counters += run.counters();
            out.extend(run.into_points().into_iter().map(|(_, p)| self.original(p.id)));
        }
        out.sort_by_key(|p| std::cmp::Reverse(p.rank()));
        out.truncate(k);
        Ok((out, counters))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{oracle_threshold, oracle_topk, PointArray};

    fn canonical() -> Vec<WeightedPoint> {
        [(1.0, 5.0, 16), (2.0, 9.0, 2), (3.0, 4.0, 8), (4.0, 7.0, 1), (5.0, 1.0, 32), (6.0, 6.0, 4)]
            .iter()
            .enumerate()
            .map(|(i, &(x, y, w))| WeightedPoint::new(i as u64 + 1, x, y, w).unwrap())
            .collect()
    }

    fn ids(v: &[WeightedPoint]) -> Vec<u64> {
        let mut ids: Vec<u64> = v.iter().map(|p| p.id).collect();
        ids.sort_unstable();
        ids
    }

    #[test]
    fn small_shapes() {
        let one = FourSidedIndex::build(&canonical()[..1]).unwrap();
        assert_eq!(one.nodes().len(), 1);
        assert!(one.nodes()[0].prt().is_none());
        let two = FourSidedIndex::build(&canonical()[..2]).unwrap();
        assert_eq!(two.nodes().len(), 3);
        assert!(two.nodes().iter().all(|n| n.prt().is_none()));
        two.check_invariants().unwrap();
    }

    #[test]
    fn canonical_structure_and_queries() {
        let pts = canonical();
        let idx = FourSidedIndex::build(&pts).unwrap();
        idx.check_invariants().unwrap();

        let r = FourSidedRange::new(2.0, 6.0, 3.0, 7.0).unwrap();
        assert_eq!(ids(&idx.threshold_query(&r, 4).unwrap()), vec![3, 6]);
        let all = FourSidedRange::new(1.0, 6.0, -1e9, 1e9).unwrap();
        assert_eq!(idx.threshold_query(&all, 1).unwrap().len(), 6);
        let past = FourSidedRange::new(7.0, 9.0, -1e9, 1e9).unwrap();
        assert!(idx.threshold_query(&past, 1).unwrap().is_empty());

        let top = idx.top_k(&FourSidedRange::new(1.0, 6.0, 0.0, 9.0).unwrap(), 2).unwrap();
        assert_eq!(ids(&top), vec![1, 5]);
        let top = idx.top_k(&FourSidedRange::new(2.0, 4.0, 5.0, 9.0).unwrap(), 1).unwrap();
        assert_eq!(ids(&top), vec![2]);
        assert_eq!(idx.top_k(&all, 100).unwrap().len(), 6);
        assert_eq!(idx.top_k(&all, 0).unwrap_err(), Error::ZeroK);
    }

    #[test]
    fn matches_oracle_on_a_grid_of_boxes() {
        let pts: Vec<WeightedPoint> = (0..40u64)
            .map(|i| WeightedPoint::new(i, (i * 7 % 13) as f64, (i * 5 % 11) as f64, 1 + (i * i) % 37).unwrap())
            .collect();
        let pa = PointArray::new(pts.clone()).unwrap();
        let idx = FourSidedIndex::build(&pts).unwrap();
        idx.check_invariants().unwrap();
        for a in [0.0, 3.0, 6.0] {
            for b in [6.0, 9.0, 12.0] {
                for (c, d) in [(0.0, 10.0), (2.0, 5.0), (4.0, 4.0)] {
                    let r = FourSidedRange::new(a, b, c, d).unwrap();
                    for w in [1, 4, 16, 33] {
                        assert_eq!(ids(&idx.threshold_query(&r, w).unwrap()), ids(&oracle_threshold(&pa, &r, w).unwrap()));
                    }
                    for k in [1, 3, 10] {
                        let got: Vec<u32> = idx.top_k(&r, k).unwrap().iter().map(|p| p.rank().get()).collect();
                        let want: Vec<u32> = oracle_topk(&pa, &r, k).unwrap().iter().map(|p| p.rank().get()).collect();
                        assert_eq!(got, want);
                    }
                }
            }
        }
    }
}
