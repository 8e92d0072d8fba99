//! One-dimensional weight-balanced priority search tree.
//!
//! Every node stores the heaviest point of its subtree; the remaining points
//! are split into an x-prefix and x-suffix of nearly equal total weight. The
//! resulting tree is heap ordered on weight and a point of weight `w` sits at
//! depth at most `log₂(W / w)`, so an interval threshold query costs
//! `O(log(W / w) + k)`.

use crate::error::Result;
use crate::types::{
    heaviest, sort_by_x, validate_points, weight_split, within_log_bound, QueryCounters, TotalWeight,
    WeightedPoint,
};

pub type NodeId = u32;

#[derive(Debug, Clone)]
pub struct WbPstNode {
    pub point: WeightedPoint,
    /// Largest x in the left subtree, `-inf` when the left subtree is empty.
    pub split_key: f64,
    pub left: Option<NodeId>,
    pub right: Option<NodeId>,
    pub subtree_weight: u128,
    pub depth: u32,
}

#[derive(Debug, Clone, Default)]
pub struct WbPst {
    nodes: Vec<WbPstNode>,
    root: Option<NodeId>,
    total_weight: TotalWeight,
}

impl WbPst {
    pub fn build(points: &[WeightedPoint]) -> Result<Self> {
        validate_points(points)?;
        let mut sorted = points.to_vec();
        sort_by_x(&mut sorted);
        let mut tree = WbPst {
            nodes: Vec::with_capacity(points.len()),
            root: None,
            total_weight: TotalWeight::of(points),
        };
        tree.root = tree.build_rec(sorted, 0);
        Ok(tree)
    }

    fn build_rec(&mut self, mut run: Vec<WeightedPoint>, depth: u32) -> Option<NodeId> {
        if run.is_empty() {
            return None;
        }
        let subtree_weight = run.iter().map(|p| p.w as u128).sum();
        let point = run.remove(heaviest(&run));
        let cut = if run.is_empty() { 0 } else { weight_split(&run, 0) };
        let split_key = if cut == 0 { f64::NEG_INFINITY } else { run[cut - 1].x };
        let right_run = run.split_off(cut);

        let id = self.nodes.len() as NodeId;
        self.nodes.push(WbPstNode {
            point,
            split_key,
            left: None,
            right: None,
            subtree_weight,
            depth,
        });
        let left = self.build_rec(run, depth + 1);
        let right = self.build_rec(right_run, depth + 1);
        let node = &mut self.nodes[id as usize];
        node.left = left;
        node.right = right;
        Some(id)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> Option<&WbPstNode> {
        self.root.map(|r| &self.nodes[r as usize])
    }

    pub fn node(&self, id: NodeId) -> &WbPstNode {
        &self.nodes[id as usize]
    }

    pub fn nodes(&self) -> &[WbPstNode] {
        &self.nodes
    }

    pub fn total_weight(&self) -> TotalWeight {
        self.total_weight
    }

    /// Points in `[a, b]` whose weight is at least `w`.
    pub fn threshold_query(&self, a: f64, b: f64, w: u64) -> Vec<WeightedPoint> {
        self.threshold_query_with_counters(a, b, w).0
    }

    pub fn threshold_query_with_counters(&self, a: f64, b: f64, w: u64) -> (Vec<WeightedPoint>, QueryCounters) {
        let mut out = Vec::new();
        let mut counters = QueryCounters::default();
        let mut stack: Vec<NodeId> = self.root.into_iter().collect();
        while let Some(id) = stack.pop() {
            counters.tree_nodes_visited += 1;
            let node = &self.nodes[id as usize];
            // Heap order: nothing below a light node can qualify.
            if node.point.w < w {
                continue;
            }
            if a <= node.point.x && node.point.x <= b {
                out.push(node.point);
            }
            if let Some(r) = node.right {
                if b >= node.split_key {
                    stack.push(r);
                }
            }
            if let Some(l) = node.left {
                if a <= node.split_key {
                    stack.push(l);
                }
            }
        }
        (out, counters)
    }

    /// `(point, depth)` for every stored point.
    pub fn depths(&self) -> impl Iterator<Item = (&WeightedPoint, u32)> + '_ {
        self.nodes.iter().map(|n| (&n.point, n.depth))
    }

    /// Points violating `depth ≤ log₂(W / w)`.
    pub fn depth_violations(&self) -> Vec<(WeightedPoint, u32)> {
        self.depths()
            .filter(|(p, d)| !within_log_bound(*d, p.w, self.total_weight))
            .map(|(p, d)| (*p, d))
            .collect()
    }

    /// Checks heap order, search order, subtree weights and the depth bound.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let Some(root) = self.root else {
            return Ok(());
        };
        self.check_rec(root, f64::NEG_INFINITY, f64::INFINITY)?;
        if let Some((p, d)) = self.depth_violations().first() {
            return Err(format!("point {} (w={}) at depth {d} exceeds log2(W/w)", p.id, p.w));
        }
        Ok(())
    }

    fn check_rec(&self, id: NodeId, lo: f64, hi: f64) -> std::result::Result<u128, String> {
        let n = &self.nodes[id as usize];
        if n.point.x < lo || n.point.x > hi {
            return Err(format!("point {} out of search interval", n.point.id));
        }
        let mut sum = n.point.w as u128;
        for (child, lo, hi) in [(n.left, lo, n.split_key), (n.right, n.split_key, hi)] {
            if let Some(c) = child {
                let cn = &self.nodes[c as usize];
                if cn.point.w > n.point.w {
                    return Err(format!("heap order broken below point {}", n.point.id));
                }
                if cn.depth != n.depth + 1 {
                    return Err("depth bookkeeping".into());
                }
                sum += self.check_rec(c, lo, hi)?;
            }
        }
        if sum != n.subtree_weight {
            return Err(format!("subtree weight mismatch at point {}", n.point.id));
        }
        Ok(sum)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(spec: &[(f64, u64)]) -> Vec<WeightedPoint> {
        spec.iter()
            .enumerate()
            .map(|(i, &(x, w))| WeightedPoint::new(i as u64, x, 0.0, w).unwrap())
            .collect()
    }

    #[test]
    fn heaviest_point_is_root() {
        let t = WbPst::build(&pts(&[(1.0, 8), (2.0, 2), (3.0, 4), (4.0, 1)])).unwrap();
        let root = t.root().unwrap();
        assert_eq!(root.point.w, 8);
        assert_eq!(root.depth, 0);
        t.check_invariants().unwrap();
    }

    #[test]
    fn single_point() {
        let t = WbPst::build(&pts(&[(5.0, 3)])).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.root().unwrap().depth, 0);
        assert!(t.depth_violations().is_empty());
    }

    #[test]
    fn empty_input_builds_empty_tree() {
        let t = WbPst::build(&[]).unwrap();
        assert!(t.is_empty());
        assert!(t.threshold_query(0.0, 1.0, 1).is_empty());
    }

    #[test]
    fn duplicate_ids_fail() {
        let mut p = pts(&[(1.0, 1), (2.0, 1)]);
        p[1].id = 0;
        assert!(WbPst::build(&p).is_err());
    }

    #[test]
    fn equal_weights_depth_at_most_six() {
        let p: Vec<_> = (0..64).map(|i| WeightedPoint::new(i, i as f64, 0.0, 1).unwrap()).collect();
        let t = WbPst::build(&p).unwrap();
        for (_, d) in t.depths() {
            assert!(d <= 6, "depth {d}");
        }
        t.check_invariants().unwrap();
    }

    #[test]
    fn threshold_examples() {
        let t = WbPst::build(&pts(&[(1.0, 8), (2.0, 2), (3.0, 4), (4.0, 1)])).unwrap();
        let mut got: Vec<_> = t.threshold_query(1.0, 4.0, 4).iter().map(|p| (p.x, p.w)).collect();
        got.sort_by(|a, b| a.0.total_cmp(&b.0));
        assert_eq!(got, vec![(1.0, 8), (3.0, 4)]);
        assert!(t.threshold_query(0.0, 10.0, 9).is_empty());

        let t = WbPst::build(&pts(&[(1.0, 8)])).unwrap();
        assert!(t.threshold_query(2.0, 3.0, 1).is_empty());
    }

    #[test]
    fn ties_on_x_are_searchable() {
        let p: Vec<_> = (0..20).map(|i| WeightedPoint::new(i, (i / 5) as f64, 0.0, 1 + i % 3).unwrap()).collect();
        let t = WbPst::build(&p).unwrap();
        t.check_invariants().unwrap();
        let got = t.threshold_query(1.0, 2.0, 2);
        let want = p.iter().filter(|q| q.x >= 1.0 && q.x <= 2.0 && q.w >= 2).count();
        assert_eq!(got.len(), want);
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn point_set() -> impl Strategy<Value = Vec<WeightedPoint>> {
            prop::collection::vec((0i32..50, 1u64..1000), 1..120).prop_map(|v| {
                v.into_iter()
                    .enumerate()
                    .map(|(i, (x, w))| WeightedPoint::new(i as u64, x as f64, 0.0, w).unwrap())
                    .collect()
            })
        }

        proptest! {
            #[test]
            fn structure_invariants(points in point_set()) {
                let t = WbPst::build(&points).unwrap();
                prop_assert_eq!(t.len(), points.len());
                prop_assert!(t.check_invariants().is_ok(), "{:?}", t.check_invariants());
            }

            #[test]
            fn threshold_matches_filter(points in point_set(), a in -5i32..55, len in 0i32..60, w in 1u64..1200) {
                let t = WbPst::build(&points).unwrap();
                let (a, b) = (a as f64, (a + len) as f64);
                let mut got: Vec<u64> = t.threshold_query(a, b, w).iter().map(|p| p.id).collect();
                got.sort_unstable();
                let want: Vec<u64> = points.iter().filter(|p| a <= p.x && p.x <= b && p.w >= w).map(|p| p.id).collect();
                prop_assert_eq!(got, want);
            }
        }
    }
}
