//! Three-sided priority range tree.
//!
//! The backbone is a priority search tree heap ordered on weight. Above
//! depth `⌊½·log₂ n⌋` nodes split their remaining points by weight, below it
//! by size, and every split-by-size subtree is complete. Split-by-size
//! subtrees of at most `2·log₂ n` points are buckets: they keep a single
//! catalog with per-rank chains and nothing else.
//!
//! Every other node (the skeleton) owns, for each rank present below it, a
//! version of a persistent max-heap on y built by running BuildHeap over the
//! skeleton with points of other ranks treated as `BOTTOM`. A bucket enters
//! those heaps as one pseudo-leaf per rank keyed by its highest y of that
//! rank. The roots of a node's versions form its catalog, a layers-of-maxima
//! structure over `(rank, y)`.

mod pq;
mod query;
mod topk;

use std::collections::HashMap;

use crate::error::Result;
use crate::maxima::{CatalogSpace, MaximaCatalog};
use crate::pheap::{HeapKey, HeapRef, PersistentHeap};
use crate::types::{heaviest, sort_by_x, validate_points, weight_split, within_log_bound, TotalWeight, WeightedPoint};

pub use pq::RankPriorityQueue;
pub(crate) use topk::TopKRun;

pub type NodeId = u32;
pub type BucketId = u32;

/// Slope of the hybrid tree's depth bound `depth ≤ c·log₂(W/w) + c`.
pub const DEPTH_LIMIT_CONSTANT: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    ByWeight,
    BySize,
}

/// What a persistent-heap node stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeapPayload {
    Point(NodeId),
    /// The highest point of one rank inside a bucket.
    Bucket(BucketId),
}

#[derive(Debug, Clone)]
pub struct PrtNode {
    pub point: WeightedPoint,
    pub split_key: f64,
    pub left: Option<NodeId>,
    pub right: Option<NodeId>,
    pub depth: u32,
    pub strategy: Strategy,
    /// Points in this subtree.
    pub size: u32,
    /// Bucket containing this node, if any.
    pub bucket: Option<BucketId>,
    catalog: Option<u32>,
}

#[derive(Debug, Clone)]
pub struct Bucket {
    pub root: NodeId,
    pub members: Vec<NodeId>,
    /// Chain heads per rank, with same-rank walks enabled.
    pub catalog: MaximaCatalog<NodeId>,
}

/// Allocation census, in nodes and cells.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SpaceCensus {
    pub tree_nodes: usize,
    pub heap_nodes: usize,
    pub catalog_cells: usize,
    pub bucket_cells: usize,
}

impl SpaceCensus {
    pub fn total(&self) -> usize {
        self.tree_nodes + self.heap_nodes + self.catalog_cells + self.bucket_cells
    }
}

#[derive(Debug, Clone)]
pub struct PriorityRangeTree {
    nodes: Vec<PrtNode>,
    root: Option<NodeId>,
    n: usize,
    total_weight: TotalWeight,
    switch_depth: u32,
    bucket_max: f64,
    /// Ranks live in `[0, m)`.
    m: u32,
    catalogs: Vec<MaximaCatalog<HeapRef>>,
    buckets: Vec<Bucket>,
    /// One persistent heap per rank.
    heaps: Vec<PersistentHeap<HeapPayload>>,
}

/// Left-subtree size of a complete binary tree with `s` nodes.
fn complete_left_size(s: usize) -> usize {
    if s <= 1 {
        return 0;
    }
    let h = s.ilog2();
    let above = (1usize << h) - 1;
    let last = s - above;
    let half = 1usize << (h - 1);
    (half - 1) + last.min(half)
}

impl PriorityRangeTree {
    pub fn build(points: &[WeightedPoint]) -> Result<Self> {
        validate_points(points)?;
        let n = points.len();
        let log_n = if n == 0 { 0.0 } else { (n as f64).log2() };
        let m = points.iter().map(|p| p.rank().get() + 1).max().unwrap_or(0);
        let mut tree = PriorityRangeTree {
            nodes: Vec::with_capacity(n),
            root: None,
            n,
            total_weight: TotalWeight::of(points),
            switch_depth: if n == 0 { 0 } else { n.ilog2() / 2 },
            bucket_max: 2.0 * log_n,
            m,
            catalogs: Vec::new(),
            buckets: Vec::new(),
            heaps: (0..m).map(|_| PersistentHeap::new()).collect(),
        };
        let mut sorted = points.to_vec();
        sort_by_x(&mut sorted);
        tree.root = tree.build_rec(sorted, 0);
        tree.assign_buckets();
        tree.build_heaps_and_catalogs()?;
        Ok(tree)
    }

    fn build_rec(&mut self, mut run: Vec<WeightedPoint>, depth: u32) -> Option<NodeId> {
        if run.is_empty() {
            return None;
        }
        let size = run.len() as u32;
        let strategy = if depth < self.switch_depth { Strategy::ByWeight } else { Strategy::BySize };
        let point = run.remove(heaviest(&run));
        let cut = match strategy {
            Strategy::ByWeight if !run.is_empty() => weight_split(&run, 0),
            Strategy::ByWeight => 0,
            Strategy::BySize => complete_left_size(run.len() + 1),
        };
        let split_key = if cut == 0 { f64::NEG_INFINITY } else { run[cut - 1].x };
        let right_run = run.split_off(cut);
        let id = self.nodes.len() as NodeId;
        self.nodes.push(PrtNode {
            point,
            split_key,
            left: None,
            right: None,
            depth,
            strategy,
            size,
            bucket: None,
            catalog: None,
        });
        let l = self.build_rec(run, depth + 1);
        let r = self.build_rec(right_run, depth + 1);
        let node = &mut self.nodes[id as usize];
        node.left = l;
        node.right = r;
        Some(id)
    }

    /// Marks the maximal split-by-size subtrees of at most `2·log₂ n` points.
    fn assign_buckets(&mut self) {
        // Nodes are stored in pre-order, so parents precede children.
        let mut bucket_roots = Vec::new();
        for id in 0..self.nodes.len() {
            let node = &self.nodes[id];
            if node.bucket.is_some() {
                let b = node.bucket;
                for c in [node.left, node.right].into_iter().flatten() {
                    self.nodes[c as usize].bucket = b;
                }
                continue;
            }
            if node.strategy == Strategy::BySize && (node.size as f64) <= self.bucket_max {
                let b = bucket_roots.len() as BucketId;
                bucket_roots.push(id as NodeId);
                self.nodes[id].bucket = Some(b);
                let (l, r) = (self.nodes[id].left, self.nodes[id].right);
                for c in [l, r].into_iter().flatten() {
                    self.nodes[c as usize].bucket = Some(b);
                }
            }
        }
        let mut members: Vec<Vec<NodeId>> = vec![Vec::new(); bucket_roots.len()];
        for (id, node) in self.nodes.iter().enumerate() {
            if let Some(b) = node.bucket {
                members[b as usize].push(id as NodeId);
            }
        }
        self.buckets = bucket_roots
            .into_iter()
            .zip(members)
            .map(|(root, members)| Bucket { root, members, catalog: MaximaCatalog::build_catalog(&[], 0).unwrap() })
            .collect();
    }

    fn build_heaps_and_catalogs(&mut self) -> Result<()> {
        for b in 0..self.buckets.len() {
            let entries: Vec<(u32, f64, NodeId)> = self.buckets[b]
                .members
                .iter()
                .map(|&u| {
                    let p = &self.nodes[u as usize].point;
                    (p.rank().get(), p.y, u)
                })
                .collect();
            self.buckets[b].catalog = MaximaCatalog::build_bucket_catalog(&entries, self.m)?;
        }

        // Pseudo-leaves: (bucket, rank) → heap node, made once.
        let mut pseudo: HashMap<(BucketId, u32), Option<HeapRef>> = HashMap::new();
        // Per skeleton node: its versions, sorted by rank.
        let mut versions: Vec<Vec<(u32, HeapRef)>> = vec![Vec::new(); self.nodes.len()];

        for id in (0..self.nodes.len()).rev() {
            if self.nodes[id].bucket.is_some() {
                continue;
            }
            let (point, left, right) = {
                let node = &self.nodes[id];
                (node.point, node.left, node.right)
            };
            let own_rank = point.rank().get();
            let mut child_versions: [Vec<(u32, HeapRef)>; 2] = [Vec::new(), Vec::new()];
            for (slot, child) in [left, right].into_iter().enumerate() {
                let Some(c) = child else { continue };
                match self.nodes[c as usize].bucket {
                    None => child_versions[slot] = versions[c as usize].clone(),
                    Some(b) => {
                        let bucket = &self.buckets[b as usize];
                        let heads: Vec<(u32, f64)> =
                            bucket.catalog.layers().iter().flatten().map(|p| (p.rank, p.y)).collect();
                        let mut list = Vec::with_capacity(heads.len());
                        for (rank, y) in heads {
                            let h = *pseudo.entry((b, rank)).or_insert_with(|| {
                                self.heaps[rank as usize].sift_down(
                                    HeapKey::Finite(y),
                                    HeapPayload::Bucket(b),
                                    bucket.root,
                                    None,
                                    None,
                                )
                            });
                            if let Some(h) = h {
                                list.push((rank, h));
                            }
                        }
                        list.sort_unstable_by_key(|e| e.0);
                        child_versions[slot] = list;
                    }
                }
            }
            let mut ranks: Vec<u32> = child_versions.iter().flatten().map(|e| e.0).collect();
            ranks.push(own_rank);
            ranks.sort_unstable();
            ranks.dedup();
            let lookup = |list: &[(u32, HeapRef)], r: u32| {
                list.binary_search_by_key(&r, |e| e.0).ok().map(|i| list[i].1)
            };
            let mut mine = Vec::with_capacity(ranks.len());
            for r in ranks {
                let key = if r == own_rank { HeapKey::Finite(point.y) } else { HeapKey::Bottom };
                let l = lookup(&child_versions[0], r);
                let rr = lookup(&child_versions[1], r);
                let heap = &mut self.heaps[r as usize];
                if let Some(h) = heap.sift_down(key, HeapPayload::Point(id as NodeId), id as u32, l, rr) {
                    heap.set_version(id, Some(h));
                    mine.push((r, h));
                }
            }
            let entries: Vec<(u32, f64, HeapRef)> =
                mine.iter().map(|&(r, h)| (r, self.heaps[r as usize].node(h).key, h)).collect();
            let catalog = MaximaCatalog::build_catalog(&entries, self.m)?;
            self.nodes[id].catalog = Some(self.catalogs.len() as u32);
            self.catalogs.push(catalog);
            versions[id] = mine;
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn total_weight(&self) -> TotalWeight {
        self.total_weight
    }

    pub fn switch_depth(&self) -> u32 {
        self.switch_depth
    }

    /// Ranks are in `[0, rank_domain())`.
    pub fn rank_domain(&self) -> u32 {
        self.m
    }

    pub fn root(&self) -> Option<NodeId> {
        self.root
    }

    pub fn node(&self, id: NodeId) -> &PrtNode {
        &self.nodes[id as usize]
    }

    pub fn nodes(&self) -> &[PrtNode] {
        &self.nodes
    }

    pub fn buckets(&self) -> &[Bucket] {
        &self.buckets
    }

    pub fn bucket(&self, b: BucketId) -> &Bucket {
        &self.buckets[b as usize]
    }

    pub fn catalog(&self, id: NodeId) -> Option<&MaximaCatalog<HeapRef>> {
        self.nodes[id as usize].catalog.map(|c| &self.catalogs[c as usize])
    }

    pub fn heap(&self, rank: u32) -> &PersistentHeap<HeapPayload> {
        &self.heaps[rank as usize]
    }

    pub(crate) fn bucket_rooted_at(&self, id: NodeId) -> Option<BucketId> {
        let b = self.nodes[id as usize].bucket?;
        (self.buckets[b as usize].root == id).then_some(b)
    }

    /// Deepest level that can hold a point of rank ≥ `rank`, or −1 when none can.
    pub fn depth_limit(&self, rank: u32) -> i64 {
        if self.n == 0 {
            return -1;
        }
        let c = DEPTH_LIMIT_CONSTANT as f64;
        let bound = c * (self.total_weight.log2() - rank as f64) + c;
        if bound < 0.0 {
            -1
        } else {
            (bound + 1e-9).floor() as i64
        }
    }

    pub fn space(&self) -> SpaceCensus {
        let sum = |it: &mut dyn Iterator<Item = CatalogSpace>| it.map(|s| s.total()).sum::<usize>();
        SpaceCensus {
            tree_nodes: self.nodes.len(),
            heap_nodes: self.heaps.iter().map(PersistentHeap::allocated_nodes).sum(),
            catalog_cells: sum(&mut self.catalogs.iter().map(MaximaCatalog::space)),
            bucket_cells: sum(&mut self.buckets.iter().map(|b| b.catalog.space())),
        }
    }

    /// Points at a depth beyond `3·log₂(W/w) + 3`, or beyond `log₂(W/w)`
    /// above the switch depth.
    pub fn depth_violations(&self) -> Vec<(WeightedPoint, u32)> {
        let c = DEPTH_LIMIT_CONSTANT as f64;
        let log_w = self.total_weight.log2();
        self.nodes
            .iter()
            .filter(|node| {
                let p = &node.point;
                let hybrid = node.depth as f64 <= c * (log_w - (p.w as f64).log2()) + c + 1e-9;
                let strict = node.depth >= self.switch_depth || within_log_bound(node.depth, p.w, self.total_weight);
                !(hybrid && strict)
            })
            .map(|node| (node.point, node.depth))
            .collect()
    }

    /// Structural audit: heap and search order, strategy and bucket
    /// placement, completeness below the switch depth, depth bounds, and
    /// catalog contents against the heap versions.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        if let Some((p, d)) = self.depth_violations().first() {
            return Err(format!("point {} (w={}) sits too deep at {d}", p.id, p.w));
        }
        let Some(root) = self.root else { return Ok(()) };
        let mut stack = vec![(root, f64::NEG_INFINITY, f64::INFINITY)];
        let mut seen = 0usize;
        while let Some((id, lo, hi)) = stack.pop() {
            seen += 1;
            let node = &self.nodes[id as usize];
            if node.point.x < lo || node.point.x > hi {
                return Err(format!("point {} breaks search order", node.point.id));
            }
            let want = if node.depth < self.switch_depth { Strategy::ByWeight } else { Strategy::BySize };
            if node.strategy != want {
                return Err(format!("node {id} has the wrong strategy"));
            }
            if node.bucket.is_some() == node.catalog.is_some() {
                return Err(format!("node {id}: catalog present iff outside a bucket"));
            }
            if node.strategy == Strategy::BySize {
                let l = node.left.map_or(0, |c| self.nodes[c as usize].size as usize);
                if l != complete_left_size(node.size as usize) {
                    return Err(format!("split-by-size subtree at {id} is not complete"));
                }
            }
            for (child, lo, hi) in [(node.left, lo, node.split_key), (node.right, node.split_key, hi)] {
                if let Some(c) = child {
                    if self.nodes[c as usize].point.w > node.point.w {
                        return Err(format!("heap order on weight broken below node {id}"));
                    }
                    stack.push((c, lo, hi));
                }
            }
            if let Some(cat) = self.catalog(id) {
                cat.check_invariants()?;
                for p in cat.layers().iter().flatten() {
                    let h = self.heaps[p.rank as usize].node(p.origin);
                    if h.key != p.y {
                        return Err(format!("catalog of node {id} disagrees with its heap root"));
                    }
                }
            }
        }
        if seen != self.n {
            return Err("tree does not reach every point".into());
        }
        for b in &self.buckets {
            if b.members.len() as f64 > self.bucket_max {
                return Err(format!("bucket at node {} is oversized", b.root));
            }
        }
        Ok(())
    }
}
