use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};
use std::ops::ControlFlow;

use super::{BucketId, HeapPayload, NodeId, PriorityRangeTree, TopKRun};
use crate::error::Result;
use crate::types::{rank_threshold, QueryCounters, ThreeSidedRange, WeightedPoint};

/// Which bound a search path is tracking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Track {
    /// Shared prefix, before the paths for `x1` and `x2` part.
    Common,
    Low,
    High,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Pending {
    Path(Track),
    Fringe,
}

/// What the search hands to the caller next.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Event {
    /// A node on a search path; its point needs a membership test.
    Point(NodeId),
    /// A bucket entered by a search path; test every member.
    Bucket(BucketId),
    /// Root of a maximal subtree lying inside `[x1, x2]`.
    Fringe(NodeId),
}

/// Shallowest-first walk of the two search paths for `x1` and `x2`,
/// yielding path nodes and the fringe subtrees hanging off them.
#[derive(Debug, Clone)]
pub(crate) struct PathCursor {
    pending: BinaryHeap<Reverse<(u32, NodeId, Pending)>>,
}

impl PathCursor {
    pub(crate) fn new(tree: &PriorityRangeTree) -> Self {
        let mut pending = BinaryHeap::new();
        if let Some(r) = tree.root {
            pending.push(Reverse((0, r, Pending::Path(Track::Common))));
        }
        PathCursor { pending }
    }

    /// Next event at depth ≤ `limit`, skipping subtrees whose root rank is
    /// below `min_rank` (weights are heap ordered).
    pub(crate) fn next(
        &mut self,
        tree: &PriorityRangeTree,
        range: &ThreeSidedRange,
        limit: i64,
        min_rank: u32,
        counters: &mut QueryCounters,
    ) -> Option<Event> {
        loop {
            let &Reverse((depth, id, kind)) = self.pending.peek()?;
            if depth as i64 > limit {
                return None;
            }
            self.pending.pop();
            counters.tree_nodes_visited += 1;
            let node = tree.node(id);
            if node.point.rank().get() < min_rank {
                continue;
            }
            let track = match kind {
                Pending::Fringe => return Some(Event::Fringe(id)),
                Pending::Path(t) => t,
            };
            if let Some(b) = tree.bucket_rooted_at(id) {
                return Some(Event::Bucket(b));
            }
            let sk = node.split_key;
            let d = depth + 1;
            let mut push = |child: Option<NodeId>, kind| {
                if let Some(c) = child {
                    self.pending.push(Reverse((d, c, kind)));
                }
            };
            match track {
                Track::Common => {
                    if range.x1 <= sk && sk <= range.x2 {
                        push(node.left, Pending::Path(Track::Low));
                        push(node.right, Pending::Path(Track::High));
                    } else if range.x2 < sk {
                        push(node.left, Pending::Path(Track::Common));
                    } else {
                        push(node.right, Pending::Path(Track::Common));
                    }
                }
                Track::Low => {
                    if range.x1 <= sk {
                        push(node.right, Pending::Fringe);
                        push(node.left, Pending::Path(Track::Low));
                    } else {
                        push(node.right, Pending::Path(Track::Low));
                    }
                }
                Track::High => {
                    if range.x2 >= sk {
                        push(node.left, Pending::Fringe);
                        push(node.right, Pending::Path(Track::High));
                    } else {
                        push(node.left, Pending::Path(Track::High));
                    }
                }
            }
            return Some(Event::Point(id));
        }
    }
}

/// Query-local marks over node ids.
#[derive(Debug, Default)]
pub(crate) struct Marks {
    seen: HashSet<NodeId>,
}

impl Marks {
    /// True the first time `id` is marked.
    pub(crate) fn mark(&mut self, id: NodeId) -> bool {
        self.seen.insert(id)
    }

    pub(crate) fn contains(&self, id: NodeId) -> bool {
        self.seen.contains(&id)
    }
}

impl PriorityRangeTree {
    /// Points in `range` with rank at least `⌊log₂ w⌋`.
    pub fn threshold_query(&self, range: &ThreeSidedRange, w: u64) -> Result<Vec<WeightedPoint>> {
        Ok(self.threshold_query_with_counters(range, w)?.0)
    }

    pub fn threshold_query_with_counters(
        &self,
        range: &ThreeSidedRange,
        w: u64,
    ) -> Result<(Vec<WeightedPoint>, QueryCounters)> {
        let need = rank_threshold(w)?.get();
        let mut counters = QueryCounters::default();
        let mut out = Vec::new();
        let mut marks = Marks::default();
        let limit = self.depth_limit(need);
        let mut cursor = PathCursor::new(self);
        let q_y = range.y;
        let report = |id: NodeId, out: &mut Vec<WeightedPoint>, marks: &mut Marks| {
            if marks.mark(id) {
                out.push(self.node(id).point);
            }
        };
        while let Some(event) = cursor.next(self, range, limit, need, &mut counters) {
            match event {
                Event::Point(v) => {
                    let p = &self.node(v).point;
                    if range.contains(p) && p.rank().get() >= need {
                        report(v, &mut out, &mut marks);
                    }
                }
                Event::Bucket(b) => {
                    for &u in &self.bucket(b).members {
                        counters.tree_nodes_visited += 1;
                        let p = &self.node(u).point;
                        if range.contains(p) && p.rank().get() >= need {
                            report(u, &mut out, &mut marks);
                        }
                    }
                }
                Event::Fringe(c) => {
                    if let Some(b) = self.bucket_rooted_at(c) {
                        let cat = &self.bucket(b).catalog;
                        for pos in cat.domination_positions(need, q_y, &mut counters) {
                            let rank = cat.point(pos).rank;
                            for &(_, u) in cat.walk_same_rank(rank, q_y)? {
                                counters.catalog_entries_scanned += 1;
                                report(u, &mut out, &mut marks);
                            }
                        }
                        continue;
                    }
                    let cat = self.catalog(c).expect("skeleton nodes carry catalogs");
                    for pos in cat.domination_positions(need, q_y, &mut counters) {
                        let cp = cat.point(pos);
                        let (rank, root) = (cp.rank, cp.origin);
                        let mut found: Vec<NodeId> = Vec::new();
                        let mut chain_steps = 0u64;
                        let mut failure = None;
                        self.heap(rank).descend(Some(root), q_y, &mut counters, |h| {
                            match h.payload {
                                HeapPayload::Point(v) => found.push(v),
                                HeapPayload::Bucket(b) => match self.bucket(b).catalog.walk_same_rank(rank, q_y) {
                                    Ok(chain) => {
                                        chain_steps += chain.len() as u64 + 1;
                                        found.extend(chain.iter().map(|&(_, u)| u));
                                    }
                                    Err(e) => {
                                        failure = Some(e);
                                        return ControlFlow::Break(());
                                    }
                                },
                            }
                            // The tree node sharing this heap node's position.
                            let site = self.node(h.site);
                            if site.point.y >= q_y && site.point.rank().get() >= need {
                                found.push(h.site);
                            }
                            ControlFlow::Continue(())
                        });
                        if let Some(e) = failure {
                            return Err(e);
                        }
                        counters.catalog_entries_scanned += chain_steps;
                        for v in found {
                            report(v, &mut out, &mut marks);
                        }
                    }
                }
            }
        }
        Ok((out, counters))
    }

    /// A point of maximum rank in `range`, if any.
    pub fn max_report(&self, range: &ThreeSidedRange) -> Option<WeightedPoint> {
        self.max_report_with_counters(range).0
    }

    pub fn max_report_with_counters(&self, range: &ThreeSidedRange) -> (Option<WeightedPoint>, QueryCounters) {
        let mut counters = QueryCounters::default();
        let mut best: Option<WeightedPoint> = None;
        let mut cursor = PathCursor::new(self);
        // Inclusive y bound through the strict maximization query.
        let strict_y = range.y.next_down();
        loop {
            let (limit, floor) = match &best {
                None => (i64::MAX, 0),
                Some(p) => (self.depth_limit(p.rank().get() + 1), p.rank().get() + 1),
            };
            let Some(event) = cursor.next(self, range, limit, floor, &mut counters) else { break };
            let mut offer = |p: WeightedPoint| {
                if best.is_none_or(|b| p.rank() > b.rank()) {
                    best = Some(p);
                }
            };
            match event {
                Event::Point(v) => {
                    let p = self.node(v).point;
                    if range.contains(&p) {
                        offer(p);
                    }
                }
                Event::Bucket(b) => {
                    for &u in &self.bucket(b).members {
                        counters.tree_nodes_visited += 1;
                        let p = self.node(u).point;
                        if range.contains(&p) {
                            offer(p);
                        }
                    }
                }
                Event::Fringe(c) => {
                    if let Some(b) = self.bucket_rooted_at(c) {
                        let cat = &self.bucket(b).catalog;
                        if let Some(pos) = cat.maximization_position(strict_y, &mut counters) {
                            offer(self.node(cat.point(pos).origin).point);
                        }
                        continue;
                    }
                    let cat = self.catalog(c).expect("skeleton nodes carry catalogs");
                    if let Some(pos) = cat.maximization_position(strict_y, &mut counters) {
                        let cp = cat.point(pos);
                        counters.heap_nodes_visited += 1;
                        let h = self.heap(cp.rank).node(cp.origin);
                        let id = match h.payload {
                            HeapPayload::Point(v) => v,
                            HeapPayload::Bucket(b) => {
                                let chain = self.bucket(b).catalog.walk_same_rank(cp.rank, range.y).unwrap_or(&[]);
                                counters.catalog_entries_scanned += 1;
                                chain.first().expect("pseudo-leaf key is its chain head").1
                            }
                        };
                        offer(self.node(id).point);
                    }
                }
            }
        }
        (best, counters)
    }

    /// `min(k, |range ∩ P|)` points of highest rank in `range`, in
    /// non-increasing rank order.
    pub fn top_k(&self, range: &ThreeSidedRange, k: usize) -> Result<Vec<WeightedPoint>> {
        Ok(self.top_k_with_counters(range, k)?.0)
    }

    pub fn top_k_with_counters(&self, range: &ThreeSidedRange, k: usize) -> Result<(Vec<WeightedPoint>, QueryCounters)> {
        let mut run = TopKRun::new(vec![(self, *range)], k)?;
        run.run()?;
        let counters = run.counters();
        Ok((run.into_points().into_iter().map(|(_, p)| p).collect(), counters))
    }
}
