use std::collections::HashSet;
use std::ops::ControlFlow;

use super::query::{Event, Marks, PathCursor};
use super::{BucketId, HeapPayload, NodeId, PriorityRangeTree, RankPriorityQueue};
use crate::error::{Error, Result};
use crate::maxima::LayerPos;
use crate::types::{QueryCounters, ThreeSidedRange, WeightedPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Owner {
    Node(NodeId),
    Bucket(BucketId),
}

#[derive(Debug, Clone, Copy)]
enum Item {
    /// A single point known to lie in range.
    Node(NodeId),
    /// A catalog entry of a fringe subtree; its rank has in-range points.
    Entry { owner: Owner, pos: LayerPos, head: bool },
}

/// One three-sided search taking part in a top-k run.
#[derive(Debug)]
pub(crate) struct Side<'a> {
    tree: &'a PriorityRangeTree,
    range: ThreeSidedRange,
    cursor: PathCursor,
    reported: Marks,
    queued: HashSet<NodeId>,
}

/// Top-k over one or more disjoint three-sided searches sharing a single
/// rank queue. No side is explored past the depth that could still hold
/// a point outranking the queue's current maximum.
#[derive(Debug)]
pub(crate) struct TopKRun<'a> {
    sides: Vec<Side<'a>>,
    pq: RankPriorityQueue<(usize, Item)>,
    k: usize,
    out: Vec<(usize, WeightedPoint)>,
    counters: QueryCounters,
}

impl<'a> TopKRun<'a> {
    pub(crate) fn new(searches: Vec<(&'a PriorityRangeTree, ThreeSidedRange)>, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroK);
        }
        let m = searches.iter().map(|(t, _)| t.rank_domain()).max().unwrap_or(0);
        let sides = searches
            .into_iter()
            .map(|(tree, range)| Side {
                tree,
                range,
                cursor: PathCursor::new(tree),
                reported: Marks::default(),
                queued: HashSet::new(),
            })
            .collect();
        Ok(TopKRun { sides, pq: RankPriorityQueue::new(m), k, out: Vec::new(), counters: QueryCounters::default() })
    }

    pub(crate) fn counters(&self) -> QueryCounters {
        let mut c = self.counters;
        c.pq_operations = self.pq.operations();
        c
    }

    /// Reported points tagged with their side, in non-increasing rank order.
    pub(crate) fn into_points(self) -> Vec<(usize, WeightedPoint)> {
        self.out
    }

    pub(crate) fn run(&mut self) -> Result<()> {
        while self.out.len() < self.k {
            self.explore()?;
            let Some((_, (s, item))) = self.pq.extract_max() else { break };
            self.extract(s, item)?;
        }
        Ok(())
    }

    /// Advances every side until all nodes that might hold a point ranked
    /// above the queue's maximum have been seen.
    fn explore(&mut self) -> Result<()> {
        loop {
            let mut progressed = false;
            for s in 0..self.sides.len() {
                let limit = match self.pq.max_rank() {
                    None => i64::MAX,
                    Some(r) => self.sides[s].tree.depth_limit(r + 1),
                };
                let side = &mut self.sides[s];
                let Some(event) = side.cursor.next(side.tree, &side.range, limit, 0, &mut self.counters) else {
                    continue;
                };
                progressed = true;
                self.absorb(s, event);
            }
            if !progressed {
                return Ok(());
            }
        }
    }

    fn absorb(&mut self, s: usize, event: Event) {
        let side = &mut self.sides[s];
        let tree = side.tree;
        let q_y = side.range.y;
        match event {
            Event::Point(v) => {
                if side.range.contains(&tree.node(v).point) {
                    Self::queue_node(&mut self.pq, side, s, v);
                }
            }
            Event::Bucket(b) => {
                for &u in &tree.bucket(b).members {
                    self.counters.tree_nodes_visited += 1;
                    if side.range.contains(&tree.node(u).point) {
                        Self::queue_node(&mut self.pq, side, s, u);
                    }
                }
            }
            Event::Fringe(c) => {
                let (owner, cat_head) = match tree.bucket_rooted_at(c) {
                    Some(b) => (Owner::Bucket(b), tree.bucket(b).catalog.layer_head(0, q_y, &mut self.counters)),
                    None => {
                        let cat = tree.catalog(c).expect("skeleton nodes carry catalogs");
                        (Owner::Node(c), cat.layer_head(0, q_y, &mut self.counters))
                    }
                };
                if let Some(pos) = cat_head {
                    let rank = Self::entry_rank(tree, owner, pos);
                    self.pq.insert(rank, (s, Item::Entry { owner, pos, head: true }));
                }
            }
        }
    }

    fn queue_node(pq: &mut RankPriorityQueue<(usize, Item)>, side: &mut Side<'_>, s: usize, v: NodeId) {
        if !side.reported.contains(v) && side.queued.insert(v) {
            pq.insert(side.tree.node(v).point.rank().get(), (s, Item::Node(v)));
        }
    }

    fn entry_rank(tree: &PriorityRangeTree, owner: Owner, pos: LayerPos) -> u32 {
        match owner {
            Owner::Node(c) => tree.catalog(c).expect("skeleton catalog").point(pos).rank,
            Owner::Bucket(b) => tree.bucket(b).catalog.point(pos).rank,
        }
    }

    fn report(&mut self, s: usize, v: NodeId) {
        if self.out.len() < self.k && self.sides[s].reported.mark(v) {
            self.out.push((s, self.sides[s].tree.node(v).point));
        }
    }

    fn extract(&mut self, s: usize, item: Item) -> Result<()> {
        let (owner, pos, head) = match item {
            Item::Node(v) => {
                self.report(s, v);
                return Ok(());
            }
            Item::Entry { owner, pos, head } => (owner, pos, head),
        };
        let tree = self.sides[s].tree;
        let q_y = self.sides[s].range.y;
        // Successors: the next lower rank on this layer, and for a layer
        // head, the head of the layer below.
        if pos.index > 0 {
            let prev = LayerPos { layer: pos.layer, index: pos.index - 1 };
            self.counters.catalog_entries_scanned += 1;
            self.pq.insert(Self::entry_rank(tree, owner, prev), (s, Item::Entry { owner, pos: prev, head: false }));
        }
        if head {
            let below = pos.layer as usize + 1;
            let next = match owner {
                Owner::Node(c) => tree.catalog(c).expect("skeleton catalog").layer_head(below, q_y, &mut self.counters),
                Owner::Bucket(b) => tree.bucket(b).catalog.layer_head(below, q_y, &mut self.counters),
            };
            if let Some(p) = next {
                self.pq.insert(Self::entry_rank(tree, owner, p), (s, Item::Entry { owner, pos: p, head: true }));
            }
        }

        let rank = Self::entry_rank(tree, owner, pos);
        match owner {
            Owner::Bucket(b) => {
                for &(_, u) in tree.bucket(b).catalog.walk_same_rank(rank, q_y)? {
                    if self.out.len() >= self.k {
                        break;
                    }
                    self.counters.catalog_entries_scanned += 1;
                    self.report(s, u);
                }
            }
            Owner::Node(c) => {
                let root = tree.catalog(c).expect("skeleton catalog").point(pos).origin;
                let room = self.k - self.out.len();
                let mut found: Vec<NodeId> = Vec::new();
                let mut sites: Vec<NodeId> = Vec::new();
                let mut chain_steps = 0u64;
                let mut failure = None;
                let reported = &self.sides[s].reported;
                let mut local = HashSet::new();
                let mut fresh = |v: NodeId, found: &mut Vec<NodeId>| {
                    if !reported.contains(v) && local.insert(v) {
                        found.push(v);
                    }
                };
                tree.heap(rank).descend(Some(root), q_y, &mut self.counters, |h| {
                    match h.payload {
                        HeapPayload::Point(v) => fresh(v, &mut found),
                        HeapPayload::Bucket(b) => match tree.bucket(b).catalog.walk_same_rank(rank, q_y) {
                            Ok(chain) => {
                                for &(_, u) in chain {
                                    chain_steps += 1;
                                    fresh(u, &mut found);
                                    if found.len() >= room {
                                        break;
                                    }
                                }
                            }
                            Err(e) => {
                                failure = Some(e);
                                return ControlFlow::Break(());
                            }
                        },
                    }
                    sites.push(h.site);
                    if found.len() >= room {
                        ControlFlow::Break(())
                    } else {
                        ControlFlow::Continue(())
                    }
                });
                if let Some(e) = failure {
                    return Err(e);
                }
                self.counters.catalog_entries_scanned += chain_steps;
                for v in found {
                    self.report(s, v);
                }
                // Tree nodes co-located with the visited heap nodes.
                for v in sites {
                    let side = &mut self.sides[s];
                    if tree.node(v).point.y >= q_y {
                        Self::queue_node(&mut self.pq, side, s, v);
                    }
                }
            }
        }
        Ok(())
    }
}
