//! Persistent heaps built by node copying.
//!
//! BuildHeap normally heapifies a complete binary tree in place. Here every
//! sift-down allocates fresh nodes for the positions it changes and links
//! back to the untouched subheaps of earlier stages, so after the run every
//! subtree of the base tree still owns a heap over exactly its own keys.
//!
//! `BOTTOM` keys (dummies) sink through the heap and vanish once they reach
//! the fringe, so an all-dummy subtree has no version node at all.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::types::QueryCounters;

pub type HeapRef = u32;

/// Heap key: a finite y or the `BOTTOM` dummy, which sorts below every y.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub enum HeapKey {
    Bottom,
    Finite(f64),
}

impl HeapKey {
    pub fn finite(self) -> Option<f64> {
        match self {
            HeapKey::Bottom => None,
            HeapKey::Finite(y) => Some(y),
        }
    }
}

/// A heap node. Only finite keys are ever stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PersistentHeapNode<P> {
    pub key: f64,
    pub payload: P,
    /// Base-tree position this node occupies.
    pub site: u32,
    pub left: Option<HeapRef>,
    pub right: Option<HeapRef>,
}

/// Append-only arena holding every version produced by a BuildHeap run.
#[derive(Debug, Clone)]
pub struct PersistentHeap<P> {
    nodes: Vec<PersistentHeapNode<P>>,
    version_roots: Vec<Option<HeapRef>>,
}

impl<P> Default for PersistentHeap<P> {
    fn default() -> Self {
        PersistentHeap { nodes: Vec::new(), version_roots: Vec::new() }
    }
}

impl<P: Copy> PersistentHeap<P> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Runs BuildHeap over a complete base tree, recording a version for
    /// every base node.
    pub fn build_persistent(base: &BaseTree<P>) -> Result<Self> {
        base.check_complete()?;
        let mut heap = PersistentHeap {
            nodes: Vec::with_capacity(2 * base.len()),
            version_roots: vec![None; base.len()],
        };
        if let Some(root) = base.root {
            // Post-order so both child versions exist before the parent sifts.
            let mut order = Vec::with_capacity(base.len());
            let mut stack = vec![(root, false)];
            while let Some((v, expanded)) = stack.pop() {
                if expanded {
                    order.push(v);
                    continue;
                }
                stack.push((v, true));
                let n = &base.nodes[v];
                for c in [n.right, n.left].into_iter().flatten() {
                    stack.push((c, false));
                }
            }
            for v in order {
                let n = &base.nodes[v];
                let l = n.left.and_then(|c| heap.version_roots[c]);
                let r = n.right.and_then(|c| heap.version_roots[c]);
                heap.version_roots[v] = heap.sift_down(n.key, n.payload, v as u32, l, r);
            }
        }
        Ok(heap)
    }

    /// One BuildHeap step: places `key` above the subheaps `left` and
    /// `right`, copying every node whose content changes. Returns the new
    /// version root, or `None` when the result holds no finite key.
    pub fn sift_down(
        &mut self,
        key: HeapKey,
        payload: P,
        site: u32,
        left: Option<HeapRef>,
        right: Option<HeapRef>,
    ) -> Option<HeapRef> {
        let larger = match (left, right) {
            (None, None) => None,
            (Some(l), None) => Some((l, true)),
            (None, Some(r)) => Some((r, false)),
            (Some(l), Some(r)) => {
                // Prefer the left child on equal keys.
                if self.nodes[r as usize].key > self.nodes[l as usize].key {
                    Some((r, false))
                } else {
                    Some((l, true))
                }
            }
        };
        match larger {
            None => match key {
                HeapKey::Bottom => None,
                HeapKey::Finite(y) => Some(self.alloc(y, payload, site, None, None)),
            },
            Some((child, is_left)) => {
                let c = self.nodes[child as usize];
                // No swap on equal keys.
                if HeapKey::Finite(c.key) <= key {
                    let y = key.finite().expect("a finite child rules out BOTTOM here");
                    return Some(self.alloc(y, payload, site, left, right));
                }
                let sunk = self.sift_down(key, payload, c.site, c.left, c.right);
                let (l, r) = if is_left { (sunk, right) } else { (left, sunk) };
                Some(self.alloc(c.key, c.payload, site, l, r))
            }
        }
    }

    /// Registers `root` as the version of base node `v`.
    pub fn set_version(&mut self, v: usize, root: Option<HeapRef>) {
        if self.version_roots.len() <= v {
            self.version_roots.resize(v + 1, None);
        }
        self.version_roots[v] = root;
    }

    fn alloc(&mut self, key: f64, payload: P, site: u32, left: Option<HeapRef>, right: Option<HeapRef>) -> HeapRef {
        let id = self.nodes.len() as HeapRef;
        self.nodes.push(PersistentHeapNode { key, payload, site, left, right });
        id
    }

    pub fn version_root(&self, v: usize) -> Option<HeapRef> {
        self.version_roots.get(v).copied().flatten()
    }

    pub fn node(&self, r: HeapRef) -> &PersistentHeapNode<P> {
        &self.nodes[r as usize]
    }

    pub fn allocated_nodes(&self) -> usize {
        self.nodes.len()
    }

    /// Payloads of all nodes with key ≥ `y` under version `v`, stopping
    /// after `limit` payloads.
    pub fn descend_report(&self, v: usize, y: f64, limit: Option<usize>) -> Vec<P> {
        let mut out = Vec::new();
        let mut counters = QueryCounters::default();
        self.descend(self.version_root(v), y, &mut counters, |n| {
            out.push(n.payload);
            if limit.is_some_and(|l| out.len() >= l) {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        out
    }

    /// Layer-by-layer walk from `root` through nodes with key ≥ `y`. Every
    /// inspected node, matching or not, is charged to `heap_nodes_visited`.
    pub fn descend<F>(&self, root: Option<HeapRef>, y: f64, counters: &mut QueryCounters, mut visit: F)
    where
        F: FnMut(&PersistentHeapNode<P>) -> ControlFlow<()>,
    {
        let mut stack: Vec<HeapRef> = root.into_iter().collect();
        while let Some(r) = stack.pop() {
            counters.heap_nodes_visited += 1;
            let n = &self.nodes[r as usize];
            if n.key < y {
                continue;
            }
            if visit(n).is_break() {
                return;
            }
            stack.extend(n.right);
            stack.extend(n.left);
        }
    }

    /// Finite keys reachable from `root`, in no particular order.
    pub fn keys_under(&self, root: Option<HeapRef>) -> Vec<f64> {
        let mut out = Vec::new();
        let mut stack: Vec<HeapRef> = root.into_iter().collect();
        while let Some(r) = stack.pop() {
            let n = &self.nodes[r as usize];
            out.push(n.key);
            stack.extend(n.left);
            stack.extend(n.right);
        }
        out
    }

    /// Whether every node reachable from `root` dominates its children.
    pub fn is_max_heap(&self, root: Option<HeapRef>) -> bool {
        let mut stack: Vec<HeapRef> = root.into_iter().collect();
        while let Some(r) = stack.pop() {
            let n = &self.nodes[r as usize];
            for c in [n.left, n.right].into_iter().flatten() {
                if self.nodes[c as usize].key > n.key {
                    return false;
                }
                stack.push(c);
            }
        }
        true
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BaseNode<P> {
    pub key: HeapKey,
    pub payload: P,
    pub left: Option<usize>,
    pub right: Option<usize>,
}

/// Linked binary tree whose keys seed a BuildHeap run.
#[derive(Debug, Clone, PartialEq)]
pub struct BaseTree<P> {
    pub nodes: Vec<BaseNode<P>>,
    pub root: Option<usize>,
}

impl<P: Copy> BaseTree<P> {
    /// Complete tree in level order: node `i` has children `2i+1` and `2i+2`.
    pub fn from_level_order(items: &[(HeapKey, P)]) -> Self {
        let n = items.len();
        let nodes = items
            .iter()
            .enumerate()
            .map(|(i, &(key, payload))| BaseNode {
                key,
                payload,
                left: (2 * i + 1 < n).then_some(2 * i + 1),
                right: (2 * i + 2 < n).then_some(2 * i + 2),
            })
            .collect();
        BaseTree { nodes, root: (n > 0).then_some(0) }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Every level full except possibly the last, which fills left to right.
    pub fn check_complete(&self) -> Result<()> {
        let Some(root) = self.root else {
            return if self.nodes.is_empty() {
                Ok(())
            } else {
                Err(Error::NotComplete("nodes without a root".into()))
            };
        };
        let mut queue = std::collections::VecDeque::from([root]);
        let mut seen = 0usize;
        let mut gap = false;
        while let Some(v) = queue.pop_front() {
            seen += 1;
            if seen > self.nodes.len() {
                return Err(Error::NotComplete("cycle".into()));
            }
            let n = &self.nodes[v];
            for c in [n.left, n.right] {
                match c {
                    Some(c) if gap => {
                        return Err(Error::NotComplete(format!("node {c} follows a missing position")));
                    }
                    Some(c) => queue.push_back(c),
                    None => gap = true,
                }
            }
        }
        if seen != self.nodes.len() {
            return Err(Error::NotComplete("unreachable nodes".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(keys: &[f64]) -> BaseTree<usize> {
        let items: Vec<_> = keys.iter().enumerate().map(|(i, &k)| (HeapKey::Finite(k), i)).collect();
        BaseTree::from_level_order(&items)
    }

    #[test]
    fn bottom_sorts_below_everything() {
        assert!(HeapKey::Bottom < HeapKey::Finite(f64::MIN));
        assert!(HeapKey::Bottom < HeapKey::Finite(f64::NEG_INFINITY));
    }

    #[test]
    fn single_node() {
        let h = PersistentHeap::build_persistent(&fin(&[5.0])).unwrap();
        let r = h.version_root(0).unwrap();
        assert_eq!(h.node(r).key, 5.0);
        assert!(h.allocated_nodes() <= 1);
    }

    #[test]
    fn three_nodes_by_hand() {
        let base = fin(&[1.0, 9.0, 4.0]);
        let snapshot = base.clone();
        let h = PersistentHeap::build_persistent(&base).unwrap();
        assert_eq!(h.node(h.version_root(0).unwrap()).key, 9.0);
        assert_eq!(h.node(h.version_root(1).unwrap()).key, 9.0);
        assert_eq!(h.node(h.version_root(2).unwrap()).key, 4.0);
        // Root version: 9 on top, 1 sunk into the left slot, 4 shared.
        let root = h.node(h.version_root(0).unwrap());
        assert_eq!(root.left.map(|l| h.node(l).key), Some(1.0));
        assert_eq!(root.right, h.version_root(2));
        assert_eq!(base, snapshot);
        // Two leaves, one root copy and one sunk copy.
        assert_eq!(h.allocated_nodes(), 4);
    }

    #[test]
    fn seven_nodes_version_roots_are_subtree_maxima() {
        let keys = [3.0, 8.0, 1.0, 2.0, 7.0, 6.0, 9.0];
        let h = PersistentHeap::build_persistent(&fin(&keys)).unwrap();
        // Subtree maxima by hand: 0 → 9, 1 → {8,2,7} → 8, 2 → {1,6,9} → 9.
        let want = [9.0, 8.0, 9.0, 2.0, 7.0, 6.0, 9.0];
        for (v, w) in want.iter().enumerate() {
            assert_eq!(h.node(h.version_root(v).unwrap()).key, *w, "version {v}");
        }
    }

    #[test]
    fn bottom_only_subtree_has_no_version() {
        let base = BaseTree::from_level_order(&[(HeapKey::Bottom, 0usize)]);
        let h = PersistentHeap::build_persistent(&base).unwrap();
        assert_eq!(h.version_root(0), None);
        assert!(h.descend_report(0, f64::NEG_INFINITY, None).is_empty());
    }

    #[test]
    fn bottom_sinks_out_of_the_heap() {
        let base = BaseTree::from_level_order(&[
            (HeapKey::Bottom, 0usize),
            (HeapKey::Finite(4.0), 1),
            (HeapKey::Finite(2.0), 2),
        ]);
        let h = PersistentHeap::build_persistent(&base).unwrap();
        let mut keys = h.keys_under(h.version_root(0));
        keys.sort_by(f64::total_cmp);
        assert_eq!(keys, vec![2.0, 4.0]);
    }

    #[test]
    fn descend_examples() {
        let h = PersistentHeap::build_persistent(&fin(&[9.0, 7.0, 4.0])).unwrap();
        let mut got = h.descend_report(0, 5.0, None);
        got.sort_unstable();
        assert_eq!(got, vec![0, 1]);
        let got = h.descend_report(0, 0.0, Some(1));
        assert_eq!(got, vec![0]);
    }

    #[test]
    fn descend_visits_at_most_two_per_report_plus_one() {
        let keys: Vec<f64> = (0..255).map(|i| ((i * 37) % 101) as f64).collect();
        let h = PersistentHeap::build_persistent(&fin(&keys)).unwrap();
        for y in [0.0, 30.0, 60.0, 90.0, 100.0, 200.0] {
            let mut c = QueryCounters::default();
            let mut k = 0u64;
            h.descend(h.version_root(0), y, &mut c, |_| {
                k += 1;
                ControlFlow::Continue(())
            });
            assert!(c.heap_nodes_visited <= 2 * k + 1);
        }
    }

    #[test]
    fn non_complete_rejected() {
        let mut base = fin(&[1.0, 2.0, 3.0, 4.0]);
        // Move the only grandchild to the right slot of node 1.
        base.nodes[1].left = None;
        base.nodes[1].right = Some(3);
        assert!(matches!(PersistentHeap::build_persistent(&base), Err(Error::NotComplete(_))));

        let mut base = fin(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        base.nodes[1].right = None;
        base.nodes[1].left = None;
        base.nodes[2].left = Some(3);
        assert!(PersistentHeap::build_persistent(&base).is_err());
    }

    #[test]
    fn level_order_trees_are_complete() {
        for n in 0..40 {
            let keys: Vec<f64> = (0..n).map(|i| i as f64).collect();
            assert!(fin(&keys).check_complete().is_ok(), "n = {n}");
        }
    }
}
