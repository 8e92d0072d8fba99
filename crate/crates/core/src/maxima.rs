//! Layers of maxima over small `(rank, y)` catalogs.
//!
//! Points are peeled into staircases: layer 0 holds the points no other
//! point dominates, layer 1 the maxima of what remains, and so on. Within a
//! layer ranks increase while y strictly decreases. A point dominates
//! another when its rank is larger and its y is at least as large.
//!
//! Two navigation aids sit on top of the layers:
//!
//! * a bottom-to-top fractional cascade. Each augmented layer is the real
//!   layer merged with every other entry of the augmented layer below, and
//!   copies carry a bridge down. With the `top_entry` array (one slot per
//!   rank) a domination query enters the top layer in O(1) and reaches each
//!   lower layer with O(1) extra steps;
//! * `right_entries`, the top layer keyed by y, which answers maximization
//!   queries by one binary search.
//!
//! Bucket catalogs additionally keep every point of each rank in a
//! y-descending chain so a walk can continue below the chain head.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::types::QueryCounters;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatalogPoint<O> {
    pub rank: u32,
    pub y: f64,
    pub origin: O,
    /// Set on fractional-cascading copies.
    pub copied: bool,
}

#[derive(Debug, Clone, Copy)]
struct AugEntry {
    rank: u32,
    /// Index into the real layer, or `NONE` for a copy.
    real: u32,
    /// For a copy: its index in the augmented layer below.
    bridge: u32,
    /// First real entry at or after this position (index into the real layer).
    next_real: u32,
    /// Bridge of the first copy at or after this position.
    next_bridge: u32,
}

/// Position of a point inside the layer structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LayerPos {
    pub layer: u32,
    pub index: u32,
}

#[derive(Debug, Clone)]
pub struct MaximaCatalog<O> {
    m: u32,
    layers: Vec<Vec<CatalogPoint<O>>>,
    augmented: Vec<Vec<AugEntry>>,
    top_entry: Vec<u32>,
    /// `(y, index into layer 0)`, y descending.
    right_entries: Vec<(f64, u32)>,
    chains: Option<BTreeMap<u32, Vec<(f64, O)>>>,
}

/// Cells used by a catalog, for space accounting.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CatalogSpace {
    pub points: usize,
    pub augmented_entries: usize,
    pub right_entries: usize,
    pub top_entry_slots: usize,
    pub chain_entries: usize,
}

impl CatalogSpace {
    /// Entries of the two cascades.
    pub fn cascaded(&self) -> usize {
        self.augmented_entries + self.right_entries
    }

    pub fn total(&self) -> usize {
        self.augmented_entries + self.right_entries + self.top_entry_slots + self.chain_entries
    }
}

impl<O: Copy> MaximaCatalog<O> {
    /// Builds a catalog over points with ranks in `[0, m)`, one point per rank.
    pub fn build_catalog(points: &[(u32, f64, O)], m: u32) -> Result<Self> {
        let mut seen = vec![false; m as usize];
        for &(rank, y, _) in points {
            if rank >= m {
                return Err(Error::RankOutOfDomain { rank, m });
            }
            if seen[rank as usize] {
                return Err(Error::DuplicateRank(rank));
            }
            if y.is_nan() {
                return Err(Error::InvalidRange("NaN y in catalog".into()));
            }
            seen[rank as usize] = true;
        }
        Ok(Self::assemble(points.to_vec(), m, None))
    }

    /// Builds a bucket catalog: any number of points per rank. The catalog
    /// proper holds the highest point of each rank; the rest stay reachable
    /// through [`walk_same_rank`](Self::walk_same_rank).
    pub fn build_bucket_catalog(points: &[(u32, f64, O)], m: u32) -> Result<Self> {
        let mut chains: BTreeMap<u32, Vec<(f64, O)>> = BTreeMap::new();
        for &(rank, y, origin) in points {
            if rank >= m {
                return Err(Error::RankOutOfDomain { rank, m });
            }
            if y.is_nan() {
                return Err(Error::InvalidRange("NaN y in catalog".into()));
            }
            chains.entry(rank).or_default().push((y, origin));
        }
        for chain in chains.values_mut() {
            // Stable: equal y keeps input order.
            chain.sort_by(|a, b| b.0.total_cmp(&a.0));
        }
        let heads: Vec<_> = chains.iter().map(|(&r, c)| (r, c[0].0, c[0].1)).collect();
        Ok(Self::assemble(heads, m, Some(chains)))
    }

    fn assemble(mut points: Vec<(u32, f64, O)>, m: u32, chains: Option<BTreeMap<u32, Vec<(f64, O)>>>) -> Self {
        // Peel: scan by rank descending. A point lands on the first layer
        // whose highest y so far is below it; the layers' highest ys stay
        // strictly decreasing with the layer index.
        points.sort_by_key(|p| std::cmp::Reverse(p.0));
        let mut layers: Vec<Vec<CatalogPoint<O>>> = Vec::new();
        let mut layer_top: Vec<f64> = Vec::new();
        for (rank, y, origin) in points {
            let i = layer_top.partition_point(|&top| top >= y);
            let p = CatalogPoint { rank, y, origin, copied: false };
            if i == layers.len() {
                layers.push(vec![p]);
                layer_top.push(y);
            } else {
                layers[i].push(p);
                layer_top[i] = y;
            }
        }
        for layer in &mut layers {
            layer.reverse();
        }

        let augmented = Self::cascade(&layers);
        let top_entry = match augmented.first() {
            Some(top) => (0..m).map(|r| top.partition_point(|e| e.rank < r) as u32).collect(),
            None => vec![0; m as usize],
        };
        let right_entries = layers
            .first()
            .map(|l| l.iter().enumerate().map(|(i, p)| (p.y, i as u32)).collect())
            .unwrap_or_default();

        MaximaCatalog { m, layers, augmented, top_entry, right_entries, chains }
    }

    fn cascade(layers: &[Vec<CatalogPoint<O>>]) -> Vec<Vec<AugEntry>> {
        let mut augmented: Vec<Vec<AugEntry>> = vec![Vec::new(); layers.len()];
        for i in (0..layers.len()).rev() {
            let real = layers[i].iter().enumerate().map(|(j, p)| AugEntry {
                rank: p.rank,
                real: j as u32,
                bridge: NONE,
                next_real: NONE,
                next_bridge: NONE,
            });
            let mut merged: Vec<AugEntry> = if i + 1 < layers.len() {
                // Every other entry of the layer below, starting from its lowest rank.
                let copies = augmented[i + 1].iter().enumerate().step_by(2).map(|(j, e)| AugEntry {
                    rank: e.rank,
                    real: NONE,
                    bridge: j as u32,
                    next_real: NONE,
                    next_bridge: NONE,
                });
                let mut v: Vec<AugEntry> = real.chain(copies).collect();
                v.sort_by_key(|e| e.rank);
                v
            } else {
                real.collect()
            };
            let mut next_real = layers[i].len() as u32;
            let mut next_bridge = NONE;
            for e in merged.iter_mut().rev() {
                if e.real != NONE {
                    next_real = e.real;
                } else {
                    next_bridge = e.bridge;
                }
                e.next_real = next_real;
                e.next_bridge = next_bridge;
            }
            augmented[i] = merged;
        }
        augmented
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn layer_count(&self) -> usize {
        self.layers.len()
    }

    pub fn layer(&self, i: usize) -> &[CatalogPoint<O>] {
        &self.layers[i]
    }

    pub fn layers(&self) -> &[Vec<CatalogPoint<O>>] {
        &self.layers
    }

    pub fn point(&self, pos: LayerPos) -> &CatalogPoint<O> {
        &self.layers[pos.layer as usize][pos.index as usize]
    }

    /// The augmented layer `i`, copies included.
    pub fn augmented_layer(&self, i: usize) -> Vec<CatalogPoint<O>> {
        self.augmented[i]
            .iter()
            .map(|e| {
                if e.real != NONE {
                    self.layers[i][e.real as usize]
                } else {
                    let below = &self.augmented[i + 1][e.bridge as usize];
                    let mut p = self.resolve(i + 1, below);
                    p.copied = true;
                    p
                }
            })
            .collect()
    }

    fn resolve(&self, layer: usize, e: &AugEntry) -> CatalogPoint<O> {
        if e.real != NONE {
            self.layers[layer][e.real as usize]
        } else {
            self.resolve(layer + 1, &self.augmented[layer + 1][e.bridge as usize])
        }
    }

    pub fn space(&self) -> CatalogSpace {
        CatalogSpace {
            points: self.len(),
            augmented_entries: self.augmented.iter().map(Vec::len).sum(),
            right_entries: self.right_entries.len(),
            top_entry_slots: self.top_entry.len(),
            chain_entries: self
                .chains
                .as_ref()
                .map(|c| c.values().map(Vec::len).sum())
                .unwrap_or(0),
        }
    }

    /// Origins of every point with rank ≥ `q_rank` and y ≥ `q_y`.
    pub fn domination_query(&self, q_rank: u32, q_y: f64) -> Vec<O> {
        let mut c = QueryCounters::default();
        self.domination_positions(q_rank, q_y, &mut c)
            .into_iter()
            .map(|p| self.point(p).origin)
            .collect()
    }

    /// Domination query returning layer positions. Each catalog entry
    /// touched is charged to `catalog_entries_scanned`.
    pub fn domination_positions(&self, q_rank: u32, q_y: f64, counters: &mut QueryCounters) -> Vec<LayerPos> {
        let mut out = Vec::new();
        if q_rank >= self.m || self.layers.is_empty() {
            return out;
        }
        let mut pos = self.top_entry[q_rank as usize] as usize;
        counters.catalog_entries_scanned += 1;
        for i in 0..self.layers.len() {
            let aug = &self.augmented[i];
            let layer = &self.layers[i];
            let mut j = if pos < aug.len() { aug[pos].next_real as usize } else { layer.len() };
            let before = out.len();
            while j < layer.len() {
                counters.catalog_entries_scanned += 1;
                if layer[j].y < q_y {
                    break;
                }
                out.push(LayerPos { layer: i as u32, index: j as u32 });
                j += 1;
            }
            // A layer without answers has nothing below it either: every
            // lower point is dominated by one on this layer.
            if out.len() == before || i + 1 == self.layers.len() {
                break;
            }
            let below = &self.augmented[i + 1];
            let mut p = if pos < aug.len() && aug[pos].next_bridge != NONE {
                aug[pos].next_bridge as usize
            } else {
                below.len()
            };
            counters.catalog_entries_scanned += 1;
            while p > 0 && below[p - 1].rank >= q_rank {
                counters.catalog_entries_scanned += 1;
                p -= 1;
            }
            pos = p;
        }
        out
    }

    /// A point of maximum rank among those with y strictly above `q_y`.
    pub fn maximization_query(&self, q_y: f64) -> Option<&CatalogPoint<O>> {
        let mut c = QueryCounters::default();
        self.maximization_position(q_y, &mut c).map(|p| self.point(p))
    }

    pub fn maximization_position(&self, q_y: f64, counters: &mut QueryCounters) -> Option<LayerPos> {
        // The answer lies on the top layer: anything dominating it would
        // also clear q_y with a larger rank.
        let n = self.right_entries.len();
        counters.catalog_entries_scanned += (usize::BITS - n.leading_zeros()) as u64 + 1;
        let cut = self.right_entries.partition_point(|&(y, _)| y > q_y);
        (cut > 0).then(|| LayerPos { layer: 0, index: self.right_entries[cut - 1].1 })
    }

    /// Highest-rank point of layer `i` with y ≥ `q_y`. Qualifying points
    /// form a prefix of each layer.
    pub fn layer_head(&self, i: usize, q_y: f64, counters: &mut QueryCounters) -> Option<LayerPos> {
        let layer = self.layers.get(i)?;
        counters.catalog_entries_scanned += (usize::BITS - layer.len().leading_zeros()) as u64 + 1;
        let cut = layer.partition_point(|p| p.y >= q_y);
        (cut > 0).then(|| LayerPos { layer: i as u32, index: (cut - 1) as u32 })
    }

    pub fn is_augmented(&self) -> bool {
        self.chains.is_some()
    }

    /// Every bucket point sharing `rank` whose y is at least `q_y`, y descending.
    pub fn walk_same_rank(&self, rank: u32, q_y: f64) -> Result<&[(f64, O)]> {
        let chains = self.chains.as_ref().ok_or(Error::NotAugmented)?;
        let Some(chain) = chains.get(&rank) else {
            return Ok(&[]);
        };
        let cut = chain.partition_point(|&(y, _)| y >= q_y);
        Ok(&chain[..cut])
    }

    /// Checks the layer ordering, dominance between consecutive layers and
    /// the cascade bridges.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        for (i, layer) in self.layers.iter().enumerate() {
            for w in layer.windows(2) {
                if !(w[0].rank < w[1].rank && w[0].y > w[1].y) {
                    return Err(format!("layer {i} is not a staircase"));
                }
            }
            if i > 0 {
                for q in layer {
                    if !self.layers[i - 1].iter().any(|p| p.rank > q.rank && p.y >= q.y) {
                        return Err(format!("rank {} on layer {i} is not dominated from above", q.rank));
                    }
                }
            }
            let aug = &self.augmented[i];
            if aug.windows(2).any(|w| w[0].rank >= w[1].rank) {
                return Err(format!("augmented layer {i} not sorted"));
            }
            for e in aug.iter().filter(|e| e.real == NONE) {
                let target = &self.augmented[i + 1][e.bridge as usize];
                if target.rank != e.rank || e.bridge % 2 != 0 {
                    return Err(format!("bad bridge on layer {i}"));
                }
            }
        }
        Ok(())
    }
}
