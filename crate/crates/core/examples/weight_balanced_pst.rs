//! The one-dimensional weight-balanced priority search tree: heavy points
//! sit near the root, so interval queries for heavy points stop early.
//!
//! cargo run --example weight_balanced_pst

use prtree::{WbPst, WeightedPoint};

fn main() -> prtree::Result<()> {
    let points: Vec<WeightedPoint> = (0..32u64)
        .map(|i| WeightedPoint::new(i, i as f64, 0.0, if i % 8 == 3 { 1 << 10 } else { 1 + i % 5 }))
        .collect::<Result<_, _>>()?;
    let tree = WbPst::build(&points)?;
    let total = tree.total_weight();
    println!("W = {}", total.get());
    for (p, depth) in tree.depths().filter(|(p, _)| p.w >= 4) {
        let bound = (total.get() as f64 / p.w as f64).log2();
        println!("id {:>2} w {:>4} depth {depth} (bound {bound:.2})", p.id, p.w);
    }
    tree.check_invariants().expect("structure holds");

    for w in [1, 4, 1024] {
        let (hits, c) = tree.threshold_query_with_counters(4.0, 27.0, w);
        println!("[4, 27] with w >= {w}: {} points, {} nodes visited", hits.len(), c.tree_nodes_visited);
    }
    Ok(())
}
