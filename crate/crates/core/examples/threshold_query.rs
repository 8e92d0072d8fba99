//! Threshold reporting: every point in `[x1, x2] × [y, ∞)` whose weight
//! rank reaches that of the query weight.
//!
//! cargo run --example threshold_query

use prtree::{PriorityRangeTree, ThreeSidedRange, WeightedPoint};

fn main() -> prtree::Result<()> {
    let points = vec![
        WeightedPoint::new(1, 1.0, 5.0, 16)?,
        WeightedPoint::new(2, 2.0, 9.0, 2)?,
        WeightedPoint::new(3, 3.0, 4.0, 8)?,
        WeightedPoint::new(4, 4.0, 7.0, 1)?,
        WeightedPoint::new(5, 5.0, 1.0, 32)?,
        WeightedPoint::new(6, 6.0, 6.0, 4)?,
    ];
    let tree = PriorityRangeTree::build(&points)?;
    let range = ThreeSidedRange::new(2.0, 6.0, 3.0)?;

    for w in [1, 4, 8, 64] {
        let (hits, counters) = tree.threshold_query_with_counters(&range, w)?;
        let mut ids: Vec<u64> = hits.iter().map(|p| p.id).collect();
        ids.sort_unstable();
        println!("w = {w:>2}: ids {ids:?}, {} nodes and entries touched", counters.visits());
    }
    Ok(())
}
