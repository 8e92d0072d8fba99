//! Top-k and max reporting over a generated Zipf workload.
//!
//! cargo run --release --example top_k

use prtree::gen::{Distribution, GeneratorSpec};
use prtree::{PriorityRangeTree, ThreeSidedRange};

fn main() -> prtree::Result<()> {
    let points = GeneratorSpec::new(50_000, Distribution::Zipf { s: 1.0 }, 42).generate()?;
    let tree = PriorityRangeTree::build(&points)?;
    let range = ThreeSidedRange::new(0.25, 0.5, 0.8)?;

    let (best, c) = tree.max_report_with_counters(&range);
    let best = best.expect("range is not empty");
    println!("heaviest rank in range: {} (id {}, w {}), {} visits", best.rank(), best.id, best.w, c.visits());

    for k in [1, 10, 100] {
        let (top, c) = tree.top_k_with_counters(&range, k)?;
        let ranks: Vec<u32> = top.iter().take(12).map(|p| p.rank().get()).collect();
        println!("k = {k:>3}: first ranks {ranks:?}, {} visits, {} queue operations", c.visits(), c.pq_operations);
    }
    Ok(())
}
