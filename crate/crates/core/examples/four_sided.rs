//! Four-sided queries `[a, b] × [c, d]`, checked against a linear scan.
//!
//! cargo run --release --example four_sided

use prtree::gen::{Distribution, GeneratorSpec};
use prtree::oracle::{oracle_threshold, PointArray};
use prtree::{FourSidedIndex, FourSidedRange};

fn main() -> prtree::Result<()> {
    let points = GeneratorSpec::new(5_000, Distribution::ExpFreq, 7).generate()?;
    let index = FourSidedIndex::build(&points)?;
    let scan = PointArray::new(points.clone())?;
    let space = index.space();
    println!("{} points, {} cells in the index ({:.1} per point)", points.len(), space.total(), space.total() as f64 / points.len() as f64);

    let boxes = [(0.1, 0.3, 0.2, 0.9), (0.0, 1.0, 0.45, 0.55), (0.5, 0.5001, 0.0, 1.0)];
    for (a, b, c, d) in boxes {
        let r = FourSidedRange::new(a, b, c, d)?;
        for w in [1, 16, 256] {
            let hits = index.threshold_query(&r, w)?;
            assert_eq!(hits.len(), oracle_threshold(&scan, &r, w)?.len());
            println!("[{a}, {b}] x [{c}, {d}], w = {w:>3}: {} points", hits.len());
        }
        let top = index.top_k(&r, 3)?;
        let ranks: Vec<u32> = top.iter().map(|p| p.rank().get()).collect();
        println!("  top 3 ranks {ranks:?}");
    }
    Ok(())
}
