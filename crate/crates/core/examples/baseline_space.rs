//! Space of the priority range tree against one priority search tree per
//! rank, across doublings of n.
//!
//! cargo run --release --example baseline_space

use prtree::gen::{Distribution, GeneratorSpec};
use prtree::oracle::SuffixPstBaseline;
use prtree::PriorityRangeTree;

fn main() -> prtree::Result<()> {
    for dist in [Distribution::ExpFreq, Distribution::Zipf { s: 1.0 }, Distribution::Uniform] {
        println!("{dist}");
        println!("{:>7} {:>10} {:>8} {:>10} {:>8}", "n", "prt", "per n", "baseline", "per n");
        for e in 10..=15 {
            let n = 1usize << e;
            let points = GeneratorSpec::new(n, dist, 1).generate()?;
            let prt = PriorityRangeTree::build(&points)?.space().total();
            let base = SuffixPstBaseline::build(&points)?.space_nodes();
            println!("{n:>7} {prt:>10} {:>8.2} {base:>10} {:>8.2}", prt as f64 / n as f64, base as f64 / n as f64);
        }
    }
    Ok(())
}
