//! Seeded workloads, written in the plain-text point format and read back.
//!
//! cargo run --example generate_points

use prtree::gen::{Distribution, GeneratorSpec};
use prtree::pointfile::{format_points, parse_points};

fn main() -> prtree::Result<()> {
    for dist in ["uniform", "exp-freq", "zipf:1.0"] {
        let mut spec = GeneratorSpec::new(1024, dist.parse::<Distribution>()?, 3);
        spec.x_range = (-100.0, 100.0);
        let points = spec.generate()?;
        let mut per_rank = [0usize; 11];
        for p in &points {
            per_rank[p.rank().get() as usize] += 1;
        }
        println!("{dist:>9}: points per rank {per_rank:?}");

        let text = format_points(&points)?;
        assert_eq!(parse_points(&text)?, points);
    }
    let sample = format_points(&GeneratorSpec::new(3, Distribution::Uniform, 3).generate()?)?;
    print!("three points as a file:\n{sample}");
    Ok(())
}
