//! A catalog of `(rank, y)` pairs peeled into layers of maxima, with
//! domination and maximization queries.
//!
//! cargo run --example layers_of_maxima

use prtree::maxima::MaximaCatalog;

fn main() -> prtree::Result<()> {
    let entries = [(0, 7.0, 'a'), (1, 9.0, 'b'), (3, 4.0, 'c'), (5, 1.0, 'd'), (2, 6.0, 'e'), (4, 2.0, 'f')];
    let catalog = MaximaCatalog::build_catalog(&entries, 8)?;
    for (i, layer) in catalog.layers().iter().enumerate() {
        let pts: Vec<(u32, f64)> = layer.iter().map(|p| (p.rank, p.y)).collect();
        println!("layer {i}: {pts:?}");
    }

    let mut hits = catalog.domination_query(2, 3.0);
    hits.sort_unstable();
    println!("rank >= 2 and y >= 3: {hits:?}");
    for q_y in [0.0, 4.0, 6.5, 9.0] {
        let best = catalog.maximization_query(q_y).map(|p| (p.origin, p.rank));
        println!("highest rank with y > {q_y}: {best:?}");
    }
    Ok(())
}
