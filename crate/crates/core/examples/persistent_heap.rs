//! BuildHeap with node copying: every subtree of a complete tree gets its
//! own heap version while the input stays untouched.
//!
//! cargo run --example persistent_heap

use prtree::pheap::{BaseTree, HeapKey, PersistentHeap};

fn main() -> prtree::Result<()> {
    let keys = [1.0, 9.0, 4.0, 3.0, 8.0, 7.0, 2.0];
    let items: Vec<(HeapKey, usize)> = keys.iter().enumerate().map(|(i, &k)| (HeapKey::Finite(k), i)).collect();
    let base = BaseTree::from_level_order(&items);
    let heap = PersistentHeap::build_persistent(&base)?;

    for v in 0..keys.len() {
        let root = heap.version_root(v).expect("finite keys everywhere");
        let mut under = heap.keys_under(Some(root));
        under.sort_by(|a, b| b.total_cmp(a));
        println!("version {v}: root key {}, keys {under:?}", heap.node(root).key);
    }
    println!("{} nodes allocated for {} base nodes", heap.allocated_nodes(), keys.len());
    println!("payloads with key >= 5 under the root: {:?}", heap.descend_report(0, 5.0, None));
    Ok(())
}
