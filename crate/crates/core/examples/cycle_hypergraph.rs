// Encoding rainbow cycles as hyperedges and decoding a matching back into
// vertex- and colour-disjoint cycle families.

use std::collections::BTreeSet;

use rainbow_trees::colouring::generate_random_factorization;
use rainbow_trees::hypermatch::{build_cycle_hypergraph, extract_disjoint_families, nibble_matching, Enumeration};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = generate_random_factorization(12, 5)?;
    let vs = vec![(0..12).collect::<BTreeSet<_>>(); 2];
    let cs = vec![(0..6).collect::<BTreeSet<_>>(), (5..11).collect()];
    let ch = build_cycle_hypergraph(&g, &vs, &cs, 4, Enumeration::Exhaustive)?;
    println!("{} rainbow 4-cycles over 2 indices, {} vertices in the encoding", ch.cycles.len(), ch.layout.vertex_count());
    let m = nibble_matching(&ch.hypergraph, 0.1, 30, 0)?;
    let families = extract_disjoint_families(&g, &ch, &m.matching, 2)?;
    for (i, f) in families.iter().enumerate() {
        println!("index {i}: {:?}", f.iter().map(|c| &c.vertices).collect::<Vec<_>>());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
