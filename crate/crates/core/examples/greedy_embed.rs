// Greedy rainbow embedding of rooted paths into edge-disjoint copies.

use std::collections::BTreeSet;

use rainbow_trees::colouring::{all_pairs, generate_random_factorization};
use rainbow_trees::embed::{audit_embedding, greedy_embed, EmbedIndex, EmbeddingTask, Pattern};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let n = 60;
    let g = generate_random_factorization(n, 2)?;
    let indices = (0..6)
        .map(|i| EmbedIndex {
            pattern: Pattern::path(4),
            roots: vec![(0, i)],
            vertices: (0..n).collect(),
            colours: (0..n - 1).collect::<BTreeSet<_>>(),
        })
        .collect();
    let task = EmbeddingTask { host: all_pairs(n).collect(), indices, max_degree: 2, gamma: 0.01 };
    let r = greedy_embed(&g, &task, 0)?;
    assert!(audit_embedding(&g, &task, &r).is_empty());
    for (i, p) in r.placements.iter().enumerate() {
        println!("path {i}: {:?} colours {:?}", p, r.edges[i].iter().map(|&e| g.colour(e)).collect::<Vec<_>>());
    }
    println!("largest accumulated degree {}", r.audit.max_observed);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
