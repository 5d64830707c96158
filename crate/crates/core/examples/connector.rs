// Chaining hyperedges of a matching into one tree with a connector.

use rainbow_trees::trees::{build_connector, canonical_form_of};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let matching = vec![vec![0, 1, 2], vec![3, 4, 5]];
    let c = build_connector(&matching, 6)?;
    println!("new vertices {:?}", c.new_vertices);
    println!("edges {:?}", c.edges);
    // each component is a tree on k + 1 + k vertices
    println!("{} vertices, {} edges", c.vertex_count(), c.edges.len());
    let mut one = c.edges.clone();
    one.push((c.new_vertices[0][0], c.new_vertices[1][0]));
    println!("joined: {}", canonical_form_of(c.vertex_count(), &one)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
