// The target tree with its hung paths and pendant matching, the maximum
// degree 3 variant, and canonical forms.

use rainbow_trees::trees::{build_t, build_t_delta3, canonical_form, random_tree, spine_length, tree_isomorphic, Delta3Params};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (n, r, b) = (12_000, 5, 40);
    let t = build_t(n, r, b)?;
    println!("T({n}; {r}, {b}): spine length {}, max degree {}", spine_length(n, r, b), t.max_degree());
    assert_eq!(t.vertex_count(), n);

    let p = Delta3Params::new(60_000, 3, 10);
    let t3 = build_t_delta3(p)?;
    println!("degree-3 variant on {} vertices: max degree {}, tail {}", t3.vertex_count(), t3.max_degree(), p.tail_length());

    let a = random_tree(15, 1)?;
    let perm: Vec<usize> = (0..15).rev().collect();
    assert!(tree_isomorphic(&a, &a.relabeled(&perm)));
    println!("canonical form of a random 15-vertex tree: {}", canonical_form(&a));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
