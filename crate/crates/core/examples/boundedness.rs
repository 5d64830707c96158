// Rainbow predicates and the m-boundedness audit of a leftover triple.

use std::collections::BTreeSet;

use rainbow_trees::colouring::{check_bounded, generate_circle_factorization, is_rainbow};
use rainbow_trees::EdgeSet;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = generate_circle_factorization(8)?;
    // a colour class is a perfect matching but far from rainbow
    let class: EdgeSet = g.class(0).iter().copied().collect();
    assert!(!is_rainbow(&g, &class));

    let vs = vec![BTreeSet::from([0, 1, 2]), BTreeSet::from([2, 3])];
    let cs = vec![BTreeSet::from([0]), BTreeSet::from([1, 2])];
    for m in [1, 2, 4] {
        let r = check_bounded(&g, &class, &vs, &cs, m)?;
        println!("m = {m}: bounded {} with {} violations, worst {}", r.is_bounded(), r.violations.len(), r.worst());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
