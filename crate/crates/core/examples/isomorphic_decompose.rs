// Decompositions in which every tree is a copy of one fixed shape.

use std::time::Duration;

use rainbow_trees::colouring::generate_circle_factorization;
use rainbow_trees::pipeline::{isomorphic_decompose, DecomposeOutcome};
use rainbow_trees::trees::{canonical_form_of, path_tree, star_tree, TreeShape};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = generate_circle_factorization(8)?;
    let budget = Duration::from_secs(10);
    // a caterpillar: spine 0-1-2-3 with two leaves on each spine vertex except the ends
    let caterpillar = TreeShape::new(8, &[(0, 1), (1, 2), (2, 3), (1, 4), (1, 5), (2, 6), (2, 7)])?;
    for (name, shape) in [("path", path_tree(8)?), ("star", star_tree(8)?), ("caterpillar", caterpillar)] {
        let out = isomorphic_decompose(&g, &shape, budget, 0)?;
        let verdict = match &out {
            DecomposeOutcome::Found { parts, .. } => {
                for p in parts {
                    let form = canonical_form_of(8, &p.iter().map(|e| (e.lo, e.hi)).collect::<Vec<_>>())?;
                    assert_eq!(form, rainbow_trees::trees::canonical_form(&shape));
                }
                "found"
            }
            DecomposeOutcome::Refuted { .. } => "refuted",
            DecomposeOutcome::Exhausted { .. } => "budget ran out",
        };
        println!("{name:12} on circle K_8: {verdict} ({} nodes)", out.nodes());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
