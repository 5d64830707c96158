// Exact decomposition into rainbow spanning trees: K_4 has none, K_6 and
// K_8 do.

use std::time::Duration;

use rainbow_trees::colouring::{generate_circle_factorization, generate_random_factorization, verify_decomposition};
use rainbow_trees::pipeline::{exact_decompose, DecomposeOutcome};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let budget = Duration::from_secs(10);
    let k4 = generate_circle_factorization(4)?;
    let out = exact_decompose(&k4, budget, 0)?;
    assert!(matches!(out, DecomposeOutcome::Refuted { .. }));
    println!("K_4: refuted after {} nodes", out.nodes());

    for g in [generate_circle_factorization(6)?, generate_random_factorization(8, 3)?] {
        let out = exact_decompose(&g, budget, 0)?;
        let parts = out.parts().expect("a decomposition exists");
        assert!(verify_decomposition(&g, parts).valid);
        println!("K_{}: {} trees in {} nodes", g.n(), parts.len(), out.nodes());
        for p in parts {
            println!("  {:?}", p.to_vec());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
