// An edge absorber: matchings hung on a chain of hubs, each completion is
// the same rainbow tree and reservoir edges can always be absorbed.

use rainbow_trees::pipeline::absorber::{build_edge_absorber_demo, EdgeAbsorberConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = EdgeAbsorberConfig { matchings: 3, matching_size: 4, m: 1 };
    let demo = build_edge_absorber_demo(&cfg, 0)?;
    println!("K_{} with {} trees", demo.g.n(), demo.trees.len());
    let p = demo.audit_completions();
    println!("completions {} with {} shape(s), failures {:?}", p.completions, p.distinct_forms, p.failures);
    let q = demo.audit_absorption();
    println!("reservoir choices {} absorbed, failures {:?}", q.subsets, q.failures);
    assert!(p.passed() && q.passed());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
