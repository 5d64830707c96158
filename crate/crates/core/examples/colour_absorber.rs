// A colour absorber: any s reservoir colours can be swapped into the
// rainbow matchings without changing the tree.

use rainbow_trees::pipeline::absorber::{build_colour_absorber_demo, ColourAbsorberConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let demo = build_colour_absorber_demo(&ColourAbsorberConfig::standard(2, 4), 0)?;
    let a = demo.audit_absorption();
    println!("K_{}: {} colour choices absorbed, {} shape(s), failures {:?}",
        demo.g.n(), a.subsets, a.distinct_forms, a.failures);
    assert!(a.passed());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
