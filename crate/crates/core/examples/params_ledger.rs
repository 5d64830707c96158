// The parameter ledger: derived constants, split audits and identities.

use rainbow_trees::pipeline::default_params;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = default_params();
    let d = p.derived();
    println!("n = {}: t = {}, m = {}, s = {}, r = {}, b = {}", p.n, d.t, d.m, d.s, d.r, d.b);
    for row in p.split_rows() {
        println!("{:5} sums to {:.3e} of its parent (defect {:.1e})", row.name, row.total(), row.defect());
    }
    for c in p.identity_checks() {
        println!("{:40} {}", c.name, if c.holds { "holds" } else { "FAILS" });
    }
    println!("{:?}", p.regime());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
