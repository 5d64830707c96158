// Rainbow perfect matchings in quasirandom coloured bipartite graphs.

use rainbow_trees::matchings::{exhaustive_rainbow_pm, is_quasirandom, is_rainbow_perfect_matching, random_coloured_bipartite, rainbow_perfect_matching};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let small = random_coloured_bipartite(5, 0.8, 12, 2, 1)?;
    println!("n = 5: exhaustive oracle says {:?}", exhaustive_rainbow_pm(&small));

    let g = random_coloured_bipartite(100, 0.5, 1500, 5, 3)?;
    let q = is_quasirandom(&g, 0.2, 0.5);
    println!("n = 100: quasirandom at 0.2 {}, worst ratio {:.3}", q.quasirandom, q.worst_ratio());
    let pm = rainbow_perfect_matching(&g, 5, 100_000, 0)?;
    assert!(is_rainbow_perfect_matching(&g, &pm.matching));
    println!("rainbow perfect matching after {} switches, {} restarts", pm.switches, pm.restarts);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
