// Nibble against random greedy on a near-regular 3-uniform hypergraph.

use rainbow_trees::hypermatch::{check_gamma_perfect, degree_stats, greedy_matching, nibble_matching, random_regular_hypergraph};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let h = random_regular_hypergraph(900, 3, 30, 3, 0)?;
    println!("{} edges, {:?}", h.edges().len(), degree_stats(&h));
    let nib = nibble_matching(&h, 0.1, 60, 0)?;
    let greedy = greedy_matching(&h, 0);
    println!("nibble coverage {:.3} (gamma {:.3}); greedy {:.3} (gamma {:.3})",
        nib.coverage, nib.gamma_effective, greedy.coverage, greedy.gamma_effective);
    let check = check_gamma_perfect(&h, &nib.matching, 0.2)?;
    println!("0.2-perfect: {}", check.perfect);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
