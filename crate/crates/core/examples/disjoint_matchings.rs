// Edge-disjoint rainbow perfect matchings for overlapping vertex subsets.

use rainbow_trees::colouring::generate_random_factorization;
use rainbow_trees::matchings::{greedy_disjoint_rainbow_pms, overlapping_subsets, random_task, TaskOutcome};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let n = 400;
    let mu = 0.1;
    let g = generate_random_factorization(n, 0)?;
    let sets = overlapping_subsets(n, 10, 0.15, 3, 20, 0);
    let tasks = sets
        .iter()
        .enumerate()
        .map(|(i, u)| random_task(&g, u, 0.5, 8, i as u64))
        .collect::<Result<Vec<_>, _>>()?;
    let r = greedy_disjoint_rainbow_pms(&tasks, n, mu, 4, 100_000, 0)?;
    println!("r = {} (using {}), {} skips, precondition issues {:?}", r.r, r.r_used, r.skips(), r.preconditions);
    for (i, o) in r.outcomes.iter().enumerate() {
        if let TaskOutcome::Matched { host_edges, candidates, .. } = o {
            println!("task {i}: {} edges chosen among {candidates}", host_edges.len());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
