// The ten-step strategy, instrumented. At this size the reservoirs are far
// too thin, which the reports show step by step.

use rainbow_trees::colouring::generate_random_factorization;
use rainbow_trees::pipeline::strategy::first_failure;
use rainbow_trees::pipeline::{run_strategy, PipelineParams};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let n = 100;
    let g = generate_random_factorization(n, 0)?;
    let reports = run_strategy(&g, &PipelineParams::published_defaults(n), 0);
    for r in &reports {
        println!("{:2} {:55} {:?}", r.step, r.name, r.status);
        for (k, v) in &r.metrics {
            println!("     {k} = {v}");
        }
    }
    println!("first failure: {:?}", first_failure(&reports));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
