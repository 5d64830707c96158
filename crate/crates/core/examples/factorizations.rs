// Circle and random 1-factorizations of `K_n`, with a JSON round trip.

use rainbow_trees::colouring::{generate_circle_factorization, generate_random_factorization, verify_factorization};
use rainbow_trees::EdgeColouredKn;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let circle = generate_circle_factorization(10)?;
    assert!(verify_factorization(&circle).is_empty());
    println!("circle K_10: {} colours, colour 0 = {:?}", circle.colour_count(), circle.class(0));

    let random = generate_random_factorization(10, 42)?;
    assert!(verify_factorization(&random).is_empty());
    let json = serde_json::to_string(&random.to_json())?;
    let back = EdgeColouredKn::from_json(serde_json::from_str(&json)?)?;
    assert_eq!(back, random);
    println!("random K_10 (seed 42): partner of 0 in each colour {:?}",
        (0..random.colour_count()).map(|c| random.partner(c, 0)).collect::<Vec<_>>());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
