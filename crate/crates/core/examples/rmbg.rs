// Robustly matchable bipartite graphs: search, exhaustive verification,
// robust matching and regularization.

use rainbow_trees::rmbg::{is_robustly_matchable, regularize, robust_match, search_rmbg, Mode, Verdict};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let h = search_rmbg(2, 8, 0, 2000)?;
    let v = is_robustly_matchable(&h, Mode::Exhaustive)?;
    assert!(matches!(v, Verdict::Proven { subsets: 6 }));
    println!("RMBG(6, 4, 4): {} edges, max degree {}, {v:?}", h.edge_count(), h.max_degree());
    println!("matching for Y' = [0, 3]: {:?}", robust_match(&h, &[0, 3])?);

    // 4d and 3d can not exceed the part sizes 4m and 3m
    let d = 2;
    let r = regularize(&h, d, 0)?;
    println!("regularized with d = {d}: {} edges = 12dm = {}", r.edge_count(), 12 * d * 2);
    assert_eq!(r.edge_count(), 12 * d * 2);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
