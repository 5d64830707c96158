// Dinic max flow with its min cut, and Hopcroft-Karp matching with a
// Kőnig cover.

use rainbow_trees::rmbg::{bipartite_max_matching, check_flow, max_flow, FlowNetwork};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut net = FlowNetwork::new(6, 0, 5)?;
    for (a, b, c) in [(0, 1, 16), (0, 2, 13), (1, 2, 10), (2, 1, 4), (1, 3, 12), (3, 2, 9), (2, 4, 14), (4, 3, 7), (3, 5, 20), (4, 5, 4)] {
        net.add_arc(a, b, c)?;
    }
    let f = max_flow(&net);
    assert!(check_flow(&net, &f.flow));
    assert_eq!(f.value, f.cut_capacity);
    println!("max flow {} = min cut {}", f.value, f.cut_capacity);

    let adj = vec![vec![0, 1], vec![0], vec![0], vec![1, 2]];
    let m = bipartite_max_matching(3, &adj)?;
    assert!(m.cover.covers(&adj) && m.cover.size() == m.size);
    println!("matching of size {}: {:?}, cover {:?} / {:?}", m.size, m.pairs(), m.cover.left, m.cover.right);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
