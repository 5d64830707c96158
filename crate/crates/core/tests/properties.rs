mod common;

use std::collections::BTreeSet;
use std::time::Duration;

use proptest::prelude::*;

use rainbow_trees::colouring::{
    check_bounded, generate_circle_factorization, generate_random_factorization, kempe_mix, verify_decomposition,
    verify_factorization,
};
use rainbow_trees::hypermatch::{greedy_matching, nibble_matching, random_regular_hypergraph};
use rainbow_trees::matchings::{is_rainbow_perfect_matching, local_search_rainbow_pm, random_coloured_bipartite};
use rainbow_trees::pipeline::exact_decompose;
use rainbow_trees::rmbg::{bipartite_max_matching, check_flow, is_robustly_matchable, max_flow, search_rmbg, FlowNetwork, Mode, Rmbg, Verdict};
use rainbow_trees::trees::{build_connector, canonical_form, random_tree};
use rainbow_trees::EdgeSet;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_factorizations_are_valid(h in 1usize..=12, seed in any::<u64>()) {
        let g = generate_random_factorization(2 * h, seed).unwrap();
        prop_assert!(verify_factorization(&g).is_empty());
        prop_assert_eq!(&g, &generate_random_factorization(2 * h, seed).unwrap());
    }

    #[test]
    fn kempe_mixing_stays_valid(h in 2usize..=20, swaps in 0usize..200, seed in any::<u64>()) {
        let g = kempe_mix(&generate_circle_factorization(2 * h).unwrap(), swaps, seed);
        prop_assert!(verify_factorization(&g).is_empty());
    }

    #[test]
    fn json_round_trip(h in 1usize..=10, seed in any::<u64>()) {
        let g = generate_random_factorization(2 * h, seed).unwrap();
        let text = serde_json::to_string(&g.to_json()).unwrap();
        let back = rainbow_trees::EdgeColouredKn::from_json(serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn relabeling_preserves_the_factorization_invariant(seed in any::<u64>(), shift in 1usize..8) {
        let g = generate_random_factorization(8, seed).unwrap();
        let perm: Vec<usize> = (0..8).map(|v| (v + shift) % 8).collect();
        let cperm: Vec<usize> = (0..7).rev().collect();
        let h = g.relabeled(&perm, &cperm);
        prop_assert!(verify_factorization(&h).is_empty());
        prop_assert_eq!(common::factorization_invariant(&g), common::factorization_invariant(&h));
    }

    #[test]
    fn bounded_is_monotone_in_m(seed in any::<u64>(), m in 1usize..6) {
        let g = generate_random_factorization(10, seed).unwrap();
        let edges: EdgeSet = g.edges().filter(|e| (e.lo + e.hi + seed as usize) % 3 == 0).collect();
        let vs = vec![(0..5).collect::<BTreeSet<_>>()];
        let cs = vec![(0..4).collect::<BTreeSet<_>>()];
        let low = check_bounded(&g, &edges, &vs, &cs, m).unwrap();
        let high = check_bounded(&g, &edges, &vs, &cs, m + 1).unwrap();
        prop_assert!(high.violations.len() <= low.violations.len());
        prop_assert_eq!(low.is_bounded(), low.worst() <= m);
    }

    #[test]
    fn max_flow_equals_min_cut(arcs in prop::collection::vec((0usize..7, 0usize..7, 0i64..20), 0..30)) {
        let mut net = FlowNetwork::new(7, 0, 6).unwrap();
        for (a, b, c) in arcs {
            if a != b && b != 0 && a != 6 {
                net.add_arc(a, b, c).unwrap();
            }
        }
        let f = max_flow(&net);
        prop_assert!(check_flow(&net, &f.flow));
        prop_assert_eq!(f.value, f.cut_capacity);
        // brute force over all s-t cuts
        let best = (0u32..1 << 5)
            .map(|mask| {
                let side = |v: usize| v == 0 || (v != 6 && mask >> (v - 1) & 1 == 1);
                net.arcs().iter().filter(|a| side(a.from) && !side(a.to)).map(|a| a.cap).sum::<i64>()
            })
            .min()
            .unwrap();
        prop_assert_eq!(f.value, best);
    }

    #[test]
    fn konig_cover_matches_matching(adj in prop::collection::vec(prop::collection::btree_set(0usize..6, 0..4), 0..7)) {
        let adj: Vec<Vec<usize>> = adj.into_iter().map(|s| s.into_iter().collect()).collect();
        let m = bipartite_max_matching(6, &adj).unwrap();
        prop_assert!(m.cover.covers(&adj));
        prop_assert_eq!(m.cover.size(), m.size);
        // brute force maximum matching size
        fn best(x: usize, adj: &[Vec<usize>], used: &mut [bool]) -> usize {
            if x == adj.len() {
                return 0;
            }
            let mut b = best(x + 1, adj, used);
            for &y in &adj[x] {
                if !used[y] {
                    used[y] = true;
                    b = b.max(1 + best(x + 1, adj, used));
                    used[y] = false;
                }
            }
            b
        }
        prop_assert_eq!(m.size, best(0, &adj, &mut [false; 6]));
    }

    #[test]
    fn adding_edges_keeps_robust_matchability(extra in prop::collection::vec((0usize..3, 0usize..4), 0..6), seed in 0u64..20) {
        let mut h = search_rmbg(1, 4, seed, 500).unwrap();
        for (x, y) in extra {
            h.add_edge(x, y);
        }
        let proven = matches!(is_robustly_matchable(&h, Mode::Exhaustive).unwrap(), Verdict::Proven { .. });
        prop_assert!(proven);
    }

    #[test]
    fn sampled_never_contradicts_exhaustive(adj in prop::collection::vec(prop::collection::btree_set(0usize..4, 1..4), 3), seed in any::<u64>()) {
        let h = Rmbg::new(3, 2, 2, adj.into_iter().map(|s| s.into_iter().collect()).collect()).unwrap();
        let ex = is_robustly_matchable(&h, Mode::Exhaustive).unwrap();
        let sa = is_robustly_matchable(&h, Mode::Sampled { draws: 20, seed }).unwrap();
        if matches!(ex, Verdict::Proven { .. }) {
            prop_assert!(!sa.is_refuted());
        }
    }

    #[test]
    fn matchings_are_matchings(seed in 0u64..50) {
        let h = random_regular_hypergraph(240, 3, 8, 2, seed).unwrap();
        for m in [nibble_matching(&h, 0.2, 15, seed).unwrap(), greedy_matching(&h, seed)] {
            let mut seen = BTreeSet::new();
            for &e in &m.matching {
                for &v in h.edge(e) {
                    prop_assert!(seen.insert(v));
                }
            }
            prop_assert_eq!(seen.len(), m.covered_vertices);
        }
    }

    #[test]
    fn local_search_outputs_are_rainbow(n in 1usize..9, seed in any::<u64>()) {
        let g = random_coloured_bipartite(n, 0.8, 2 * n * n, 2, seed).unwrap();
        if let Some(m) = local_search_rainbow_pm(&g, 5000, seed).matching {
            prop_assert!(is_rainbow_perfect_matching(&g, &m));
        }
    }

    #[test]
    fn canonical_form_is_relabeling_invariant(k in 1usize..40, seed in any::<u64>()) {
        let t = random_tree(k, seed).unwrap();
        let perm: Vec<usize> = (0..k).map(|v| (v * 7 + seed as usize % k) % k).collect();
        let distinct: BTreeSet<usize> = perm.iter().copied().collect();
        prop_assume!(distinct.len() == k);
        prop_assert_eq!(canonical_form(&t), canonical_form(&t.relabeled(&perm)));
    }

    #[test]
    fn connector_is_a_forest_of_trees(sizes in 1usize..5, count in 1usize..5) {
        let hyperedges: Vec<Vec<usize>> = (0..count).map(|j| (j * sizes..(j + 1) * sizes).collect()).collect();
        let c = build_connector(&hyperedges, count * sizes).unwrap();
        prop_assert_eq!(c.edges.len(), 2 * sizes * count);
        prop_assert_eq!(c.vertex_count(), count * (2 * sizes + 1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn solver_outputs_pass_both_audits(seed in any::<u64>()) {
        let g = generate_random_factorization(8, seed).unwrap();
        let out = exact_decompose(&g, Duration::from_secs(30), seed).unwrap();
        let parts = out.parts().expect("K_8 decomposes");
        prop_assert!(verify_decomposition(&g, parts).valid);
        prop_assert!(common::is_rainbow_tree_decomposition(&g, parts));
    }
}
