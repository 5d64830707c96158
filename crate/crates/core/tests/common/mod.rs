//! Brute-force oracles, written without the library's algorithms.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rainbow_trees::{EdgeColouredKn, EdgeSet};

/// Union-find free connectivity check by DFS.
fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Edge-disjoint rainbow spanning trees covering all of `K_n`.
pub fn is_rainbow_tree_decomposition(g: &EdgeColouredKn, parts: &[EdgeSet]) -> bool {
    let n = g.n();
    let mut covered = BTreeSet::new();
    for p in parts {
        let edges: Vec<(usize, usize)> = p.iter().map(|e| (e.lo, e.hi)).collect();
        if edges.len() != n - 1 || !connected(n, &edges) {
            return false;
        }
        let colours: BTreeSet<usize> = edges.iter().map(|&(a, b)| g.colour_of(a, b)).collect();
        if colours.len() != n - 1 {
            return false;
        }
        for e in edges {
            if !covered.insert(e) {
                return false;
            }
        }
    }
    covered.len() == n * (n - 1) / 2
}

/// Adjacency lists of a graph on `0..n`.
pub fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    adj
}

/// Isomorphism of two graphs by backtracking over degree-respecting maps.
pub fn brute_isomorphic(n: usize, a: &[(usize, usize)], b: &[(usize, usize)]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let (aa, ab) = (adjacency(n, a), adjacency(n, b));
    let mut da: Vec<usize> = aa.iter().map(Vec::len).collect();
    let mut db: Vec<usize> = ab.iter().map(Vec::len).collect();
    let (sa, sb) = (da.clone(), db.clone());
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    let mut ea = vec![vec![false; n]; n];
    let mut eb = vec![vec![false; n]; n];
    for &(x, y) in a {
        ea[x][y] = true;
        ea[y][x] = true;
    }
    for &(x, y) in b {
        eb[x][y] = true;
        eb[y][x] = true;
    }
    fn go(v: usize, n: usize, map: &mut Vec<usize>, used: &mut Vec<bool>, ea: &[Vec<bool>], eb: &[Vec<bool>], sa: &[usize], sb: &[usize]) -> bool {
        if v == n {
            return true;
        }
        for w in 0..n {
            if used[w] || sa[v] != sb[w] {
                continue;
            }
            if (0..v).any(|u| ea[u][v] != eb[map[u]][w]) {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if go(v + 1, n, map, used, ea, eb, sa, sb) {
                return true;
            }
            used[w] = false;
        }
        false
    }
    go(0, n, &mut vec![0; n], &mut vec![false; n], &ea, &eb, &sa, &sb)
}

/// All unlabelled trees on `k` vertices for `k = 1..=max`, grown by adding
/// a leaf everywhere and deduplicated with [`brute_isomorphic`].
pub fn all_trees(max: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    let mut level: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    for k in 2..=max {
        let mut next: Vec<Vec<(usize, usize)>> = Vec::new();
        let mut buckets: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for t in &level {
            for v in 0..k - 1 {
                let mut cand = t.clone();
                cand.push((v, k - 1));
                let key = invariant(k, &cand);
                let bucket = buckets.entry(key).or_default();
                if bucket.iter().any(|&i| brute_isomorphic(k, &next[i], &cand)) {
                    continue;
                }
                bucket.push(next.len());
                next.push(cand);
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

/// Sorted degree sequence followed by sorted neighbour-degree sums.
fn invariant(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let adj = adjacency(n, edges);
    let mut d: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut s: Vec<usize> = adj.iter().map(|ns| ns.iter().map(|&w| adj[w].len()).sum()).collect();
    d.sort_unstable();
    s.sort_unstable();
    d.extend(s);
    d
}

/// Isomorphism invariant of a 1-factorization: the sorted multiset, over
/// pairs of colours, of the sorted cycle lengths of their union.
pub fn factorization_invariant(g: &EdgeColouredKn) -> Vec<Vec<usize>> {
    let n = g.n();
    let k = g.colour_count();
    let mut profile = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            let mut seen = vec![false; n];
            let mut lens = Vec::new();
            for s in 0..n {
                if seen[s] {
                    continue;
                }
                let (mut v, mut c, mut len) = (s, a, 0);
                loop {
                    seen[v] = true;
                    v = (0..n).find(|&w| w != v && g.colour_of(v, w) == c).unwrap();
                    c = if c == a { b } else { a };
                    len += 1;
                    if v == s && c == a {
                        break;
                    }
                }
                lens.push(len);
            }
            lens.sort_unstable();
            profile.push(lens);
        }
    }
    profile.sort();
    profile
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn go(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            go(k + 1, p, out);
            p.swap(k, i);
        }
    }
    go(0, &mut p, &mut out);
    out
}

/// Whether a coloured bipartite graph given as `colour[a][b]` has a
/// rainbow perfect matching, by trying every permutation.
pub fn has_rainbow_pm(n: usize, colour: &[Vec<Option<usize>>]) -> bool {
    permutations(n).iter().any(|p| {
        let mut cs = BTreeSet::new();
        (0..n).all(|a| colour[a][p[a]].is_some_and(|c| cs.insert(c)))
    })
}

/// Number of rainbow Hamilton paths of `g` (each path counted once per direction).
pub fn rainbow_hamilton_paths(g: &EdgeColouredKn) -> usize {
    permutations(g.n())
        .iter()
        .filter(|p| {
            let cs: BTreeSet<usize> = p.windows(2).map(|w| g.colour_of(w[0], w[1])).collect();
            cs.len() == g.n() - 1
        })
        .count()
}
