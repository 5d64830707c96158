//! Maximum bipartite matching (Hopcroft–Karp) with a Kőnig cover
//! certificate and Hall-violator extraction.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

const FREE: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteMatching {
    /// `left[x]` is the partner of left vertex `x`.
    pub left: Vec<Option<usize>>,
    pub right: Vec<Option<usize>>,
    pub size: usize,
    pub cover: KonigCover,
}

/// A vertex cover of the same size as the matching, certifying maximality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KonigCover {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl KonigCover {
    pub fn size(&self) -> usize {
        self.left.len() + self.right.len()
    }

    pub fn covers(&self, adj: &[Vec<usize>]) -> bool {
        let mut in_left = vec![false; adj.len()];
        for &x in &self.left {
            in_left[x] = true;
        }
        let right: std::collections::HashSet<usize> = self.right.iter().copied().collect();
        adj.iter()
            .enumerate()
            .all(|(x, ns)| in_left[x] || ns.iter().all(|y| right.contains(y)))
    }
}

impl BipartiteMatching {
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.left
            .iter()
            .enumerate()
            .filter_map(|(x, y)| y.map(|y| (x, y)))
            .collect()
    }

    /// Left vertices reachable from unmatched left vertices by alternating
    /// paths, and their neighbourhood. If some left vertex is unmatched,
    /// the first set is larger than the second (a Hall violator).
    pub fn alternating_reach(&self, adj: &[Vec<usize>]) -> (Vec<usize>, Vec<usize>) {
        let mut seen_l = vec![false; self.left.len()];
        let mut seen_r = vec![false; self.right.len()];
        let mut queue: VecDeque<usize> = (0..self.left.len())
            .filter(|&x| self.left[x].is_none())
            .collect();
        for &x in &queue {
            seen_l[x] = true;
        }
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if seen_r[y] {
                    continue;
                }
                seen_r[y] = true;
                if let Some(x2) = self.right[y] {
                    if !seen_l[x2] {
                        seen_l[x2] = true;
                        queue.push_back(x2);
                    }
                }
            }
        }
        let ls = (0..seen_l.len()).filter(|&x| seen_l[x]).collect();
        let rs = (0..seen_r.len()).filter(|&y| seen_r[y]).collect();
        (ls, rs)
    }
}

fn check_adjacency(right_size: usize, adj: &[Vec<usize>]) -> Result<()> {
    for (x, ns) in adj.iter().enumerate() {
        if let Some(y) = ns.iter().find(|&&y| y >= right_size) {
            return Err(invalid(format!(
                "left vertex {x} has neighbour {y} outside 0..{right_size}"
            )));
        }
    }
    Ok(())
}

/// Maximum matching between `0..adj.len()` and `0..right_size`.
pub fn bipartite_max_matching(right_size: usize, adj: &[Vec<usize>]) -> Result<BipartiteMatching> {
    check_adjacency(right_size, adj)?;
    Ok(hopcroft_karp(right_size, adj))
}

pub(crate) fn hopcroft_karp(right_size: usize, adj: &[Vec<usize>]) -> BipartiteMatching {
    let n = adj.len();
    let mut ml = vec![FREE; n];
    let mut mr = vec![FREE; right_size];
    let mut dist = vec![0usize; n];
    let mut size = 0;
    loop {
        // BFS layering from free left vertices
        let mut queue = VecDeque::new();
        for x in 0..n {
            if ml[x] == FREE {
                dist[x] = 0;
                queue.push_back(x);
            } else {
                dist[x] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                let x2 = mr[y];
                if x2 == FREE {
                    found = true;
                } else if dist[x2] == usize::MAX {
                    dist[x2] = dist[x] + 1;
                    queue.push_back(x2);
                }
            }
        }
        if !found {
            break;
        }
        let mut next = vec![0usize; n];
        for x in 0..n {
            if ml[x] == FREE && augment(x, adj, &mut ml, &mut mr, &mut dist, &mut next) {
                size += 1;
            }
        }
    }
    let left: Vec<Option<usize>> = ml.iter().map(|&y| (y != FREE).then_some(y)).collect();
    let right: Vec<Option<usize>> = mr.iter().map(|&x| (x != FREE).then_some(x)).collect();
    let mut m = BipartiteMatching {
        left,
        right,
        size,
        cover: KonigCover { left: Vec::new(), right: Vec::new() },
    };
    let (reach_l, reach_r) = m.alternating_reach(adj);
    let mut reached = vec![false; n];
    for x in reach_l {
        reached[x] = true;
    }
    m.cover = KonigCover {
        left: (0..n).filter(|&x| !reached[x]).collect(),
        right: reach_r,
    };
    debug_assert_eq!(m.cover.size(), m.size);
    m
}

fn augment(
    x: usize,
    adj: &[Vec<usize>],
    ml: &mut [usize],
    mr: &mut [usize],
    dist: &mut [usize],
    next: &mut [usize],
) -> bool {
    while next[x] < adj[x].len() {
        let y = adj[x][next[x]];
        next[x] += 1;
        let x2 = mr[y];
        if x2 == FREE || (dist[x2] == dist[x] + 1 && augment(x2, adj, ml, mr, dist, next)) {
            ml[x] = y;
            mr[y] = x;
            return true;
        }
    }
    dist[x] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_3x3() {
        let adj = vec![vec![0, 1, 2]; 3];
        let m = bipartite_max_matching(3, &adj).unwrap();
        assert_eq!(m.size, 3);
        assert_eq!(m.cover.size(), 3);
        assert!(m.cover.covers(&adj));
    }

    #[test]
    fn isolated_left_vertex() {
        let adj = vec![vec![], vec![0, 1, 2], vec![0, 1, 2]];
        let m = bipartite_max_matching(3, &adj).unwrap();
        assert_eq!(m.size, 2);
        let (viol, nbrs) = m.alternating_reach(&adj);
        assert!(viol.len() > nbrs.len());
    }

    #[test]
    fn hall_violator_in_star() {
        // three left vertices all adjacent only to right vertex 0
        let adj = vec![vec![0], vec![0], vec![0, 1]];
        let m = bipartite_max_matching(2, &adj).unwrap();
        assert_eq!(m.size, 2);
        let (viol, nbrs) = m.alternating_reach(&adj);
        assert_eq!(nbrs, vec![0]);
        assert_eq!(viol.len(), 2);
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(bipartite_max_matching(1, &[vec![1]]).is_err());
    }
}
