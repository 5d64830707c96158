//! Exact search for decompositions into rainbow spanning trees.
//!
//! A rainbow spanning tree of a 1-factorized `K_n` has `n - 1` edges and so
//! uses every colour exactly once; a decomposition into `n/2` of them is an
//! exact cover. Trees are built one after another. Inside a tree the search
//! branches on the colour with the fewest edges still joining two different
//! components, ties going to the colour whose candidates touch the component
//! of the smallest vertex, then to the smaller colour. Tree `k` is seeded with
//! the `k`-th edge of colour 0, which removes the symmetry between trees.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::colouring::{pair_index, verify_decomposition, Colour, Edge, EdgeColouredKn, EdgeSet};
use crate::error::{invalid, Error, Result};
use crate::rng::seeded;
use crate::trees::{canonical_form, TreeShape};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum DecomposeOutcome {
    Found { parts: Vec<EdgeSet>, nodes: u64 },
    /// The search space was exhausted: no decomposition exists.
    Refuted { nodes: u64 },
    /// The time budget ran out first; nothing is claimed.
    Exhausted { nodes: u64 },
}

impl DecomposeOutcome {
    pub fn parts(&self) -> Option<&[EdgeSet]> {
        match self {
            DecomposeOutcome::Found { parts, .. } => Some(parts),
            _ => None,
        }
    }

    pub fn nodes(&self) -> u64 {
        match self {
            DecomposeOutcome::Found { nodes, .. }
            | DecomposeOutcome::Refuted { nodes }
            | DecomposeOutcome::Exhausted { nodes } => *nodes,
        }
    }
}

/// Decomposes `g` into `n/2` rainbow spanning trees, or proves none exist.
pub fn exact_decompose(g: &EdgeColouredKn, time_budget: Duration, seed: u64) -> Result<DecomposeOutcome> {
    Search::new(g, None, time_budget, seed)?.run()
}

/// As [`exact_decompose`], with every tree isomorphic to `shape`.
pub fn isomorphic_decompose(
    g: &EdgeColouredKn,
    shape: &TreeShape,
    time_budget: Duration,
    seed: u64,
) -> Result<DecomposeOutcome> {
    if shape.vertex_count() != g.n() {
        return Err(invalid(format!(
            "shape has {} vertices but the instance has {}",
            shape.vertex_count(),
            g.n()
        )));
    }
    Search::new(g, Some(shape), time_budget, seed)?.run()
}

struct ShapeTarget {
    code: String,
    max_degree: usize,
    /// `at_least[d]`: vertices of the shape with degree at least `d`.
    at_least: Vec<usize>,
}

enum Stop {
    Budget,
}

struct Search<'a> {
    g: &'a EdgeColouredKn,
    n: usize,
    t: usize,
    shape: Option<ShapeTarget>,
    /// Candidate order per colour (shuffled once from the seed).
    order: Vec<Vec<Edge>>,
    used: Vec<bool>,
    remaining_degree: Vec<usize>,
    trees: Vec<Vec<Edge>>,
    nodes: u64,
    started: Instant,
    budget: Duration,
}

impl<'a> Search<'a> {
    fn new(g: &'a EdgeColouredKn, shape: Option<&TreeShape>, budget: Duration, seed: u64) -> Result<Self> {
        let n = g.n();
        if n < 2 || n % 2 == 1 {
            return Err(invalid(format!("n = {n} must be even and at least 2")));
        }
        let mut rng = seeded(seed);
        let order = (0..g.colour_count())
            .map(|c| {
                let mut es = g.class(c as Colour).to_vec();
                if c > 0 {
                    es.shuffle(&mut rng);
                }
                es
            })
            .collect();
        let shape = shape.map(|s| {
            let max_degree = s.max_degree();
            let at_least = (0..=max_degree + 1)
                .map(|d| (0..s.vertex_count()).filter(|&v| s.degree(v) >= d).count())
                .collect();
            ShapeTarget { code: canonical_form(s), max_degree, at_least }
        });
        Ok(Search {
            g,
            n,
            t: n / 2,
            shape,
            order,
            used: vec![false; g.edge_count()],
            remaining_degree: vec![n - 1; n],
            trees: Vec::new(),
            nodes: 0,
            started: Instant::now(),
            budget,
        })
    }

    fn run(mut self) -> Result<DecomposeOutcome> {
        let found = match self.next_tree() {
            Ok(found) => found,
            Err(Stop::Budget) => return Ok(DecomposeOutcome::Exhausted { nodes: self.nodes }),
        };
        if !found {
            return Ok(DecomposeOutcome::Refuted { nodes: self.nodes });
        }
        let parts: Vec<EdgeSet> = self.trees.iter().map(|es| es.iter().copied().collect()).collect();
        let check = verify_decomposition(self.g, &parts);
        if !check.valid {
            return Err(Error::Internal(format!("solver produced an invalid decomposition: {:?}", check.diagnostics)));
        }
        Ok(DecomposeOutcome::Found { parts, nodes: self.nodes })
    }

    fn tick(&mut self) -> std::result::Result<(), Stop> {
        self.nodes += 1;
        if self.nodes % 1024 == 0 && self.started.elapsed() > self.budget {
            return Err(Stop::Budget);
        }
        Ok(())
    }

    fn take(&mut self, e: Edge) {
        self.used[pair_index(self.n, e)] = true;
        self.remaining_degree[e.lo] -= 1;
        self.remaining_degree[e.hi] -= 1;
    }

    fn give_back(&mut self, e: Edge) {
        self.used[pair_index(self.n, e)] = false;
        self.remaining_degree[e.lo] += 1;
        self.remaining_degree[e.hi] += 1;
    }

    fn next_tree(&mut self) -> std::result::Result<bool, Stop> {
        let k = self.trees.len();
        if k == self.t {
            return Ok(true);
        }
        // every later tree needs one edge at each vertex
        if self.remaining_degree.iter().any(|&d| d < self.t - k) {
            return Ok(false);
        }
        if self.n == 2 {
            let e = Edge::new(0, 1);
            self.take(e);
            self.trees.push(vec![e]);
            if self.next_tree()? {
                return Ok(true);
            }
            self.trees.pop();
            self.give_back(e);
            return Ok(false);
        }
        let seed_edge = self.order[0][k];
        let mut comp: Vec<usize> = (0..self.n).collect();
        let mut colours_used = vec![false; self.n - 1];
        let mut degree = vec![0usize; self.n];
        let mut tree = Vec::with_capacity(self.n - 1);
        self.take(seed_edge);
        merge(&mut comp, seed_edge);
        colours_used[0] = true;
        degree[seed_edge.lo] += 1;
        degree[seed_edge.hi] += 1;
        tree.push(seed_edge);
        let ok = self.extend(&mut comp, &mut colours_used, &mut degree, &mut tree)?;
        if !ok {
            self.give_back(seed_edge);
        }
        Ok(ok)
    }

    fn degree_ok(&self, degree: &[usize], e: Edge) -> bool {
        let Some(s) = &self.shape else { return true };
        let (a, b) = (degree[e.lo] + 1, degree[e.hi] + 1);
        if a > s.max_degree || b > s.max_degree {
            return false;
        }
        // the partial tree is a subgraph of the final one, so for every d it
        // cannot have more vertices of degree >= d than the shape does
        for d in [a, b] {
            let mut count = degree.iter().filter(|&&x| x >= d).count();
            if degree[e.lo] < d && a >= d {
                count += 1;
            }
            if degree[e.hi] < d && b >= d {
                count += 1;
            }
            if count > s.at_least[d] {
                return false;
            }
        }
        true
    }

    fn candidates(&self, c: usize, comp: &[usize], degree: &[usize]) -> Vec<Edge> {
        self.order[c]
            .iter()
            .copied()
            .filter(|&e| !self.used[pair_index(self.n, e)] && comp[e.lo] != comp[e.hi] && self.degree_ok(degree, e))
            .collect()
    }

    fn extend(
        &mut self,
        comp: &mut Vec<usize>,
        colours_used: &mut [bool],
        degree: &mut [usize],
        tree: &mut Vec<Edge>,
    ) -> std::result::Result<bool, Stop> {
        self.tick()?;
        if tree.len() == self.n - 1 {
            if let Some(s) = &self.shape {
                let shape = TreeShape::new(self.n, &tree.iter().map(|e| (e.lo, e.hi)).collect::<Vec<_>>())
                    .expect("spanning tree");
                if canonical_form(&shape) != s.code {
                    return Ok(false);
                }
            }
            self.trees.push(tree.clone());
            if self.next_tree()? {
                return Ok(true);
            }
            self.trees.pop();
            return Ok(false);
        }
        // pick the most constrained colour; also check that the union of
        // all candidates can still connect every component
        let anchor = comp[0];
        let mut best: Option<(usize, bool, usize, Vec<Edge>)> = None;
        let mut reach: Vec<usize> = comp.clone();
        for c in 0..self.n - 1 {
            if colours_used[c] {
                continue;
            }
            let cands = self.candidates(c, comp, degree);
            if cands.is_empty() {
                return Ok(false);
            }
            for e in &cands {
                let (a, b) = (find(&mut reach, e.lo), find(&mut reach, e.hi));
                if a != b {
                    reach[a] = b;
                }
            }
            let touches = cands.iter().any(|e| comp[e.lo] == anchor || comp[e.hi] == anchor);
            let key = (cands.len(), !touches, c);
            if best.as_ref().map_or(true, |b| key < (b.0, b.1, b.2)) {
                best = Some((cands.len(), !touches, c, cands));
            }
        }
        let root = find(&mut reach, 0);
        if (0..self.n).any(|v| find(&mut reach, v) != root) {
            return Ok(false);
        }
        let (_, _, c, cands) = best.expect("an unused colour remains");
        colours_used[c] = true;
        for e in cands {
            let saved = comp.clone();
            merge(comp, e);
            degree[e.lo] += 1;
            degree[e.hi] += 1;
            tree.push(e);
            self.take(e);
            let res = self.extend(comp, colours_used, degree, tree);
            if matches!(res, Ok(true)) {
                return Ok(true);
            }
            self.give_back(e);
            tree.pop();
            degree[e.lo] -= 1;
            degree[e.hi] -= 1;
            *comp = saved;
            res?;
        }
        colours_used[c] = false;
        Ok(false)
    }
}

/// Relabels the component of `e.hi` to that of `e.lo` (labels are the
/// smallest member, so `comp[0]` is always 0's component).
fn merge(comp: &mut [usize], e: Edge) {
    let (a, b) = (comp[e.lo], comp[e.hi]);
    let (keep, drop) = (a.min(b), a.max(b));
    for x in comp.iter_mut() {
        if *x == drop {
            *x = keep;
        }
    }
}

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::generate_circle_factorization;
    use crate::trees::{path_tree, star_tree};

    const BUDGET: Duration = Duration::from_secs(60);

    #[test]
    fn k2_single_part() {
        let g = generate_circle_factorization(2).unwrap();
        let out = exact_decompose(&g, BUDGET, 0).unwrap();
        assert_eq!(out.parts().unwrap().len(), 1);
    }

    #[test]
    fn k4_refuted() {
        let g = generate_circle_factorization(4).unwrap();
        assert!(matches!(exact_decompose(&g, BUDGET, 0).unwrap(), DecomposeOutcome::Refuted { .. }));
    }

    #[test]
    fn k6_found() {
        let g = generate_circle_factorization(6).unwrap();
        let out = exact_decompose(&g, BUDGET, 3).unwrap();
        assert!(verify_decomposition(&g, out.parts().unwrap()).valid);
    }

    #[test]
    fn stars_refuted_and_size_mismatch() {
        let g = generate_circle_factorization(6).unwrap();
        let star = star_tree(6).unwrap();
        assert!(matches!(isomorphic_decompose(&g, &star, BUDGET, 0).unwrap(), DecomposeOutcome::Refuted { .. }));
        assert!(isomorphic_decompose(&g, &path_tree(5).unwrap(), BUDGET, 0).is_err());
    }
}
