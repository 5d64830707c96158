//! Greedy rainbow rooted embeddings.
//!
//! Patterns `H_1, …, H_t` are embedded one after another into a host edge
//! set, each with its roots pinned, its other vertices inside `V_i` and its
//! edges carrying distinct colours from `C_i`. Host edges are consumed, so
//! the images are edge-disjoint. Before each index the set `B` of host
//! vertices whose accumulated degree exceeds `⌈√γ·n⌉` is recomputed, and
//! non-root vertices avoid it.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::colouring::{pair_count, pair_index, Colour, Edge, EdgeColouredKn, EdgeSet, Vertex};
use crate::error::{invalid, Error, Result};
use crate::rng::stream;

/// A small graph on `0..vertex_count`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pattern {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Pattern {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &(a, b) in &edges {
            if a == b || a >= vertex_count || b >= vertex_count {
                return Err(invalid(format!("pattern edge ({a}, {b}) is invalid")));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(invalid(format!("pattern edge ({a}, {b}) is repeated")));
            }
        }
        Ok(Pattern { vertex_count, edges })
    }

    /// Path with `len` edges on vertices `0..=len`.
    pub fn path(len: usize) -> Self {
        Pattern { vertex_count: len + 1, edges: (0..len).map(|i| (i, i + 1)).collect() }
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency().iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// One pattern with its roots, target vertices and allowed colours.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbedIndex {
    pub pattern: Pattern,
    /// Pairs `(pattern vertex, host vertex)`: the root set `X_i` and `Λ_i`.
    pub roots: Vec<(usize, Vertex)>,
    pub vertices: BTreeSet<Vertex>,
    pub colours: BTreeSet<Colour>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingTask {
    pub host: EdgeSet,
    pub indices: Vec<EmbedIndex>,
    /// Declared bound `Δ` on pattern degrees.
    pub max_degree: usize,
    pub gamma: f64,
}

impl EmbeddingTask {
    pub fn validate(&self, n: usize) -> Result<()> {
        if self.host.iter().any(|e| e.hi >= n) {
            return Err(invalid("host edge outside the vertex range"));
        }
        if !(self.gamma >= 0.0) {
            return Err(invalid("gamma must be non-negative"));
        }
        for (i, idx) in self.indices.iter().enumerate() {
            let p = &idx.pattern;
            if p.max_degree() > self.max_degree {
                return Err(invalid(format!(
                    "pattern {i} has maximum degree {} > {}",
                    p.max_degree(),
                    self.max_degree
                )));
            }
            let mut is_root = vec![false; p.vertex_count];
            let mut images = BTreeSet::new();
            for &(x, v) in &idx.roots {
                if x >= p.vertex_count || v >= n {
                    return Err(invalid(format!("root ({x}, {v}) of pattern {i} out of range")));
                }
                if std::mem::replace(&mut is_root[x], true) {
                    return Err(invalid(format!("pattern {i} roots vertex {x} twice")));
                }
                if !images.insert(v) {
                    return Err(invalid(format!("root placement of pattern {i} is not injective")));
                }
            }
            if p.edges.iter().any(|&(a, b)| is_root[a] && is_root[b]) {
                return Err(invalid(format!("roots of pattern {i} are not independent")));
            }
            if idx.vertices.iter().any(|&v| v >= n) || idx.colours.iter().any(|&c| c + 1 >= n) {
                return Err(invalid(format!("V_{i} or C_{i} out of range")));
            }
        }
        Ok(())
    }
}

/// Why host vertices were excluded from a candidate set. Each excluded
/// vertex is counted once, under the first reason that applies.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionBreakdown {
    /// `|V_i|` before exclusions.
    pub pool: usize,
    pub used_vertex: usize,
    pub avoided: usize,
    pub consumed_edge: usize,
    pub not_adjacent: usize,
    pub colour_not_allowed: usize,
    pub colour_used: usize,
    /// Two edges to `S` would share a colour.
    pub colliding: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StuckReport {
    pub index: usize,
    pub pattern_vertex: usize,
    pub placed_neighbours: usize,
    pub breakdown: ExclusionBreakdown,
}

impl fmt::Display for StuckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = &self.breakdown;
        write!(
            f,
            "index {}, pattern vertex {} with {} placed neighbours: of {} vertices, {} used, {} avoided, {} consumed edge, {} not adjacent, {} colour not allowed, {} colour used, {} colliding",
            self.index,
            self.pattern_vertex,
            self.placed_neighbours,
            b.pool,
            b.used_vertex,
            b.avoided,
            b.consumed_edge,
            b.not_adjacent,
            b.colour_not_allowed,
            b.colour_used,
            b.colliding
        )
    }
}

/// Host state shared by candidate queries.
pub struct HostView<'a> {
    pub g: &'a EdgeColouredKn,
    /// `in_host[pair_index(e)]`.
    pub in_host: &'a [bool],
    /// `consumed[pair_index(e)]`.
    pub consumed: &'a [bool],
}

impl<'a> HostView<'a> {
    pub fn host_mask(g: &EdgeColouredKn, host: &EdgeSet) -> Vec<bool> {
        let mut mask = vec![false; pair_count(g.n())];
        for &e in host {
            mask[pair_index(g.n(), e)] = true;
        }
        mask
    }
}

/// Host vertices `v ∈ V_i` that can be joined to every `u ∈ S` by an
/// unconsumed host edge whose colour lies in `C_i`, is unused and differs
/// from the colours of the other new edges; `used_vertices` and `avoid`
/// are excluded.
pub fn candidate_set(
    view: &HostView<'_>,
    s: &[Vertex],
    vertices: &BTreeSet<Vertex>,
    colours: &BTreeSet<Colour>,
    used_vertices: &BTreeSet<Vertex>,
    used_colours: &BTreeSet<Colour>,
    avoid: &BTreeSet<Vertex>,
) -> (Vec<Vertex>, ExclusionBreakdown) {
    let n = view.g.n();
    let mut out = Vec::new();
    let mut b = ExclusionBreakdown { pool: vertices.len(), ..Default::default() };
    'outer: for &v in vertices {
        if used_vertices.contains(&v) || s.contains(&v) {
            b.used_vertex += 1;
            continue;
        }
        if avoid.contains(&v) {
            b.avoided += 1;
            continue;
        }
        let mut fresh: Vec<Colour> = Vec::with_capacity(s.len());
        for &u in s {
            let e = Edge::new(u, v);
            let k = pair_index(n, e);
            if view.in_host[k] && view.consumed[k] {
                b.consumed_edge += 1;
                continue 'outer;
            }
            if !view.in_host[k] {
                b.not_adjacent += 1;
                continue 'outer;
            }
            let c = view.g.colour(e);
            if !colours.contains(&c) {
                b.colour_not_allowed += 1;
                continue 'outer;
            }
            if used_colours.contains(&c) {
                b.colour_used += 1;
                continue 'outer;
            }
            if fresh.contains(&c) {
                b.colliding += 1;
                continue 'outer;
            }
            fresh.push(c);
        }
        out.push(v);
    }
    (out, b)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerViolation {
    pub index: usize,
    pub vertex: Vertex,
    pub degree: usize,
    pub bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeAudit {
    /// Accumulated degree of each host vertex in the union of the images.
    pub degrees: Vec<usize>,
    pub max_observed: usize,
    /// `⌈√γ·n⌉`.
    pub threshold: usize,
    /// Breaches of `2⌈√γ·n⌉ + r(u,s)·Δ` after some index `s`, where
    /// `r(u,s)` counts indices `j ≤ s` rooting a vertex at `u`.
    pub violations: Vec<LedgerViolation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingResult {
    /// `placements[i][x]` is `ψ_i(x)`.
    pub placements: Vec<Vec<Vertex>>,
    /// Host edges used by each image, in pattern edge order.
    pub edges: Vec<Vec<Edge>>,
    pub audit: DegreeAudit,
}

/// Embeds the patterns of `task` in order; see the module docs.
pub fn greedy_embed(g: &EdgeColouredKn, task: &EmbeddingTask, seed: u64) -> Result<EmbeddingResult> {
    let n = g.n();
    task.validate(n)?;
    let in_host = HostView::host_mask(g, &task.host);
    let mut consumed = vec![false; pair_count(n)];
    let threshold = ((task.gamma.sqrt() * n as f64) - 1e-9).ceil().max(0.0) as usize;
    let mut degrees = vec![0usize; n];
    let mut root_count = vec![0usize; n];
    let mut violations = Vec::new();
    let mut placements = Vec::with_capacity(task.indices.len());
    let mut all_edges = Vec::with_capacity(task.indices.len());

    for (s, idx) in task.indices.iter().enumerate() {
        let mut rng = stream(seed, s as u64);
        let p = &idx.pattern;
        let adj = p.adjacency();
        let avoid: BTreeSet<Vertex> = (0..n).filter(|&u| degrees[u] > threshold).collect();
        let mut place: Vec<Option<Vertex>> = vec![None; p.vertex_count];
        let mut used_vertices = BTreeSet::new();
        let mut used_colours = BTreeSet::new();
        for &(x, v) in &idx.roots {
            place[x] = Some(v);
            used_vertices.insert(v);
            root_count[v] += 1;
        }
        let mut edge_of: Vec<Option<Edge>> = vec![None; p.edges.len()];
        for x in bfs_order(p.vertex_count, &adj, &idx.roots) {
            if place[x].is_some() {
                continue;
            }
            let nbrs: Vec<Vertex> = adj[x].iter().filter_map(|&y| place[y]).collect();
            let (cands, breakdown) = {
                let view = HostView { g, in_host: &in_host, consumed: &consumed };
                candidate_set(&view, &nbrs, &idx.vertices, &idx.colours, &used_vertices, &used_colours, &avoid)
            };
            let Some(&v) = cands.choose(&mut rng) else {
                return Err(Error::EmbedStuck(Box::new(StuckReport {
                    index: s,
                    pattern_vertex: x,
                    placed_neighbours: nbrs.len(),
                    breakdown,
                })));
            };
            place[x] = Some(v);
            used_vertices.insert(v);
            for &u in &nbrs {
                let e = Edge::new(u, v);
                consumed[pair_index(n, e)] = true;
                used_colours.insert(g.colour(e));
                degrees[u] += 1;
                degrees[v] += 1;
            }
        }
        let placed: Vec<Vertex> = place.into_iter().map(|v| v.expect("every vertex placed")).collect();
        for (k, &(a, b)) in p.edges.iter().enumerate() {
            edge_of[k] = Some(Edge::new(placed[a], placed[b]));
        }
        for u in 0..n {
            let bound = 2 * threshold + root_count[u] * task.max_degree;
            if degrees[u] > bound {
                violations.push(LedgerViolation { index: s, vertex: u, degree: degrees[u], bound });
            }
        }
        placements.push(placed);
        all_edges.push(edge_of.into_iter().map(|e| e.expect("edge placed")).collect());
    }
    let max_observed = degrees.iter().copied().max().unwrap_or(0);
    Ok(EmbeddingResult {
        placements,
        edges: all_edges,
        audit: DegreeAudit { degrees, max_observed, threshold, violations },
    })
}

/// Roots first, then breadth-first from them; leftover components are
/// explored from their smallest vertex.
fn bfs_order(k: usize, adj: &[Vec<usize>], roots: &[(usize, Vertex)]) -> Vec<usize> {
    let mut seen = vec![false; k];
    let mut order = Vec::with_capacity(k);
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &(x, _) in roots {
        seen[x] = true;
        queue.push_back(x);
    }
    let mut next_start = 0;
    loop {
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        while next_start < k && seen[next_start] {
            next_start += 1;
        }
        if next_start == k {
            break;
        }
        seen[next_start] = true;
        queue.push_back(next_start);
    }
    order
}

/// Independent check of an embedding result: images injective, roots
/// fixed, non-roots in `V_i`, each image rainbow in `C_i`, all images
/// edge-disjoint inside the host, and the degree ledger recount. Returns
/// the list of failures.
pub fn audit_embedding(g: &EdgeColouredKn, task: &EmbeddingTask, result: &EmbeddingResult) -> Vec<String> {
    let mut failures = Vec::new();
    let mut used: BTreeSet<Edge> = BTreeSet::new();
    let mut degrees = vec![0usize; g.n()];
    for (i, idx) in task.indices.iter().enumerate() {
        let place = &result.placements[i];
        let distinct: BTreeSet<Vertex> = place.iter().copied().collect();
        if distinct.len() != place.len() {
            failures.push(format!("index {i}: placement not injective"));
        }
        let roots: BTreeSet<usize> = idx.roots.iter().map(|r| r.0).collect();
        for &(x, v) in &idx.roots {
            if place[x] != v {
                failures.push(format!("index {i}: root {x} moved"));
            }
        }
        for (x, &v) in place.iter().enumerate() {
            if !roots.contains(&x) && !idx.vertices.contains(&v) {
                failures.push(format!("index {i}: vertex {x} left V_i"));
            }
        }
        let mut colours = BTreeSet::new();
        for &(a, b) in &idx.pattern.edges {
            let e = Edge::new(place[a], place[b]);
            if !task.host.contains(&e) {
                failures.push(format!("index {i}: {e} not in host"));
            }
            if !used.insert(e) {
                failures.push(format!("index {i}: {e} used twice"));
            }
            let c = g.colour(e);
            if !idx.colours.contains(&c) || !colours.insert(c) {
                failures.push(format!("index {i}: colour {c} of {e} not fresh in C_i"));
            }
            degrees[e.lo] += 1;
            degrees[e.hi] += 1;
        }
    }
    if degrees != result.audit.degrees {
        failures.push("degree ledger differs from recount".into());
    }
    if !result.audit.violations.is_empty() {
        failures.push(format!("{} degree bound breaches", result.audit.violations.len()));
    }
    failures
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::{all_pairs, generate_circle_factorization};

    fn full_task(g: &EdgeColouredKn, indices: Vec<(Pattern, Vec<(usize, Vertex)>)>) -> EmbeddingTask {
        let n = g.n();
        EmbeddingTask {
            host: all_pairs(n).collect(),
            indices: indices
                .into_iter()
                .map(|(pattern, roots)| EmbedIndex {
                    pattern,
                    roots,
                    vertices: (0..n).collect(),
                    colours: (0..n - 1).collect(),
                })
                .collect(),
            max_degree: 2,
            gamma: 0.01,
        }
    }

    #[test]
    fn isolated_roots_stay_put() {
        let g = generate_circle_factorization(8).unwrap();
        let task = full_task(&g, vec![(Pattern::new(2, vec![]).unwrap(), vec![(0, 3), (1, 5)])]);
        let r = greedy_embed(&g, &task, 0).unwrap();
        assert_eq!(r.placements[0], vec![3, 5]);
        assert!(r.edges[0].is_empty());
    }

    #[test]
    fn candidates_match_filter() {
        let g = generate_circle_factorization(10).unwrap();
        let host: EdgeSet = all_pairs(10).collect();
        let mask = HostView::host_mask(&g, &host);
        let consumed = vec![false; mask.len()];
        let view = HostView { g: &g, in_host: &mask, consumed: &consumed };
        let all: BTreeSet<Vertex> = (0..10).collect();
        let cols: BTreeSet<Colour> = (0..9).collect();
        let none = BTreeSet::new();
        let (c, _) = candidate_set(&view, &[0], &all, &cols, &none, &none, &none);
        assert_eq!(c, (1..10).collect::<Vec<_>>());
        let (c, _) = candidate_set(&view, &[0], &all, &BTreeSet::new(), &none, &none, &none);
        assert!(c.is_empty());
        let (c, b) = candidate_set(&view, &[], &all, &cols, &BTreeSet::from([2]), &none, &none);
        assert_eq!(c.len(), 9);
        assert_eq!(b.used_vertex, 1);
    }

    #[test]
    fn path_between_roots() {
        let g = generate_circle_factorization(8).unwrap();
        let task = full_task(&g, vec![(Pattern::path(2), vec![(0, 1), (2, 6)])]);
        let r = greedy_embed(&g, &task, 4).unwrap();
        let w = r.placements[0][1];
        assert_ne!(g.colour_of(1, w), g.colour_of(6, w));
        assert!(audit_embedding(&g, &task, &r).is_empty());
    }

    #[test]
    fn stuck_is_reported() {
        let g = generate_circle_factorization(4).unwrap();
        let mut task = full_task(&g, vec![(Pattern::path(2), vec![(0, 0), (2, 1)])]);
        task.indices[0].colours = BTreeSet::from([0]);
        match greedy_embed(&g, &task, 0) {
            Err(Error::EmbedStuck(rep)) => assert_eq!(rep.placed_neighbours, 2),
            other => panic!("expected stuck, got {other:?}"),
        }
    }

    #[test]
    fn adjacent_roots_rejected() {
        let g = generate_circle_factorization(6).unwrap();
        let task = full_task(&g, vec![(Pattern::path(1), vec![(0, 0), (1, 1)])]);
        assert!(matches!(greedy_embed(&g, &task, 0), Err(Error::InvalidArgument(_))));
    }
}
