//! Hypergraphs, the rainbow-cycle encoding, and nibble matchings.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::path::Path;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::colouring::{pair_at, pair_count, pair_index, Colour, Edge, EdgeColouredKn, EdgeSet, Vertex};
use crate::error::{invalid, Error, Result};
use crate::rng::{seeded, stream};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Family {
    pub name: String,
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypergraph {
    vertex_count: usize,
    edges: Vec<Vec<usize>>,
    #[serde(default)]
    families: Vec<Family>,
}

impl Hypergraph {
    pub fn new(vertex_count: usize, mut edges: Vec<Vec<usize>>, families: Vec<Family>) -> Result<Self> {
        for (i, e) in edges.iter_mut().enumerate() {
            e.sort_unstable();
            e.dedup();
            if e.len() < 2 {
                return Err(invalid(format!("hyperedge {i} has fewer than two distinct vertices")));
            }
            if *e.last().unwrap() >= vertex_count {
                return Err(invalid(format!("hyperedge {i} has a vertex outside 0..{vertex_count}")));
            }
        }
        let mut h = Hypergraph { vertex_count, edges, families: Vec::new() };
        for f in families {
            h.add_family(f.name, f.members)?;
        }
        Ok(h)
    }

    pub fn add_family(&mut self, name: impl Into<String>, mut members: Vec<usize>) -> Result<()> {
        let name = name.into();
        members.sort_unstable();
        members.dedup();
        if members.last().is_some_and(|&v| v >= self.vertex_count) {
            return Err(invalid(format!("family {name} has a member out of range")));
        }
        self.families.push(Family { name, members });
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }
    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }
    pub fn edge(&self, i: usize) -> &[usize] {
        &self.edges[i]
    }
    pub fn families(&self) -> &[Family] {
        &self.families
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let raw: Hypergraph = serde_json::from_str(&text)?;
        Hypergraph::new(raw.vertex_count, raw.edges, raw.families)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, serde_json::to_string(self)? + "\n")?;
        Ok(())
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count];
        for e in &self.edges {
            for &v in e {
                d[v] += 1;
            }
        }
        d
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeStats {
    pub min_degree: usize,
    pub max_degree: usize,
    /// Largest number of edges containing a fixed pair of vertices.
    pub max_codegree: usize,
}

pub fn degree_stats(h: &Hypergraph) -> DegreeStats {
    let d = h.degrees();
    let mut co: HashMap<(usize, usize), usize> = HashMap::new();
    for e in &h.edges {
        for (a, &u) in e.iter().enumerate() {
            for &v in &e[a + 1..] {
                *co.entry((u, v)).or_default() += 1;
            }
        }
    }
    DegreeStats {
        min_degree: d.iter().copied().min().unwrap_or(0),
        max_degree: d.iter().copied().max().unwrap_or(0),
        max_codegree: co.values().copied().max().unwrap_or(0),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyCoverage {
    pub name: String,
    pub size: usize,
    pub uncovered: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchingReport {
    /// Indices of the chosen edges, sorted.
    pub matching: Vec<usize>,
    pub covered_vertices: usize,
    pub coverage: f64,
    pub families: Vec<FamilyCoverage>,
    pub gamma_effective: f64,
    /// Edges added per nibble round (empty for the greedy baseline).
    pub round_sizes: Vec<usize>,
}

/// `max(|F|, N^{2/5})`, the scale against which uncovered counts are measured.
pub fn family_scale(size: usize, vertex_count: usize) -> f64 {
    (size as f64).max((vertex_count as f64).powf(0.4))
}

fn covered_mask(h: &Hypergraph, matching: &[usize]) -> Result<Vec<bool>> {
    let mut covered = vec![false; h.vertex_count];
    for &i in matching {
        let e = h.edges.get(i).ok_or_else(|| invalid(format!("edge index {i} out of range")))?;
        for &v in e {
            if std::mem::replace(&mut covered[v], true) {
                return Err(invalid(format!("edges of the matching share vertex {v}")));
            }
        }
    }
    Ok(covered)
}

/// Builds the report for a matching, validating disjointness.
pub fn report_for(h: &Hypergraph, mut matching: Vec<usize>, round_sizes: Vec<usize>) -> Result<MatchingReport> {
    matching.sort_unstable();
    let covered = covered_mask(h, &matching)?;
    let covered_vertices = covered.iter().filter(|&&c| c).count();
    let families: Vec<FamilyCoverage> = h
        .families
        .iter()
        .map(|f| FamilyCoverage {
            name: f.name.clone(),
            size: f.members.len(),
            uncovered: f.members.iter().filter(|&&v| !covered[v]).count(),
        })
        .collect();
    let gamma_effective = families
        .iter()
        .map(|f| f.uncovered as f64 / family_scale(f.size, h.vertex_count))
        .fold(0.0, f64::max);
    Ok(MatchingReport {
        matching,
        covered_vertices,
        coverage: if h.vertex_count == 0 { 1.0 } else { covered_vertices as f64 / h.vertex_count as f64 },
        families,
        gamma_effective,
        round_sizes,
    })
}

/// Random-order greedy maximal matching.
pub fn greedy_matching(h: &Hypergraph, seed: u64) -> MatchingReport {
    let mut order: Vec<usize> = (0..h.edges.len()).collect();
    order.shuffle(&mut seeded(seed));
    let mut covered = vec![false; h.vertex_count];
    let chosen = greedy_pass(h, &order, &mut covered);
    report_for(h, chosen, Vec::new()).expect("greedy output is a matching")
}

fn greedy_pass(h: &Hypergraph, order: &[usize], covered: &mut [bool]) -> Vec<usize> {
    let mut chosen = Vec::new();
    for &i in order {
        let e = &h.edges[i];
        if e.iter().all(|&v| !covered[v]) {
            for &v in e {
                covered[v] = true;
            }
            chosen.push(i);
        }
    }
    chosen
}

/// Semi-random nibble matching.
///
/// Each round every surviving edge `e` is activated independently with
/// probability `bite / min_{v∈e} deg(v)`, where degrees are taken in the
/// current surviving hypergraph; on a `D`-regular hypergraph this is
/// `bite / D`. Edges at depleted vertices are thus picked up sooner. A maximal conflict-free subset of the activated edges (in
/// random order) joins the matching and covered vertices are deleted.
/// Remaining edges are finished by a random greedy pass.
pub fn nibble_matching(h: &Hypergraph, bite: f64, rounds: usize, seed: u64) -> Result<MatchingReport> {
    if !(bite > 0.0 && bite <= 1.0) {
        return Err(invalid(format!("bite {bite} must lie in (0, 1]")));
    }
    let mut covered = vec![false; h.vertex_count];
    let mut alive: Vec<usize> = (0..h.edges.len()).collect();
    let mut chosen = Vec::new();
    let mut round_sizes = Vec::new();
    for round in 0..rounds {
        if alive.is_empty() {
            break;
        }
        let mut deg = vec![0u32; h.vertex_count];
        for &i in &alive {
            for &v in &h.edges[i] {
                deg[v] += 1;
            }
        }
        let mut rng = stream(seed, round as u64);
        let mut activated: Vec<usize> = Vec::new();
        for &i in &alive {
            let e = &h.edges[i];
            let min_deg = e.iter().map(|&v| deg[v]).min().unwrap_or(1);
            if rng.gen::<f64>() < bite / min_deg as f64 {
                activated.push(i);
            }
        }
        activated.shuffle(&mut rng);
        let got = greedy_pass(h, &activated, &mut covered);
        round_sizes.push(got.len());
        chosen.extend(got);
        alive.retain(|&i| h.edges[i].iter().all(|&v| !covered[v]));
    }
    let mut rng = stream(seed, u64::MAX);
    alive.shuffle(&mut rng);
    chosen.extend(greedy_pass(h, &alive, &mut covered));
    report_for(h, chosen, round_sizes)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyLedger {
    pub name: String,
    pub size: usize,
    pub uncovered: usize,
    pub threshold: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaCheck {
    pub perfect: bool,
    pub ledger: Vec<FamilyLedger>,
}

/// Checks that every family has at most `γ · max(|F|, N^{2/5})` uncovered vertices.
pub fn check_gamma_perfect(h: &Hypergraph, matching: &[usize], gamma: f64) -> Result<GammaCheck> {
    let covered = covered_mask(h, matching)?;
    // tolerate rounding in the threshold product
    const EPS: f64 = 1e-9;
    let ledger: Vec<FamilyLedger> = h
        .families
        .iter()
        .map(|f| {
            let uncovered = f.members.iter().filter(|&&v| !covered[v]).count();
            let threshold = gamma * family_scale(f.members.len(), h.vertex_count);
            FamilyLedger {
                name: f.name.clone(),
                size: f.members.len(),
                uncovered,
                threshold,
                ok: uncovered as f64 <= threshold + EPS,
            }
        })
        .collect();
    Ok(GammaCheck { perfect: ledger.iter().all(|l| l.ok), ledger })
}

/// Random `r`-uniform hypergraph in which every vertex has degree close to
/// `degree` and no pair of vertices lies in more than `max_codegree` edges.
///
/// Vertex stubs are shuffled and cut into `r`-tuples; tuples with a
/// repeated vertex or a codegree overflow are returned to the pool and
/// reshuffled for a few passes. Leftover stubs are dropped. The family
/// `"all"` lists every vertex.
pub fn random_regular_hypergraph(
    vertex_count: usize,
    r: usize,
    degree: usize,
    max_codegree: usize,
    seed: u64,
) -> Result<Hypergraph> {
    if r < 2 || vertex_count < r {
        return Err(invalid(format!("need 2 <= r <= vertex count, got r = {r}")));
    }
    if max_codegree == 0 {
        return Err(invalid("max codegree must be positive"));
    }
    let mut rng = seeded(seed);
    let mut pool: Vec<usize> = (0..vertex_count).flat_map(|v| std::iter::repeat(v).take(degree)).collect();
    let mut co: HashMap<(usize, usize), usize> = HashMap::new();
    let mut edges = Vec::new();
    for _pass in 0..20 {
        if pool.len() < r {
            break;
        }
        pool.shuffle(&mut rng);
        let mut rejected = Vec::new();
        for chunk in pool.chunks(r) {
            if chunk.len() < r {
                rejected.extend_from_slice(chunk);
                continue;
            }
            let mut e = chunk.to_vec();
            e.sort_unstable();
            let distinct = e.windows(2).all(|w| w[0] != w[1]);
            let pairs: Vec<(usize, usize)> = (0..r)
                .flat_map(|a| ((a + 1)..r).map(move |b| (a, b)))
                .map(|(a, b)| (e[a], e[b]))
                .collect();
            if distinct && pairs.iter().all(|p| co.get(p).copied().unwrap_or(0) < max_codegree) {
                for p in pairs {
                    *co.entry(p).or_default() += 1;
                }
                edges.push(e);
            } else {
                rejected.extend_from_slice(chunk);
            }
        }
        pool = rejected;
    }
    let mut h = Hypergraph::new(vertex_count, edges, Vec::new())?;
    h.add_family("all", (0..vertex_count).collect())?;
    Ok(h)
}

/// Id arithmetic of the rainbow-cycle hypergraph: edge ids of `K_n` come
/// first (`[0, C(n,2))`), then the pairs `(i, v)` at `C(n,2) + i·n + v`,
/// then the pairs `(i, c)` at `C(n,2) + t·n + i·(n-1) + c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleLayout {
    pub n: usize,
    pub t: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycleVertex {
    Edge(Edge),
    IndexVertex(usize, Vertex),
    IndexColour(usize, Colour),
}

impl CycleLayout {
    pub fn vertex_count(&self) -> usize {
        pair_count(self.n) + self.t * self.n + self.t * (self.n - 1)
    }
    pub fn edge_id(&self, e: Edge) -> usize {
        pair_index(self.n, e)
    }
    pub fn vertex_id(&self, i: usize, v: Vertex) -> usize {
        pair_count(self.n) + i * self.n + v
    }
    pub fn colour_id(&self, i: usize, c: Colour) -> usize {
        pair_count(self.n) + self.t * self.n + i * (self.n - 1) + c
    }
    pub fn decode(&self, id: usize) -> Option<CycleVertex> {
        let e = pair_count(self.n);
        let vs = self.t * self.n;
        let cs = self.t * (self.n - 1);
        if id < e {
            Some(CycleVertex::Edge(pair_at(self.n, id)))
        } else if id < e + vs {
            let k = id - e;
            Some(CycleVertex::IndexVertex(k / self.n, k % self.n))
        } else if id < e + vs + cs {
            let k = id - e - vs;
            Some(CycleVertex::IndexColour(k / (self.n - 1), k % (self.n - 1)))
        } else {
            None
        }
    }
}

/// A rainbow cycle assigned to index `index`, as a closed vertex sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RainbowCycle {
    pub index: usize,
    pub vertices: Vec<Vertex>,
}

impl RainbowCycle {
    pub fn edges(&self) -> Vec<Edge> {
        let k = self.vertices.len();
        (0..k).map(|j| Edge::new(self.vertices[j], self.vertices[(j + 1) % k])).collect()
    }
}

/// Rotates and reflects a cycle so that equal cycles compare equal.
fn normalize_cycle(mut vs: Vec<Vertex>) -> Vec<Vertex> {
    let pos = vs.iter().enumerate().min_by_key(|(_, v)| **v).map(|(p, _)| p).unwrap_or(0);
    vs.rotate_left(pos);
    if vs.len() > 2 && vs[vs.len() - 1] < vs[1] {
        vs[1..].reverse();
    }
    vs
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Enumeration {
    Exhaustive,
    /// `walks` random walks per index.
    Sampled { walks: usize, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct CycleHypergraph {
    pub hypergraph: Hypergraph,
    pub layout: CycleLayout,
    /// `cycles[j]` is the cycle encoded by hyperedge `j`.
    pub cycles: Vec<RainbowCycle>,
}

/// Hypergraph whose edges encode the rainbow `ℓ`-cycles `F` of `K_n` with
/// `V(F) ⊆ V_i` and `φ(E(F)) ⊆ C_i`, one edge per pair `(i, F)`.
pub fn build_cycle_hypergraph(
    g: &EdgeColouredKn,
    vs: &[BTreeSet<Vertex>],
    cs: &[BTreeSet<Colour>],
    ell: usize,
    enumeration: Enumeration,
) -> Result<CycleHypergraph> {
    build_cycle_hypergraph_in(g, None, vs, cs, ell, enumeration)
}

/// Like [`build_cycle_hypergraph`], with cycles restricted to `host` edges.
/// Edge families then range over the host only.
pub fn build_cycle_hypergraph_in(
    g: &EdgeColouredKn,
    host: Option<&EdgeSet>,
    vs: &[BTreeSet<Vertex>],
    cs: &[BTreeSet<Colour>],
    ell: usize,
    enumeration: Enumeration,
) -> Result<CycleHypergraph> {
    if vs.len() != cs.len() {
        return Err(invalid("need one colour set per vertex set"));
    }
    if ell < 3 {
        return Err(invalid(format!("cycle length {ell} must be at least 3")));
    }
    if matches!(enumeration, Enumeration::Exhaustive) && ell > 5 {
        return Err(Error::Budget(format!("exhaustive cycle enumeration is capped at length 5, got {ell}")));
    }
    let n = g.n();
    let t = vs.len();
    let layout = CycleLayout { n, t };
    let n_colours = g.colour_count();
    let in_host = |e: Edge| host.map_or(true, |h| h.contains(&e));
    let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for e in g.edges().filter(|&e| in_host(e)) {
        adj[e.lo].push(e.hi);
        adj[e.hi].push(e.lo);
    }

    let mut cycles = Vec::new();
    for i in 0..t {
        if vs[i].iter().any(|&v| v >= n) || cs[i].iter().any(|&c| c >= n_colours) {
            return Err(invalid(format!("V_{i} or C_{i} out of range")));
        }
        let mut allowed_v = vec![false; n];
        for &v in &vs[i] {
            allowed_v[v] = true;
        }
        let mut allowed_c = vec![false; n_colours];
        for &c in &cs[i] {
            allowed_c[c] = true;
        }
        let ok_edge = |u: Vertex, w: Vertex| allowed_v[w] && allowed_c[g.colour_of(u, w)];
        let found = match enumeration {
            Enumeration::Exhaustive => {
                let mut out = Vec::new();
                for &s in &vs[i] {
                    let mut path = vec![s];
                    let mut used = vec![false; n_colours];
                    dfs_cycles(g, &adj, &ok_edge, ell, &mut path, &mut used, &mut out);
                }
                out
            }
            Enumeration::Sampled { walks, seed } => {
                let mut rng = stream(seed, i as u64);
                let pool: Vec<Vertex> = vs[i].iter().copied().collect();
                let mut seen = BTreeSet::new();
                if !pool.is_empty() {
                    for _ in 0..walks {
                        if let Some(c) = random_cycle(g, &adj, &ok_edge, ell, &pool, &mut rng) {
                            seen.insert(normalize_cycle(c));
                        }
                    }
                }
                seen.into_iter().collect()
            }
        };
        cycles.extend(found.into_iter().map(|vertices| RainbowCycle { index: i, vertices }));
    }

    let edges: Vec<Vec<usize>> = cycles.iter().map(|f| encode_cycle(g, layout, f)).collect();
    let mut h = Hypergraph::new(layout.vertex_count(), edges, Vec::new())?;
    for i in 0..t {
        h.add_family(format!("V_{i}"), vs[i].iter().map(|&v| layout.vertex_id(i, v)).collect())?;
        h.add_family(format!("C_{i}"), cs[i].iter().map(|&c| layout.colour_id(i, c)).collect())?;
    }
    for v in 0..n {
        let owners = (0..t).filter(|&i| vs[i].contains(&v)).map(|i| layout.vertex_id(i, v)).collect();
        h.add_family(format!("owners_of_vertex_{v}"), owners)?;
        let star = adj[v].iter().map(|&w| layout.edge_id(Edge::new(v, w))).collect();
        h.add_family(format!("edges_at_{v}"), star)?;
    }
    for c in 0..n_colours {
        let owners = (0..t).filter(|&i| cs[i].contains(&c)).map(|i| layout.colour_id(i, c)).collect();
        h.add_family(format!("owners_of_colour_{c}"), owners)?;
        let class = g.class(c).iter().filter(|&&e| in_host(e)).map(|&e| layout.edge_id(e)).collect();
        h.add_family(format!("edges_of_colour_{c}"), class)?;
    }
    Ok(CycleHypergraph { hypergraph: h, layout, cycles })
}

fn encode_cycle(g: &EdgeColouredKn, layout: CycleLayout, f: &RainbowCycle) -> Vec<usize> {
    let mut ids = Vec::with_capacity(3 * f.vertices.len());
    for e in f.edges() {
        ids.push(layout.edge_id(e));
        ids.push(layout.colour_id(f.index, g.colour(e)));
    }
    for &v in &f.vertices {
        ids.push(layout.vertex_id(f.index, v));
    }
    ids.sort_unstable();
    ids
}

/// Cycles with smallest vertex `path[0]`, second vertex smaller than last.
fn dfs_cycles(
    g: &EdgeColouredKn,
    adj: &[Vec<Vertex>],
    ok_edge: &dyn Fn(Vertex, Vertex) -> bool,
    ell: usize,
    path: &mut Vec<Vertex>,
    used: &mut [bool],
    out: &mut Vec<Vec<Vertex>>,
) {
    let s = path[0];
    let u = *path.last().unwrap();
    if path.len() == ell {
        if path[1] < path[ell - 1] && adj[u].contains(&s) && ok_edge(u, s) && !used[g.colour_of(u, s)] {
            out.push(path.clone());
        }
        return;
    }
    for &w in &adj[u] {
        if w <= s || path.contains(&w) || !ok_edge(u, w) {
            continue;
        }
        let c = g.colour_of(u, w);
        if used[c] {
            continue;
        }
        used[c] = true;
        path.push(w);
        dfs_cycles(g, adj, ok_edge, ell, path, used, out);
        path.pop();
        used[c] = false;
    }
}

fn random_cycle(
    g: &EdgeColouredKn,
    adj: &[Vec<Vertex>],
    ok_edge: &dyn Fn(Vertex, Vertex) -> bool,
    ell: usize,
    pool: &[Vertex],
    rng: &mut impl Rng,
) -> Option<Vec<Vertex>> {
    let s = pool[rng.gen_range(0..pool.len())];
    let mut path = vec![s];
    let mut colours = HashSet::new();
    while path.len() < ell {
        let u = *path.last().unwrap();
        let options: Vec<Vertex> = adj[u]
            .iter()
            .copied()
            .filter(|&w| !path.contains(&w) && ok_edge(u, w) && !colours.contains(&g.colour_of(u, w)))
            .collect();
        let w = *options.get(rng.gen_range(0..options.len().max(1)))?;
        colours.insert(g.colour_of(u, w));
        path.push(w);
    }
    let u = *path.last().unwrap();
    (adj[u].contains(&s) && ok_edge(u, s) && !colours.contains(&g.colour_of(u, s))).then_some(path)
}

/// Decodes a matching of a cycle hypergraph into per-index cycle sets and
/// re-verifies the three disjointness properties: within an index the
/// cycles are vertex- and colour-disjoint, and across all indices they are
/// edge-disjoint.
pub fn extract_disjoint_families(
    g: &EdgeColouredKn,
    ch: &CycleHypergraph,
    matching: &[usize],
    t: usize,
) -> Result<Vec<Vec<RainbowCycle>>> {
    let layout = ch.layout;
    let mut out = vec![Vec::new(); t];
    let mut edge_owner: HashSet<Edge> = HashSet::new();
    let mut vertex_used: HashSet<(usize, Vertex)> = HashSet::new();
    let mut colour_used: HashSet<(usize, Colour)> = HashSet::new();
    for &j in matching {
        let ids = ch
            .hypergraph
            .edges
            .get(j)
            .ok_or_else(|| Error::Internal(format!("matching refers to missing hyperedge {j}")))?;
        let mut es = Vec::new();
        let mut vset = Vec::new();
        let mut cset = Vec::new();
        for &id in ids {
            match layout.decode(id) {
                Some(CycleVertex::Edge(e)) => es.push(e),
                Some(CycleVertex::IndexVertex(i, v)) => vset.push((i, v)),
                Some(CycleVertex::IndexColour(i, c)) => cset.push((i, c)),
                None => return Err(Error::Internal(format!("undecodable id {id}"))),
            }
        }
        let f = &ch.cycles[j];
        let i = f.index;
        let mut expect_e = f.edges();
        expect_e.sort();
        es.sort();
        let mut expect_c: Vec<(usize, Colour)> = expect_e.iter().map(|&e| (i, g.colour(e))).collect();
        expect_c.sort();
        cset.sort();
        let mut expect_v: Vec<(usize, Vertex)> = f.vertices.iter().map(|&v| (i, v)).collect();
        expect_v.sort();
        vset.sort();
        if es != expect_e || cset != expect_c || vset != expect_v || i >= t {
            return Err(Error::Internal(format!("hyperedge {j} does not decode to its cycle")));
        }
        for &e in &es {
            if !edge_owner.insert(e) {
                return Err(Error::Internal(format!("edge {e} used by two cycles")));
            }
        }
        for &p in &vset {
            if !vertex_used.insert(p) {
                return Err(Error::Internal(format!("vertex {} reused within index {}", p.1, p.0)));
            }
        }
        for &p in &cset {
            if !colour_used.insert(p) {
                return Err(Error::Internal(format!("colour {} reused within index {}", p.1, p.0)));
            }
        }
        out[i].push(f.clone());
    }
    for fs in &mut out {
        fs.sort();
    }
    Ok(out)
}
