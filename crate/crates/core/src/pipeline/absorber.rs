//! Toy-scale edge and colour absorbers.
//!
//! Both demos share one forest shape: hubs `w_0, …, w_k` and matchings
//! `M_1, …, M_k`, where `w_{j-1}` reaches every tail of `M_j` and `w_j`
//! every head of `M_j` through paths of length 2. The forest has `k + 1`
//! components and adding one edge from each matching joins them into a
//! tree whose shape does not depend on the edges chosen.
//!
//! In the edge demo the matchings are monochromatic, one per colour, and a
//! robustly matchable graph per colour decides which tree absorbs which
//! reservoir edge. In the colour demo the matchings are rainbow and one
//! robustly matchable graph assigns a colour to every matching.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use rand::seq::{index, SliceRandom};
use rand::RngCore;
use serde::Serialize;

use crate::colouring::{
    all_pairs, generate_circle_factorization, is_rainbow_slice, Colour, Edge, EdgeColouredKn, EdgeSet, Vertex,
};
use crate::embed::{greedy_embed, EmbedIndex, EmbeddingTask, Pattern};
use crate::error::{invalid, Result};
use crate::rmbg::{is_robustly_matchable, robust_match, Mode, Rmbg, RmbgJson, Verdict};
use crate::rng::{seeded, stream};
use crate::trees::{canonical_form, TreeShape};

pub const MAX_MATCHING_SIZE: usize = 4;
pub const MAX_EDGE_MATCHINGS: usize = 6;
pub const MAX_COLOUR_S: usize = 3;
const EMBED_ATTEMPTS: u64 = 50;
const RMBG_ATTEMPTS: u64 = 20_000;

/// Edge absorber: `matchings` colours, each with an `RMBG(3m, 2m, 2m)`
/// whose `X`-vertices are the `3m` trees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeAbsorberConfig {
    pub matchings: usize,
    pub matching_size: usize,
    pub m: usize,
}

/// Colour absorber: `3s` rainbow matchings, a reservoir of `reservoir`
/// colours (normally `2s`) and a buffer of `2s` colours.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ColourAbsorberConfig {
    pub s: usize,
    pub reservoir: usize,
    pub matching_size: usize,
}

impl ColourAbsorberConfig {
    pub fn standard(s: usize, matching_size: usize) -> Self {
        ColourAbsorberConfig { s, reservoir: 2 * s, matching_size }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbsorberTree {
    pub hubs: Vec<Vertex>,
    /// `F̃`: the forest without matching edges.
    pub forest: Vec<Edge>,
    /// Matchings in chain order; each edge is stored `(tail, head)` as `(lo, hi)`.
    pub matchings: Vec<Vec<Edge>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AbsorberDesign {
    Edge {
        config: EdgeAbsorberConfig,
        /// `c_j` for matching slot `j`.
        colours: Vec<Colour>,
        /// `H_j`; `X`-vertex `x` is tree `x`.
        rmbgs: Vec<Rmbg>,
        /// `E_{c_j}(G_1)`: the `Y` side of `H_j`.
        reservoir: Vec<Vec<Edge>>,
        /// `E_{c_j}(G_2)`: the `Z` side of `H_j`.
        buffer: Vec<Vec<Edge>>,
    },
    Colour {
        config: ColourAbsorberConfig,
        /// `X` = matchings, `Y` = `C'_1`, `Z` = `C'_2`.
        rmbg: Rmbg,
        reservoir: Vec<Colour>,
        buffer: Vec<Colour>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbsorberDemo {
    pub g: EdgeColouredKn,
    pub trees: Vec<AbsorberTree>,
    pub design: AbsorberDesign,
    pub expected_form: String,
}

/// Result of an exhaustive absorber audit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AbsorberAudit {
    /// Completions checked for (P) or (P′).
    pub completions: u64,
    /// Admissible reservoir subsets checked for (Q) or (P′).
    pub subsets: u64,
    pub distinct_forms: usize,
    pub failures: Vec<String>,
}

impl AbsorberAudit {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.distinct_forms <= 1
    }
}

/// The completed tree of a chain with `k` matchings of size `l`.
pub fn absorber_chain_shape(k: usize, l: usize) -> Result<TreeShape> {
    if k == 0 || l == 0 {
        return Err(invalid("a chain needs at least one matching of size at least one"));
    }
    let mut edges = Vec::new();
    let hubs: Vec<usize> = (0..=k).collect();
    let mut next = k + 1;
    for j in 0..k {
        for e in 0..l {
            let (tail, mid_t, head, mid_h) = (next, next + 1, next + 2, next + 3);
            next += 4;
            edges.push((hubs[j], mid_t));
            edges.push((mid_t, tail));
            edges.push((hubs[j + 1], mid_h));
            edges.push((mid_h, head));
            if e == 0 {
                edges.push((tail, head));
            }
        }
    }
    TreeShape::new(next, &edges)
}

fn chain_pattern(k: usize, l: usize) -> (Pattern, usize) {
    // ids: hubs 0..=k, then per matching edge: tail, head, mid_t, mid_h
    let mut edges = Vec::new();
    let mut next = k + 1;
    for j in 0..k {
        for _ in 0..l {
            let (tail, head, mid_t, mid_h) = (next, next + 1, next + 2, next + 3);
            next += 4;
            edges.push((j, mid_t));
            edges.push((mid_t, tail));
            edges.push((j + 1, mid_h));
            edges.push((mid_h, head));
        }
    }
    (Pattern::new(next, edges).expect("chain pattern"), k + 1)
}

/// Embeds one chain forest per entry of `matchings`, edge-disjointly,
/// avoiding `reserved` edges, `reserved_vertices` and `reserved_colours`.
fn embed_chains(
    g: &EdgeColouredKn,
    matchings: &[Vec<Vec<Edge>>],
    reserved: &EdgeSet,
    reserved_vertices: &BTreeSet<Vertex>,
    reserved_colours: &BTreeSet<Colour>,
    seed: u64,
) -> Result<Vec<AbsorberTree>> {
    let n = g.n();
    let host: EdgeSet = all_pairs(n).filter(|e| !reserved.contains(e)).collect();
    let colours: BTreeSet<Colour> = (0..g.colour_count()).filter(|c| !reserved_colours.contains(c)).collect();
    let free: Vec<Vertex> = (0..n).filter(|v| !reserved_vertices.contains(v)).collect();
    let mut last_err = None;
    for attempt in 0..EMBED_ATTEMPTS {
        let mut rng = stream(seed, attempt);
        let mut indices = Vec::with_capacity(matchings.len());
        let mut hub_lists = Vec::with_capacity(matchings.len());
        for ms in matchings {
            let k = ms.len();
            let l = ms[0].len();
            let (pattern, hub_count) = chain_pattern(k, l);
            // hubs are pinned in advance so that every path vertex sees two
            // placed neighbours and the hubs never need 2l fresh colours at once
            let hubs: Vec<Vertex> = free.choose_multiple(&mut rng, hub_count).copied().collect();
            if hubs.len() < hub_count {
                return Err(invalid("not enough free vertices for the hubs"));
            }
            let mut roots: Vec<(usize, Vertex)> = hubs.iter().copied().enumerate().collect();
            let mut next = hub_count;
            for m in ms {
                for e in m {
                    roots.push((next, e.lo));
                    roots.push((next + 1, e.hi));
                    next += 4;
                }
            }
            let vertices: BTreeSet<Vertex> = free.iter().copied().filter(|v| !hubs.contains(v)).collect();
            indices.push(EmbedIndex { pattern, roots, vertices, colours: colours.clone() });
            hub_lists.push(hubs);
        }
        let task = EmbeddingTask { host: host.clone(), indices, max_degree: 2 * MAX_MATCHING_SIZE, gamma: 1.0 };
        match greedy_embed(g, &task, seed ^ attempt.wrapping_mul(0x9e37_79b9)) {
            Ok(res) => {
                return Ok(matchings
                    .iter()
                    .zip(hub_lists)
                    .zip(res.edges)
                    .map(|((ms, hubs), forest)| AbsorberTree { hubs, forest, matchings: ms.clone() })
                    .collect())
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(invalid(format!(
        "absorber forest could not be embedded in {EMBED_ATTEMPTS} attempts: {}",
        last_err.map(|e| e.to_string()).unwrap_or_default()
    )))
}

/// Random bipartite graphs with every `X`-degree equal to `degree`, until
/// one is robustly matchable (checked exhaustively).
fn rmbg_with_x_degree(x: usize, y: usize, z: usize, degree: usize, seed: u64) -> Result<Rmbg> {
    if degree > y + z {
        return Err(invalid(format!("X-degree {degree} exceeds |Y ∪ Z| = {}", y + z)));
    }
    let mut rng = seeded(seed);
    for _ in 0..RMBG_ATTEMPTS {
        let adj: Vec<Vec<usize>> =
            (0..x).map(|_| index::sample(&mut rng, y + z, degree).into_vec()).collect();
        let h = Rmbg::new(x, y, z, adj)?;
        if matches!(is_robustly_matchable(&h, Mode::Exhaustive)?, Verdict::Proven { .. }) {
            return Ok(h);
        }
    }
    Err(invalid(format!(
        "no robustly matchable ({x}, {y}, {z}) graph with X-degree {degree} found in {RMBG_ATTEMPTS} draws"
    )))
}

/// A circle factorization with vertices and colours shuffled by `seed`.
fn shuffled_instance(n: usize, seed: u64) -> Result<EdgeColouredKn> {
    let g = generate_circle_factorization(n)?;
    let mut rng = seeded(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut cperm: Vec<usize> = (0..n - 1).collect();
    cperm.shuffle(&mut rng);
    Ok(g.relabeled(&perm, &cperm))
}

/// Vertex-disjoint edges with the requested colours, drawn at random.
fn disjoint_edges(g: &EdgeColouredKn, wanted: &[Colour], seed: u64) -> Result<Vec<Edge>> {
    let mut rng = seeded(seed);
    let mut used = vec![false; g.n()];
    let mut out = Vec::with_capacity(wanted.len());
    for &c in wanted {
        let free: Vec<Edge> = g.class(c).iter().copied().filter(|e| !used[e.lo] && !used[e.hi]).collect();
        let e = *free.choose(&mut rng).ok_or_else(|| invalid(format!("colour {c} has no free edge left")))?;
        used[e.lo] = true;
        used[e.hi] = true;
        out.push(e);
    }
    Ok(out)
}

fn even_at_least(x: usize) -> usize {
    x + x % 2
}

/// Edge absorber demo: property (P) for each of the `3m` trees and (Q)
/// through the per-colour robustly matchable graphs.
pub fn build_edge_absorber_demo(cfg: &EdgeAbsorberConfig, seed: u64) -> Result<AbsorberDemo> {
    let (k, l, m) = (cfg.matchings, cfg.matching_size, cfg.m);
    if k == 0 || k > MAX_EDGE_MATCHINGS {
        return Err(invalid(format!("toy scale allows 1..={MAX_EDGE_MATCHINGS} matchings per tree, got {k}")));
    }
    if l == 0 || l > MAX_MATCHING_SIZE {
        return Err(invalid(format!("toy scale allows matchings of size 1..={MAX_MATCHING_SIZE}, got {l}")));
    }
    if !(1..=2).contains(&m) {
        return Err(invalid(format!("toy scale uses m in {{1, 2}}, got {m}")));
    }
    let rmbgs = (0..k)
        .map(|j| rmbg_with_x_degree(3 * m, 2 * m, 2 * m, l, derive_seed(seed, 1000 + j as u64)))
        .collect::<Result<Vec<_>>>()?;
    // each tree needs 4kl forest colours besides the k matching colours;
    // twice that leaves the greedy embedding room to manoeuvre
    let n = even_at_least((2 * (4 * k * l + k) + 1).max(8 * m * k + 2 * (k + 1 + 2 * k * l)));
    let g = shuffled_instance(n, seed)?;
    let colours: Vec<Colour> = (0..k).collect();
    // 4m edges of every matching colour, all vertex-disjoint
    let wanted: Vec<Colour> = colours.iter().flat_map(|&c| std::iter::repeat(c).take(4 * m)).collect();
    let picked = disjoint_edges(&g, &wanted, derive_seed(seed, 1))?;
    let reservoir: Vec<Vec<Edge>> = (0..k).map(|j| picked[4 * m * j..4 * m * j + 2 * m].to_vec()).collect();
    let buffer: Vec<Vec<Edge>> = (0..k).map(|j| picked[4 * m * j + 2 * m..4 * m * (j + 1)].to_vec()).collect();
    let right_edge = |j: usize, r: usize| if r < 2 * m { reservoir[j][r] } else { buffer[j][r - 2 * m] };
    let per_tree: Vec<Vec<Vec<Edge>>> = (0..3 * m)
        .map(|x| (0..k).map(|j| rmbgs[j].neighbours(x).iter().map(|&r| right_edge(j, r)).collect()).collect())
        .collect();
    let reserved: EdgeSet = picked.iter().copied().collect();
    let reserved_vertices: BTreeSet<Vertex> = picked.iter().flat_map(|e| [e.lo, e.hi]).collect();
    let reserved_colours: BTreeSet<Colour> = colours.iter().copied().collect();
    let trees = embed_chains(&g, &per_tree, &reserved, &reserved_vertices, &reserved_colours, seed)?;
    Ok(AbsorberDemo {
        g,
        trees,
        design: AbsorberDesign::Edge { config: *cfg, colours, rmbgs, reservoir, buffer },
        expected_form: canonical_form(&absorber_chain_shape(k, l)?),
    })
}

/// Colour absorber demo: one tree with `3s` rainbow matchings; property (P′)
/// for every `C* ⊆ C'_1` of size `s`.
pub fn build_colour_absorber_demo(cfg: &ColourAbsorberConfig, seed: u64) -> Result<AbsorberDemo> {
    let (s, res, l) = (cfg.s, cfg.reservoir, cfg.matching_size);
    if s == 0 || s > MAX_COLOUR_S {
        return Err(invalid(format!("toy scale allows s in 1..={MAX_COLOUR_S}, got {s}")));
    }
    if res < s {
        return Err(invalid(format!("the reservoir needs at least s = {s} colours, got {res}")));
    }
    if l == 0 || l > MAX_MATCHING_SIZE {
        return Err(invalid(format!("toy scale allows matchings of size 1..={MAX_MATCHING_SIZE}, got {l}")));
    }
    let x = 3 * s;
    let rmbg = rmbg_with_x_degree(x, res, 2 * s, l, derive_seed(seed, 1000))?;
    let colour_need = 4 * x * l + res + 2 * s;
    let n = even_at_least((2 * colour_need + 1).max(2 * (2 * x * l + x + 1 + 2 * x * l)));
    let g = shuffled_instance(n, seed)?;
    let mut rng = seeded(derive_seed(seed, 2));
    let palette: Vec<Colour> = index::sample(&mut rng, g.colour_count(), res + 2 * s).into_vec();
    let reservoir = palette[..res].to_vec();
    let buffer = palette[res..].to_vec();
    let colour_of_right = |r: usize| if r < res { reservoir[r] } else { buffer[r - res] };
    let wanted: Vec<Colour> = (0..x).flat_map(|j| rmbg.neighbours(j).iter().map(|&r| colour_of_right(r))).collect();
    let picked = disjoint_edges(&g, &wanted, derive_seed(seed, 1))?;
    let matchings: Vec<Vec<Edge>> = (0..x).map(|j| picked[j * l..(j + 1) * l].to_vec()).collect();
    let reserved: EdgeSet = picked.iter().copied().collect();
    let reserved_vertices: BTreeSet<Vertex> = picked.iter().flat_map(|e| [e.lo, e.hi]).collect();
    let reserved_colours: BTreeSet<Colour> = palette.iter().copied().collect();
    let trees = embed_chains(&g, &[matchings], &reserved, &reserved_vertices, &reserved_colours, seed)?;
    Ok(AbsorberDemo {
        g,
        trees,
        design: AbsorberDesign::Colour { config: *cfg, rmbg, reservoir, buffer },
        expected_form: canonical_form(&absorber_chain_shape(x, l)?),
    })
}

fn derive_seed(seed: u64, index: u64) -> u64 {
    stream(seed, index).next_u64()
}

/// Canonical form of `forest + extra` if it is a rainbow tree on the
/// forest's vertex set, else a reason.
fn completion_form(g: &EdgeColouredKn, forest: &[Edge], extra: &[Edge]) -> std::result::Result<String, String> {
    let all: Vec<Edge> = forest.iter().chain(extra).copied().collect();
    if !is_rainbow_slice(g, &all) {
        return Err("completion is not rainbow".into());
    }
    let vs: BTreeSet<Vertex> = forest.iter().flat_map(|e| [e.lo, e.hi]).collect();
    if extra.iter().any(|e| !vs.contains(&e.lo) || !vs.contains(&e.hi)) {
        return Err("an absorbed edge leaves V(F̃)".into());
    }
    let local: BTreeMap<Vertex, usize> = vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let edges: Vec<(usize, usize)> = all.iter().map(|e| (local[&e.lo], local[&e.hi])).collect();
    TreeShape::new(vs.len(), &edges).map(|t| canonical_form(&t)).map_err(|e| format!("completion is not a tree: {e}"))
}

impl AbsorberDemo {
    /// Structural invariants: matchings edge-disjoint from their forest,
    /// monochromatic (edge demo) or rainbow (colour demo).
    pub fn check_structure(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, t) in self.trees.iter().enumerate() {
            let forest: BTreeSet<Edge> = t.forest.iter().copied().collect();
            for (j, m) in t.matchings.iter().enumerate() {
                if m.iter().any(|e| forest.contains(e)) {
                    out.push(format!("tree {i}: matching {j} meets the forest"));
                }
                let cols: BTreeSet<Colour> = m.iter().map(|&e| self.g.colour(e)).collect();
                let ok = match self.design {
                    AbsorberDesign::Edge { .. } => cols.len() == 1,
                    AbsorberDesign::Colour { .. } => cols.len() == m.len(),
                };
                if !ok {
                    out.push(format!("tree {i}: matching {j} has colours {cols:?}"));
                }
                let vs: BTreeSet<Vertex> = m.iter().flat_map(|e| [e.lo, e.hi]).collect();
                if vs.len() != 2 * m.len() {
                    out.push(format!("tree {i}: matching {j} is not a matching"));
                }
            }
        }
        out
    }

    /// Property (P) or (P′) by exhaustive enumeration of one edge from
    /// every matching of every tree.
    pub fn audit_completions(&self) -> AbsorberAudit {
        let mut audit = AbsorberAudit { failures: self.check_structure(), ..Default::default() };
        let mut forms = BTreeSet::new();
        let mut colour_sets = BTreeSet::new();
        for (i, t) in self.trees.iter().enumerate() {
            for choice in t.matchings.iter().map(|m| m.iter().copied()).multi_cartesian_product() {
                audit.completions += 1;
                match completion_form(&self.g, &t.forest, &choice) {
                    Ok(f) => {
                        forms.insert(f);
                        if let AbsorberDesign::Edge { .. } = self.design {
                            let cs: BTreeSet<Colour> =
                                t.forest.iter().chain(&choice).map(|&e| self.g.colour(e)).collect();
                            colour_sets.insert((i, cs));
                        }
                    }
                    Err(e) if matches!(self.design, AbsorberDesign::Edge { .. }) => {
                        audit.failures.push(format!("tree {i}: {e}"));
                    }
                    // in the colour demo a choice repeating a colour is not
                    // rainbow; only the shape is checked
                    Err(_) => {
                        let vs: BTreeSet<Vertex> = t.forest.iter().flat_map(|e| [e.lo, e.hi]).collect();
                        let local: BTreeMap<Vertex, usize> = vs.iter().enumerate().map(|(k, &v)| (v, k)).collect();
                        let edges: Vec<(usize, usize)> = t
                            .forest
                            .iter()
                            .chain(&choice)
                            .map(|e| (local[&e.lo], local[&e.hi]))
                            .collect();
                        match TreeShape::new(vs.len(), &edges) {
                            Ok(sh) => {
                                forms.insert(canonical_form(&sh));
                            }
                            Err(e) => audit.failures.push(format!("tree {i}: {e}")),
                        }
                    }
                }
            }
        }
        // the colour set of F^+_i is independent of the choices
        let per_tree: BTreeSet<usize> = colour_sets.iter().map(|(i, _)| *i).collect();
        if colour_sets.len() != per_tree.len() {
            audit.failures.push("a completion colour set depends on the chosen edges".into());
        }
        for f in &forms {
            if f != &self.expected_form {
                audit.failures.push("a completion differs from the expected shape".into());
                break;
            }
        }
        audit.distinct_forms = forms.len();
        audit
    }

    /// Property (Q) for the edge demo, or (P′) for the colour demo, over
    /// every admissible reservoir subset.
    pub fn audit_absorption(&self) -> AbsorberAudit {
        let mut audit = AbsorberAudit { failures: self.check_structure(), ..Default::default() };
        let mut forms = BTreeSet::new();
        match &self.design {
            AbsorberDesign::Edge { config, rmbgs, reservoir, buffer, .. } => {
                let m = config.m;
                let per_colour: Vec<Vec<Vec<usize>>> =
                    rmbgs.iter().map(|_| (0..2 * m).combinations(m).collect()).collect();
                for choice in per_colour.iter().map(|v| v.iter()).multi_cartesian_product() {
                    audit.subsets += 1;
                    let mut labelled: Vec<Vec<Option<Edge>>> = vec![vec![None; rmbgs.len()]; self.trees.len()];
                    let mut expected: BTreeSet<Edge> = BTreeSet::new();
                    let mut assigned: Vec<Edge> = Vec::new();
                    for (j, y_prime) in choice.iter().enumerate() {
                        expected.extend(y_prime.iter().map(|&y| reservoir[j][y]));
                        expected.extend(buffer[j].iter().copied());
                        match robust_match(&rmbgs[j], y_prime) {
                            Ok(pairs) => {
                                for (x, r) in pairs {
                                    let e = if r < 2 * m { reservoir[j][r] } else { buffer[j][r - 2 * m] };
                                    if !self.trees[x].matchings[j].contains(&e) {
                                        audit.failures.push(format!("edge {e:?} is not in M_({x},{j})"));
                                    }
                                    if labelled[x][j].replace(e).is_some() {
                                        audit.failures.push(format!("absorber ({x},{j}) labelled twice"));
                                    }
                                    assigned.push(e);
                                }
                            }
                            Err(e) => audit.failures.push(format!("colour slot {j}: {e}")),
                        }
                    }
                    // bijection between absorbers and E* ∪ E(G_2)
                    let distinct: BTreeSet<Edge> = assigned.iter().copied().collect();
                    if distinct.len() != assigned.len() || distinct != expected {
                        audit.failures.push(format!("labelling is not a bijection onto E* ∪ E(G_2) for {choice:?}"));
                    }
                    for (x, row) in labelled.iter().enumerate() {
                        if row.iter().any(Option::is_none) {
                            audit.failures.push(format!("tree {x} misses an absorber edge"));
                            continue;
                        }
                        let j_i: Vec<Edge> = row.iter().map(|e| e.unwrap()).collect();
                        match completion_form(&self.g, &self.trees[x].forest, &j_i) {
                            Ok(f) => {
                                forms.insert(f);
                            }
                            Err(e) => audit.failures.push(format!("tree {x}: {e}")),
                        }
                    }
                }
            }
            AbsorberDesign::Colour { config, rmbg, reservoir, buffer } => {
                let tree = &self.trees[0];
                let colour_of_right = |r: usize| if r < reservoir.len() { reservoir[r] } else { buffer[r - reservoir.len()] };
                for c_star in (0..reservoir.len()).combinations(config.s) {
                    audit.subsets += 1;
                    let pairs = match robust_match(rmbg, &c_star) {
                        Ok(p) => p,
                        Err(e) => {
                            audit.failures.push(format!("C* = {c_star:?}: {e}"));
                            continue;
                        }
                    };
                    let mut j_i = Vec::with_capacity(pairs.len());
                    for (j, r) in &pairs {
                        let c = colour_of_right(*r);
                        let hits: Vec<Edge> =
                            tree.matchings[*j].iter().copied().filter(|&e| self.g.colour(e) == c).collect();
                        if hits.len() != 1 {
                            audit.failures.push(format!("matching {j} has {} edges of colour {c}", hits.len()));
                        }
                        j_i.extend(hits.first());
                    }
                    if pairs.len() != tree.matchings.len() {
                        audit.failures.push("not exactly one edge per matching".into());
                    }
                    let got: BTreeSet<Colour> = j_i.iter().map(|&e| self.g.colour(e)).collect();
                    let want: BTreeSet<Colour> =
                        c_star.iter().map(|&y| reservoir[y]).chain(buffer.iter().copied()).collect();
                    if got != want || got.len() != j_i.len() {
                        audit.failures.push(format!("J is not (C* ∪ C'_2)-rainbow for C* = {c_star:?}"));
                    }
                    match completion_form(&self.g, &tree.forest, &j_i) {
                        Ok(f) => {
                            forms.insert(f);
                        }
                        Err(e) => audit.failures.push(format!("C* = {c_star:?}: {e}")),
                    }
                }
            }
        }
        if forms.iter().any(|f| f != &self.expected_form) {
            audit.failures.push("an absorbed tree differs from the expected shape".into());
        }
        audit.distinct_forms = forms.len();
        audit
    }

    pub fn summary_json(&self) -> serde_json::Value {
        let (kind, extra) = match &self.design {
            AbsorberDesign::Edge { config, colours, rmbgs, reservoir, buffer } => (
                "edge",
                serde_json::json!({
                    "config": config,
                    "colours": colours,
                    "rmbgs": rmbgs.iter().map(Rmbg::to_json).collect::<Vec<RmbgJson>>(),
                    "reservoir": reservoir,
                    "buffer": buffer,
                }),
            ),
            AbsorberDesign::Colour { config, rmbg, reservoir, buffer } => (
                "colour",
                serde_json::json!({
                    "config": config,
                    "rmbg": rmbg.to_json(),
                    "reservoir": reservoir,
                    "buffer": buffer,
                }),
            ),
        };
        serde_json::json!({
            "kind": kind,
            "n": self.g.n(),
            "trees": self.trees,
            "design": extra,
            "expected_form": self.expected_form,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_shape_counts() {
        let t = absorber_chain_shape(3, 4).unwrap();
        assert_eq!(t.vertex_count(), 4 + 3 * 4 * 4);
    }

    #[test]
    fn single_matching_of_two() {
        let d = build_edge_absorber_demo(&EdgeAbsorberConfig { matchings: 1, matching_size: 2, m: 1 }, 0).unwrap();
        let a = d.audit_completions();
        assert!(a.passed(), "{:?}", a.failures);
        assert_eq!(a.completions, 2 * 3);
    }

    #[test]
    fn bad_scale_rejected() {
        assert!(build_edge_absorber_demo(&EdgeAbsorberConfig { matchings: 7, matching_size: 4, m: 1 }, 0).is_err());
        assert!(build_edge_absorber_demo(&EdgeAbsorberConfig { matchings: 1, matching_size: 1, m: 1 }, 0).is_err());
        assert!(build_colour_absorber_demo(&ColourAbsorberConfig::standard(4, 4), 0).is_err());
    }

    #[test]
    fn forced_colour_choice() {
        let d = build_colour_absorber_demo(&ColourAbsorberConfig { s: 1, reservoir: 1, matching_size: 2 }, 0).unwrap();
        let a = d.audit_absorption();
        assert!(a.passed(), "{:?}", a.failures);
        assert_eq!(a.subsets, 1);
    }
}
