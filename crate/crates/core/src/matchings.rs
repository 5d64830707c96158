//! Coloured bipartite graphs: quasirandomness, rainbow perfect matchings by
//! local search, and edge-disjoint rainbow perfect matchings for a sequence
//! of overlapping tasks.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::colouring::{Colour, Edge, EdgeColouredKn, Vertex};
use crate::error::{invalid, Error, Result};
use crate::rmbg::bipartite::hopcroft_karp;
use crate::rng::{seeded, stream};

/// Balanced bipartite graph with coloured edges. Local ids are `0..n` on
/// both sides; `a_labels` / `b_labels` name the host vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColouredBipartite {
    n: usize,
    a_labels: Vec<Vertex>,
    b_labels: Vec<Vertex>,
    edges: Vec<(usize, usize, Colour)>,
    colour: Vec<Option<Colour>>,
}

impl ColouredBipartite {
    pub fn new(a_labels: Vec<Vertex>, b_labels: Vec<Vertex>, edges: Vec<(usize, usize, Colour)>) -> Result<Self> {
        let n = a_labels.len();
        if b_labels.len() != n {
            return Err(invalid(format!("parts have sizes {n} and {}", b_labels.len())));
        }
        let labels: BTreeSet<Vertex> = a_labels.iter().chain(&b_labels).copied().collect();
        if labels.len() != 2 * n {
            return Err(invalid("part labels must be distinct"));
        }
        let mut colour = vec![None; n * n];
        for &(a, b, c) in &edges {
            if a >= n || b >= n {
                return Err(invalid(format!("edge ({a}, {b}) out of range")));
            }
            if colour[a * n + b].replace(c).is_some() {
                return Err(invalid(format!("parallel edges at ({a}, {b})")));
            }
        }
        Ok(ColouredBipartite { n, a_labels, b_labels, edges, colour })
    }

    /// Unlabelled instance with parts `0..n` and `n..2n`.
    pub fn unlabelled(n: usize, edges: Vec<(usize, usize, Colour)>) -> Result<Self> {
        ColouredBipartite::new((0..n).collect(), (n..2 * n).collect(), edges)
    }

    /// The sub-bipartite graph of a 1-factorized `K_n` between `a` and `b`
    /// keeping the host edges accepted by `keep`.
    pub fn from_host(
        g: &EdgeColouredKn,
        a: Vec<Vertex>,
        b: Vec<Vertex>,
        mut keep: impl FnMut(Edge) -> bool,
    ) -> Result<Self> {
        let mut edges = Vec::new();
        for (i, &u) in a.iter().enumerate() {
            for (j, &v) in b.iter().enumerate() {
                if u != v && keep(Edge::new(u, v)) {
                    edges.push((i, j, g.colour_of(u, v)));
                }
            }
        }
        ColouredBipartite::new(a, b, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn edges(&self) -> &[(usize, usize, Colour)] {
        &self.edges
    }
    pub fn a_labels(&self) -> &[Vertex] {
        &self.a_labels
    }
    pub fn b_labels(&self) -> &[Vertex] {
        &self.b_labels
    }
    pub fn colour(&self, a: usize, b: usize) -> Option<Colour> {
        self.colour[a * self.n + b]
    }
    pub fn host_edge(&self, a: usize, b: usize) -> Edge {
        Edge::new(self.a_labels[a], self.b_labels[b])
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b, _) in &self.edges {
            adj[a].push(b);
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        adj
    }

    /// Largest number of edges sharing a colour.
    pub fn max_colour_multiplicity(&self) -> usize {
        let mut count: BTreeMap<Colour, usize> = BTreeMap::new();
        for &(_, _, c) in &self.edges {
            *count.entry(c).or_default() += 1;
        }
        count.values().copied().max().unwrap_or(0)
    }

    /// The same graph without the edges rejected by `keep`.
    pub fn filtered(&self, mut keep: impl FnMut(usize, usize, Colour) -> bool) -> Self {
        let edges = self.edges.iter().copied().filter(|&(a, b, c)| keep(a, b, c)).collect();
        ColouredBipartite::new(self.a_labels.clone(), self.b_labels.clone(), edges).expect("subgraph stays valid")
    }
}

/// Random bipartite graph with edge density `d` and colours drawn
/// uniformly from `0..colours`, never letting a colour exceed `cap` edges.
pub fn random_coloured_bipartite(n: usize, d: f64, colours: usize, cap: usize, seed: u64) -> Result<ColouredBipartite> {
    if !(0.0..=1.0).contains(&d) || colours == 0 || cap == 0 {
        return Err(invalid("need 0 <= d <= 1 and positive colour count and cap"));
    }
    let mut rng = seeded(seed);
    let mut used = vec![0usize; colours];
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if rng.gen::<f64>() >= d {
                continue;
            }
            let mut c = rng.gen_range(0..colours);
            let mut tries = 0;
            while used[c] >= cap {
                c = rng.gen_range(0..colours);
                tries += 1;
                if tries > 64 * colours {
                    return Err(invalid("colour capacity too small for the edge count"));
                }
            }
            used[c] += 1;
            edges.push((a, b, c));
        }
    }
    ColouredBipartite::unlabelled(n, edges)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuasirandomWitness {
    pub side: Side,
    /// One vertex for a degree witness, two for a codegree witness.
    pub vertices: Vec<usize>,
    pub observed: usize,
    pub expected: f64,
}

impl QuasirandomWitness {
    /// `|observed / expected - 1|` (infinite when a zero expectation is missed).
    pub fn deviation(&self) -> f64 {
        relative_deviation(self.observed, self.expected)
    }
}

fn relative_deviation(observed: usize, expected: f64) -> f64 {
    if expected == 0.0 {
        if observed == 0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (observed as f64 / expected - 1.0).abs()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuasirandomCheck {
    pub quasirandom: bool,
    pub worst_degree: Option<QuasirandomWitness>,
    pub worst_codegree: Option<QuasirandomWitness>,
}

impl QuasirandomCheck {
    /// Largest relative deviation over all degree and codegree conditions.
    pub fn worst_ratio(&self) -> f64 {
        [&self.worst_degree, &self.worst_codegree]
            .iter()
            .filter_map(|w| w.as_ref().map(|w| w.deviation()))
            .fold(0.0, f64::max)
    }
}

fn bitsets(n: usize, rows: &[Vec<usize>]) -> Vec<Vec<u64>> {
    let words = n.div_ceil(64).max(1);
    rows.iter()
        .map(|r| {
            let mut bits = vec![0u64; words];
            for &y in r {
                bits[y / 64] |= 1 << (y % 64);
            }
            bits
        })
        .collect()
}

/// Checks the `(ε, d)`-quasirandom degree and codegree conditions on both
/// sides, reporting the worst offender of each kind.
pub fn is_quasirandom(g: &ColouredBipartite, eps: f64, d: f64) -> QuasirandomCheck {
    let n = g.n;
    let adj_a = g.adjacency();
    let mut adj_b = vec![Vec::new(); n];
    for (a, row) in adj_a.iter().enumerate() {
        for &b in row {
            adj_b[b].push(a);
        }
    }
    let mut worst_degree: Option<QuasirandomWitness> = None;
    let mut worst_codegree: Option<QuasirandomWitness> = None;
    let keep = |slot: &mut Option<QuasirandomWitness>, w: QuasirandomWitness| {
        if slot.as_ref().map_or(true, |s| w.deviation() > s.deviation()) {
            *slot = Some(w);
        }
    };
    let exp_deg = d * n as f64;
    let exp_co = d * d * n as f64;
    for (side, rows) in [(Side::A, &adj_a), (Side::B, &adj_b)] {
        for (v, row) in rows.iter().enumerate() {
            keep(&mut worst_degree, QuasirandomWitness { side, vertices: vec![v], observed: row.len(), expected: exp_deg });
        }
        let bits = bitsets(n, rows);
        for v in 0..n {
            for w in v + 1..n {
                let co: u32 = bits[v].iter().zip(&bits[w]).map(|(x, y)| (x & y).count_ones()).sum();
                keep(
                    &mut worst_codegree,
                    QuasirandomWitness { side, vertices: vec![v, w], observed: co as usize, expected: exp_co },
                );
            }
        }
    }
    let within = |w: &Option<QuasirandomWitness>| {
        w.as_ref().map_or(true, |w| (w.observed as f64 - w.expected).abs() <= eps * w.expected + 1e-9)
    };
    QuasirandomCheck {
        quasirandom: within(&worst_degree) && within(&worst_codegree),
        worst_degree,
        worst_codegree,
    }
}

/// A perfect matching as `b = matching[a]`.
pub type Perm = Vec<usize>;

pub fn is_rainbow_perfect_matching(g: &ColouredBipartite, m: &[usize]) -> bool {
    if m.len() != g.n {
        return false;
    }
    let bs: BTreeSet<usize> = m.iter().copied().collect();
    if bs.len() != g.n {
        return false;
    }
    let mut colours = BTreeSet::new();
    m.iter().enumerate().all(|(a, &b)| g.colour(a, b).is_some_and(|c| colours.insert(c)))
}

/// Exhaustive search for a rainbow perfect matching.
pub fn exhaustive_rainbow_pm(g: &ColouredBipartite) -> Option<Perm> {
    fn go(g: &ColouredBipartite, adj: &[Vec<usize>], a: usize, m: &mut Vec<usize>, used_b: &mut [bool], used_c: &mut BTreeSet<Colour>) -> bool {
        if a == g.n {
            return true;
        }
        for &b in &adj[a] {
            let c = g.colour(a, b).expect("edge");
            if used_b[b] || used_c.contains(&c) {
                continue;
            }
            used_b[b] = true;
            used_c.insert(c);
            m.push(b);
            if go(g, adj, a + 1, m, used_b, used_c) {
                return true;
            }
            m.pop();
            used_c.remove(&c);
            used_b[b] = false;
        }
        false
    }
    let adj = g.adjacency();
    let mut m = Vec::with_capacity(g.n);
    let mut used_b = vec![false; g.n];
    go(g, &adj, 0, &mut m, &mut used_b, &mut BTreeSet::new()).then_some(m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalSearchOutcome {
    pub matching: Option<Perm>,
    /// Switch attempts evaluated.
    pub switches: usize,
    pub restarts: usize,
    /// The graph has no perfect matching at all.
    pub no_perfect_matching: bool,
    /// Conflict count after each accepted switch, one list per run.
    pub trace: Vec<Vec<usize>>,
}

fn random_perfect_matching(adj: &[Vec<usize>], n: usize, rng: &mut impl Rng) -> Option<Perm> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut shuffled = vec![Vec::new(); n];
    for (new, &old) in order.iter().enumerate() {
        let mut row = adj[old].clone();
        row.shuffle(rng);
        shuffled[new] = row;
    }
    let m = hopcroft_karp(n, &shuffled);
    if m.size < n {
        return None;
    }
    let mut perm = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = m.left[new].expect("perfect");
    }
    Some(perm)
}

/// Conflict-minimizing local search for a rainbow perfect matching: start
/// from a random perfect matching and apply alternating 4-cycle switches
/// at conflicted edges that do not increase the number of conflicts
/// (edges beyond the first of each colour). Stalled runs restart.
pub fn local_search_rainbow_pm(g: &ColouredBipartite, budget: usize, seed: u64) -> LocalSearchOutcome {
    let n = g.n;
    let adj = g.adjacency();
    let mut out = LocalSearchOutcome { matching: None, switches: 0, restarts: 0, no_perfect_matching: false, trace: Vec::new() };
    if n == 0 {
        out.matching = Some(Vec::new());
        return out;
    }
    let stall_limit = 50 * n + 200;
    let mut run = 0u64;
    while out.switches < budget || out.trace.is_empty() {
        let mut rng = stream(seed, run);
        run += 1;
        let Some(mut m) = random_perfect_matching(&adj, n, &mut rng) else {
            out.no_perfect_matching = true;
            return out;
        };
        if !out.trace.is_empty() {
            out.restarts += 1;
        }
        let mut count: BTreeMap<Colour, usize> = BTreeMap::new();
        for (a, &b) in m.iter().enumerate() {
            *count.entry(g.colour(a, b).unwrap()).or_default() += 1;
        }
        let conflicts = |count: &BTreeMap<Colour, usize>| count.values().map(|&k| k.saturating_sub(1)).sum::<usize>();
        let mut current = conflicts(&count);
        let mut trace = vec![current];
        let mut since_improvement = 0;
        while current > 0 && out.switches < budget && since_improvement < stall_limit {
            let conflicted: Vec<usize> = (0..n).filter(|&a| count[&g.colour(a, m[a]).unwrap()] > 1).collect();
            let a1 = *conflicted.choose(&mut rng).unwrap();
            let a2 = rng.gen_range(0..n);
            if a2 == a1 {
                continue;
            }
            out.switches += 1;
            since_improvement += 1;
            let (b1, b2) = (m[a1], m[a2]);
            let (Some(c13), Some(c24)) = (g.colour(a1, b2), g.colour(a2, b1)) else {
                continue;
            };
            let c1 = g.colour(a1, b1).unwrap();
            let c2 = g.colour(a2, b2).unwrap();
            let mut trial = count.clone();
            for c in [c1, c2] {
                *trial.get_mut(&c).unwrap() -= 1;
            }
            for c in [c13, c24] {
                *trial.entry(c).or_default() += 1;
            }
            trial.retain(|_, k| *k > 0);
            let next = conflicts(&trial);
            if next <= current {
                if next < current {
                    since_improvement = 0;
                }
                m[a1] = b2;
                m[a2] = b1;
                count = trial;
                current = next;
                trace.push(current);
            }
        }
        out.trace.push(trace);
        if current == 0 {
            debug_assert!(is_rainbow_perfect_matching(g, &m));
            out.matching = Some(m);
            return out;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RainbowPm {
    pub matching: Perm,
    pub switches: usize,
    pub restarts: usize,
    pub exhaustive: bool,
}

/// Largest instance size for which an exhaustive search backs up the local search.
pub const EXHAUSTIVE_PM_LIMIT: usize = 8;

/// Rainbow perfect matching of `g`. Colours may appear at most
/// `colour_cap` times; `budget` bounds the local-search switch attempts.
pub fn rainbow_perfect_matching(g: &ColouredBipartite, colour_cap: usize, budget: usize, seed: u64) -> Result<RainbowPm> {
    let worst = g.max_colour_multiplicity();
    if worst > colour_cap {
        return Err(invalid(format!("a colour appears {worst} times, above the cap {colour_cap}")));
    }
    let ls = local_search_rainbow_pm(g, budget, seed);
    if let Some(matching) = ls.matching {
        return Ok(RainbowPm { matching, switches: ls.switches, restarts: ls.restarts, exhaustive: false });
    }
    if ls.no_perfect_matching {
        return Err(Error::Infeasible("the graph has no perfect matching".into()));
    }
    if g.n <= EXHAUSTIVE_PM_LIMIT {
        return match exhaustive_rainbow_pm(g) {
            Some(matching) => Ok(RainbowPm { matching, switches: ls.switches, restarts: ls.restarts, exhaustive: true }),
            None => Err(Error::Infeasible("exhaustive search: no rainbow perfect matching exists".into())),
        };
    }
    Err(Error::NotFound(format!(
        "no rainbow perfect matching after {} switches and {} restarts",
        ls.switches, ls.restarts
    )))
}

/// Outcome for one task of [`greedy_disjoint_rainbow_pms`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum TaskOutcome {
    /// `host_edges` is the chosen matching, picked among `candidates`.
    Matched { matching: Perm, host_edges: Vec<Edge>, candidates: usize },
    /// The used-edge graph inside `U_s` had maximum degree `degree` above the limit.
    Skipped { degree: usize, limit: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartialPms {
    pub completed: Vec<TaskOutcome>,
    pub total: usize,
    pub failed_task: usize,
    pub reason: String,
}

impl fmt::Display for PartialPms {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "task {} failed after {} of {}: {}", self.failed_task, self.completed.len(), self.total, self.reason)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum PreconditionViolation {
    SmallSet { task: usize, size: usize, min: f64 },
    LargeOverlap { tasks: (usize, usize), size: usize, max: f64 },
    Membership { vertex: Vertex, count: usize, max: f64 },
    ColourCount { task: usize, colour: Colour, count: usize, max: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoutineResult {
    pub outcomes: Vec<TaskOutcome>,
    pub preconditions: Vec<PreconditionViolation>,
    /// `⌈105 μ^{3/2} n⌉` before capping.
    pub r: usize,
    pub r_used: usize,
}

impl RoutineResult {
    pub fn skips(&self) -> usize {
        self.outcomes.iter().filter(|o| matches!(o, TaskOutcome::Skipped { .. })).count()
    }
}

/// Checks the size, overlap, membership and colour-count conditions on a
/// task family over a universe of `universe` vertices.
pub fn check_routine_preconditions(tasks: &[ColouredBipartite], universe: usize, mu: f64) -> Vec<PreconditionViolation> {
    let n = universe as f64;
    let t = tasks.len() as f64;
    let sets: Vec<BTreeSet<Vertex>> = tasks.iter().map(|g| g.a_labels.iter().chain(&g.b_labels).copied().collect()).collect();
    let mut out = Vec::new();
    for (i, u) in sets.iter().enumerate() {
        if (u.len() as f64) < mu * n {
            out.push(PreconditionViolation::SmallSet { task: i, size: u.len(), min: mu * n });
        }
        for (j, w) in sets.iter().enumerate().skip(i + 1) {
            let k = u.intersection(w).count();
            if k as f64 > 5.0 * mu * mu * n {
                out.push(PreconditionViolation::LargeOverlap { tasks: (i, j), size: k, max: 5.0 * mu * mu * n });
            }
        }
    }
    let mut membership: BTreeMap<Vertex, usize> = BTreeMap::new();
    for u in &sets {
        for &v in u {
            *membership.entry(v).or_default() += 1;
        }
    }
    for (&v, &count) in &membership {
        if count as f64 > 3.0 * mu * t {
            out.push(PreconditionViolation::Membership { vertex: v, count, max: 3.0 * mu * t });
        }
    }
    for (i, g) in tasks.iter().enumerate() {
        let mut count: BTreeMap<Colour, usize> = BTreeMap::new();
        for &(_, _, c) in &g.edges {
            *count.entry(c).or_default() += 1;
        }
        for (&c, &k) in &count {
            if k as f64 > 2.0 * mu * mu * n {
                out.push(PreconditionViolation::ColourCount { task: i, colour: c, count: k, max: 2.0 * mu * mu * n });
            }
        }
    }
    out
}

/// Edge-disjoint rainbow perfect matchings, one per task, chosen in order.
///
/// For task `s`, edges used by earlier matchings are deleted. If the
/// used-edge graph restricted to `U_s` has maximum degree above
/// `μ^{3/2} n`, the task is skipped. Otherwise up to `min(r, budget_r)`
/// edge-disjoint rainbow perfect matchings of the remainder are generated
/// and one of them is picked uniformly at random.
pub fn greedy_disjoint_rainbow_pms(
    tasks: &[ColouredBipartite],
    universe: usize,
    mu: f64,
    budget_r: usize,
    switch_budget: usize,
    seed: u64,
) -> Result<RoutineResult> {
    if budget_r == 0 {
        return Err(invalid("budget_r must be positive"));
    }
    let n = universe as f64;
    let r = (105.0 * mu.powf(1.5) * n).ceil().max(1.0) as usize;
    let r_used = r.min(budget_r);
    let limit = mu.powf(1.5) * n;
    let preconditions = check_routine_preconditions(tasks, universe, mu);
    let mut used: HashSet<Edge> = HashSet::new();
    let mut used_deg: BTreeMap<Vertex, BTreeSet<Vertex>> = BTreeMap::new();
    let mut outcomes = Vec::with_capacity(tasks.len());
    let mut rng = seeded(seed);
    for (s, g) in tasks.iter().enumerate() {
        let u_s: BTreeSet<Vertex> = g.a_labels.iter().chain(&g.b_labels).copied().collect();
        let degree = u_s
            .iter()
            .map(|v| used_deg.get(v).map_or(0, |ns| ns.iter().filter(|w| u_s.contains(w)).count()))
            .max()
            .unwrap_or(0);
        if degree as f64 > limit {
            outcomes.push(TaskOutcome::Skipped { degree, limit });
            continue;
        }
        let mut residual = g.filtered(|a, b, _| !used.contains(&g.host_edge(a, b)));
        let cap = residual.max_colour_multiplicity();
        let mut candidates: Vec<Perm> = Vec::new();
        for j in 0..r_used {
            let sub_seed = seed ^ ((s as u64) << 32 | j as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
            match rainbow_perfect_matching(&residual, cap, switch_budget, sub_seed) {
                Ok(pm) => {
                    let chosen: BTreeSet<(usize, usize)> = pm.matching.iter().enumerate().map(|(a, &b)| (a, b)).collect();
                    residual = residual.filtered(|a, b, _| !chosen.contains(&(a, b)));
                    candidates.push(pm.matching);
                }
                Err(e) => {
                    log::debug!("task {s}: candidate {j} not found: {e}");
                    break;
                }
            }
        }
        if candidates.is_empty() {
            return Err(Error::Partial(Box::new(PartialPms {
                completed: outcomes,
                total: tasks.len(),
                failed_task: s,
                reason: "no rainbow perfect matching of the residual graph".into(),
            })));
        }
        let k = candidates.len();
        let matching = candidates.swap_remove(rng.gen_range(0..k));
        let host_edges: Vec<Edge> = matching.iter().enumerate().map(|(a, &b)| g.host_edge(a, b)).collect();
        for &e in &host_edges {
            used.insert(e);
            used_deg.entry(e.lo).or_default().insert(e.hi);
            used_deg.entry(e.hi).or_default().insert(e.lo);
        }
        outcomes.push(TaskOutcome::Matched { matching, host_edges, candidates: k });
    }
    Ok(RoutineResult { outcomes, preconditions, r, r_used })
}

/// Overlapping vertex subsets of `0..universe`: each vertex joins each set
/// independently with probability `p`, then memberships, pairwise overlaps
/// and parities are trimmed at random until every vertex lies in at most
/// `max_membership` sets, any two sets share at most `max_overlap`
/// vertices, and every set has even size.
pub fn overlapping_subsets(
    universe: usize,
    t: usize,
    p: f64,
    max_membership: usize,
    max_overlap: usize,
    seed: u64,
) -> Vec<BTreeSet<Vertex>> {
    let mut rng = seeded(seed);
    let mut sets: Vec<BTreeSet<Vertex>> = vec![BTreeSet::new(); t];
    for v in 0..universe {
        for set in &mut sets {
            if rng.gen::<f64>() < p {
                set.insert(v);
            }
        }
    }
    for v in 0..universe {
        let mut holders: Vec<usize> = (0..t).filter(|&i| sets[i].contains(&v)).collect();
        holders.shuffle(&mut rng);
        for &i in holders.iter().skip(max_membership) {
            sets[i].remove(&v);
        }
    }
    for i in 0..t {
        for j in i + 1..t {
            let mut common: Vec<Vertex> = sets[i].intersection(&sets[j]).copied().collect();
            common.shuffle(&mut rng);
            for &v in common.iter().skip(max_overlap) {
                let k = if rng.gen::<bool>() { i } else { j };
                sets[k].remove(&v);
            }
        }
    }
    for set in &mut sets {
        if set.len() % 2 == 1 {
            let v = *set.iter().nth(rng.gen_range(0..set.len())).unwrap();
            set.remove(&v);
        }
    }
    sets
}

/// Splits `u` into random halves and keeps each host edge between them
/// with probability `d`, dropping edges of colours that would exceed `cap`.
pub fn random_task(g: &EdgeColouredKn, u: &BTreeSet<Vertex>, d: f64, cap: usize, seed: u64) -> Result<ColouredBipartite> {
    let mut rng = seeded(seed);
    let mut vs: Vec<Vertex> = u.iter().copied().collect();
    vs.shuffle(&mut rng);
    let half = vs.len() / 2;
    let mut a = vs[..half].to_vec();
    let mut b = vs[half..2 * half].to_vec();
    a.sort_unstable();
    b.sort_unstable();
    let mut count: BTreeMap<Colour, usize> = BTreeMap::new();
    ColouredBipartite::from_host(g, a, b, |e| {
        if rng.gen::<f64>() >= d {
            return false;
        }
        let k = count.entry(g.colour(e)).or_default();
        if *k >= cap {
            return false;
        }
        *k += 1;
        true
    })
}
