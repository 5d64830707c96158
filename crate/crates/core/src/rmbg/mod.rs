//! Robustly matchable bipartite graphs.
//!
//! An `Rmbg` is a bipartite graph on `(X, Y ∪ Z)` such that for every
//! `Y' ⊆ Y` with `|Y'| = |X| - |Z|` the induced graph on `(X, Y' ∪ Z)` has
//! a perfect matching. Right-hand ids list `Y` first (`0..|Y|`), then `Z`.

pub mod bipartite;
pub mod flow;

use std::collections::BTreeSet;
use std::path::Path;

use itertools::Itertools;
use rand::seq::{index, SliceRandom};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::rng::{seeded, stream};

pub use bipartite::{bipartite_max_matching, BipartiteMatching, KonigCover};
pub use flow::{check_flow, max_flow, FlowNetwork, FlowResult};

/// Largest number of subsets `Y'` that exhaustive verification will visit.
pub const EXHAUSTIVE_LIMIT: u128 = 1_000_000;
/// Draws used when exhaustive verification is out of reach.
pub const DEFAULT_SAMPLES: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rmbg {
    x_size: usize,
    y_size: usize,
    z_size: usize,
    adj: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sampled { draws: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// Every admissible `Y'` was checked.
    Proven { subsets: u64 },
    /// `y_prime` admits no perfect matching; `hall_violator ⊆ X` has
    /// neighbourhood `neighbourhood` (right ids) of smaller size.
    Refuted {
        y_prime: Vec<usize>,
        hall_violator: Vec<usize>,
        neighbourhood: Vec<usize>,
    },
    /// `draws` random subsets passed; not a proof.
    SampledPass { draws: usize },
}

impl Verdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted { .. })
    }
}

/// JSON layout: `{"m": int, "adj": [[...], ...]}` for the standard
/// `(3m, 2m, 2m)` shape; other shapes carry `"parts": [x, y, z]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RmbgJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parts: Option<[usize; 3]>,
    pub adj: Vec<Vec<usize>>,
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

impl Rmbg {
    pub fn new(x_size: usize, y_size: usize, z_size: usize, mut adj: Vec<Vec<usize>>) -> Result<Self> {
        if x_size < z_size {
            return Err(invalid(format!("|X| = {x_size} is smaller than |Z| = {z_size}")));
        }
        if y_size < x_size - z_size {
            return Err(invalid(format!(
                "|Y| = {y_size} is smaller than |X| - |Z| = {}",
                x_size - z_size
            )));
        }
        if adj.len() != x_size {
            return Err(invalid(format!(
                "adjacency has {} rows, expected |X| = {x_size}",
                adj.len()
            )));
        }
        let right = y_size + z_size;
        for (x, ns) in adj.iter_mut().enumerate() {
            ns.sort_unstable();
            if ns.windows(2).any(|w| w[0] == w[1]) {
                return Err(invalid(format!("X-vertex {x} lists a neighbour twice")));
            }
            if let Some(y) = ns.iter().find(|&&y| y >= right) {
                return Err(invalid(format!("X-vertex {x} has neighbour {y} outside 0..{right}")));
            }
        }
        Ok(Rmbg { x_size, y_size, z_size, adj })
    }

    /// Complete bipartite graph between `X` and `Y ∪ Z`.
    pub fn complete(x_size: usize, y_size: usize, z_size: usize) -> Result<Self> {
        let row: Vec<usize> = (0..y_size + z_size).collect();
        Rmbg::new(x_size, y_size, z_size, vec![row; x_size])
    }

    pub fn x_size(&self) -> usize {
        self.x_size
    }
    pub fn y_size(&self) -> usize {
        self.y_size
    }
    pub fn z_size(&self) -> usize {
        self.z_size
    }
    pub fn right_size(&self) -> usize {
        self.y_size + self.z_size
    }
    /// `|X| - |Z|`, the size of admissible `Y'`.
    pub fn k(&self) -> usize {
        self.x_size - self.z_size
    }
    pub fn adj(&self) -> &[Vec<usize>] {
        &self.adj
    }
    pub fn neighbours(&self, x: usize) -> &[usize] {
        &self.adj[x]
    }
    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }
    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.adj[x].binary_search(&y).is_ok()
    }
    pub fn is_z(&self, right: usize) -> bool {
        right >= self.y_size
    }

    pub fn x_degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn right_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.right_size()];
        for ns in &self.adj {
            for &y in ns {
                d[y] += 1;
            }
        }
        d
    }

    pub fn max_degree(&self) -> usize {
        let dx = self.x_degrees().into_iter().max().unwrap_or(0);
        let dy = self.right_degrees().into_iter().max().unwrap_or(0);
        dx.max(dy)
    }

    /// Adds the edge `x`–`right`; returns false if it was present.
    pub fn add_edge(&mut self, x: usize, right: usize) -> bool {
        assert!(right < self.right_size());
        match self.adj[x].binary_search(&right) {
            Ok(_) => false,
            Err(pos) => {
                self.adj[x].insert(pos, right);
                true
            }
        }
    }

    /// `m` with `(|X|, |Y|, |Z|) = (3m, 2m, 2m)`, if the shape is standard.
    pub fn standard_m(&self) -> Option<usize> {
        let m = self.y_size / 2;
        (m > 0 && self.x_size == 3 * m && self.y_size == 2 * m && self.z_size == 2 * m).then_some(m)
    }

    pub fn to_json(&self) -> RmbgJson {
        match self.standard_m() {
            Some(m) => RmbgJson { m: Some(m), parts: None, adj: self.adj.clone() },
            None => RmbgJson {
                m: None,
                parts: Some([self.x_size, self.y_size, self.z_size]),
                adj: self.adj.clone(),
            },
        }
    }

    pub fn from_json(j: RmbgJson) -> Result<Self> {
        let [x, y, z] = match (j.parts, j.m) {
            (Some(p), _) => p,
            (None, Some(m)) => [3 * m, 2 * m, 2 * m],
            (None, None) => return Err(invalid("RMBG JSON needs \"m\" or \"parts\"")),
        };
        if let (Some(p), Some(m)) = (j.parts, j.m) {
            if p != [3 * m, 2 * m, 2 * m] {
                return Err(invalid("\"m\" and \"parts\" disagree"));
            }
        }
        Rmbg::new(x, y, z, j.adj)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Rmbg::from_json(serde_json::from_str(&text)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, serde_json::to_string(&self.to_json())? + "\n")?;
        Ok(())
    }

    /// Adjacency of `H[X, Y' ∪ Z]` with right ids renumbered: `Y'` in the
    /// given order, then `Z`. Returns the renumbering back to original ids.
    fn restricted(&self, y_prime: &[usize]) -> (Vec<Vec<usize>>, Vec<usize>) {
        let mut local = vec![usize::MAX; self.right_size()];
        let mut back = Vec::with_capacity(self.x_size);
        for &y in y_prime {
            local[y] = back.len();
            back.push(y);
        }
        for z in self.y_size..self.right_size() {
            local[z] = back.len();
            back.push(z);
        }
        let adj = self
            .adj
            .iter()
            .map(|ns| ns.iter().filter_map(|&y| (local[y] != usize::MAX).then_some(local[y])).collect())
            .collect();
        (adj, back)
    }

    /// Perfect matching of `H[X, Y' ∪ Z]`, or the Hall violator.
    fn match_restricted(&self, y_prime: &[usize]) -> std::result::Result<Vec<(usize, usize)>, (Vec<usize>, Vec<usize>)> {
        let (adj, back) = self.restricted(y_prime);
        let m = bipartite::hopcroft_karp(back.len(), &adj);
        if m.size == self.x_size {
            Ok(m.pairs().into_iter().map(|(x, r)| (x, back[r])).collect())
        } else {
            let (viol, nbrs) = m.alternating_reach(&adj);
            let mut nbrs: Vec<usize> = nbrs.into_iter().map(|r| back[r]).collect();
            nbrs.sort_unstable();
            Err((viol, nbrs))
        }
    }
}

/// Checks the robust matchability property of `h`.
pub fn is_robustly_matchable(h: &Rmbg, mode: Mode) -> Result<Verdict> {
    let k = h.k();
    match mode {
        Mode::Exhaustive => {
            let count = binomial(h.y_size, k);
            if count > EXHAUSTIVE_LIMIT {
                return Err(Error::Budget(format!(
                    "C({}, {k}) = {count} subsets exceeds the exhaustive limit {EXHAUSTIVE_LIMIT}",
                    h.y_size
                )));
            }
            for y_prime in (0..h.y_size).combinations(k) {
                if let Err((hall_violator, neighbourhood)) = h.match_restricted(&y_prime) {
                    return Ok(Verdict::Refuted { y_prime, hall_violator, neighbourhood });
                }
            }
            Ok(Verdict::Proven { subsets: count as u64 })
        }
        Mode::Sampled { draws, seed } => {
            let failure = (0..draws)
                .into_par_iter()
                .filter_map(|i| {
                    let mut rng = stream(seed, i as u64);
                    let mut y_prime = index::sample(&mut rng, h.y_size, k).into_vec();
                    y_prime.sort_unstable();
                    h.match_restricted(&y_prime).err().map(|e| (i, y_prime, e))
                })
                .min_by_key(|(i, _, _)| *i);
            Ok(match failure {
                Some((_, y_prime, (hall_violator, neighbourhood))) => {
                    Verdict::Refuted { y_prime, hall_violator, neighbourhood }
                }
                None => Verdict::SampledPass { draws },
            })
        }
    }
}

/// Exhaustive verification when affordable, otherwise sampled.
pub fn verify_auto(h: &Rmbg, seed: u64) -> Verdict {
    match is_robustly_matchable(h, Mode::Exhaustive) {
        Ok(v) => v,
        Err(_) => is_robustly_matchable(h, Mode::Sampled { draws: DEFAULT_SAMPLES, seed })
            .expect("sampled mode has no budget"),
    }
}

/// A perfect matching of `H[X, Y' ∪ Z]` as `(x, right id)` pairs sorted by `x`.
pub fn robust_match(h: &Rmbg, y_prime: &[usize]) -> Result<Vec<(usize, usize)>> {
    if y_prime.len() != h.k() {
        return Err(invalid(format!(
            "|Y'| = {} but |X| - |Z| = {}",
            y_prime.len(),
            h.k()
        )));
    }
    let distinct: BTreeSet<usize> = y_prime.iter().copied().collect();
    if distinct.len() != y_prime.len() || distinct.iter().any(|&y| y >= h.y_size) {
        return Err(invalid("Y' must be a set of distinct Y-vertices"));
    }
    h.match_restricted(y_prime)
        .map_err(|(hall_violator, neighbourhood)| Error::NoPerfectMatching { hall_violator, neighbourhood })
}

/// Randomized search for a verified `RMBG(3m, 2m, 2m)` with maximum degree
/// at most `max_degree`. `budget` bounds the number of candidates tried.
pub fn search_rmbg(m: usize, max_degree: usize, seed: u64, budget: usize) -> Result<Rmbg> {
    if m == 0 {
        return Err(invalid("m must be at least 1"));
    }
    search_rmbg_sized(3 * m, 2 * m, 2 * m, max_degree, seed, budget)
}

/// Like [`search_rmbg`] for arbitrary part sizes.
///
/// Candidates are near-regular: each `X`-vertex gets the same degree and
/// right-hand degrees are balanced greedily. Degrees are tried from low to
/// high, splitting the budget evenly across degree levels.
pub fn search_rmbg_sized(
    x_size: usize,
    y_size: usize,
    z_size: usize,
    max_degree: usize,
    seed: u64,
    budget: usize,
) -> Result<Rmbg> {
    Rmbg::new(x_size, y_size, z_size, vec![Vec::new(); x_size])?;
    if max_degree == 0 || budget == 0 {
        return Err(Error::SearchFailed(format!(
            "no candidates with max degree {max_degree} and budget {budget}"
        )));
    }
    let right = y_size + z_size;
    let top = max_degree.min(right);
    let mut rng = seeded(seed);
    let levels: Vec<usize> = (1..=top)
        .filter(|&d| x_size * d <= right * max_degree)
        .collect();
    let mut tried = 0;
    for (li, &d) in levels.iter().enumerate() {
        let remaining_levels = levels.len() - li;
        let share = ((budget - tried) / remaining_levels).max(1);
        for _ in 0..share {
            if tried >= budget {
                break;
            }
            tried += 1;
            let Some(adj) = near_regular_candidate(x_size, right, d, max_degree, &mut rng) else {
                continue;
            };
            let h = Rmbg::new(x_size, y_size, z_size, adj)?;
            let verdict = verify_auto(&h, rng.gen());
            if !verdict.is_refuted() {
                log::debug!("rmbg search: verified candidate with X-degree {d} after {tried} tries");
                return Ok(h);
            }
        }
    }
    Err(Error::SearchFailed(format!(
        "no verified RMBG({x_size},{y_size},{z_size}) with max degree {max_degree} in {tried} candidates"
    )))
}

fn near_regular_candidate(
    x_size: usize,
    right: usize,
    d: usize,
    cap: usize,
    rng: &mut impl Rng,
) -> Option<Vec<Vec<usize>>> {
    let mut load = vec![0usize; right];
    let mut order: Vec<usize> = (0..x_size).collect();
    order.shuffle(rng);
    let mut adj = vec![Vec::new(); x_size];
    for x in order {
        let mut cands: Vec<usize> = (0..right).filter(|&y| load[y] < cap).collect();
        if cands.len() < d {
            return None;
        }
        cands.shuffle(rng);
        cands.sort_by_key(|&y| load[y]);
        let mut chosen: Vec<usize> = cands[..d].to_vec();
        chosen.sort_unstable();
        for &y in &chosen {
            load[y] += 1;
        }
        adj[x] = chosen;
    }
    Some(adj)
}

/// Extends `h` to a `(4d, 3d)`-regular supergraph on the same parts using
/// one max-flow computation over the non-edges.
pub fn regularize(h: &Rmbg, d: usize, seed: u64) -> Result<Rmbg> {
    let m = h
        .standard_m()
        .ok_or_else(|| invalid("regularize needs parts of sizes (3m, 2m, 2m)"))?;
    if d == 0 {
        return Err(invalid("d must be positive"));
    }
    let (nx, nr) = (h.x_size, h.right_size());
    let (tx, ty) = (4 * d as i64, 3 * d as i64);
    let dx = h.x_degrees();
    let dr = h.right_degrees();
    if let Some(x) = (0..nx).find(|&x| dx[x] as i64 > tx) {
        return Err(Error::Infeasible(format!(
            "X-vertex {x} has degree {} > 4d = {tx}",
            dx[x]
        )));
    }
    if let Some(y) = (0..nr).find(|&y| dr[y] as i64 > ty) {
        return Err(Error::Infeasible(format!(
            "right vertex {y} has degree {} > 3d = {ty}",
            dr[y]
        )));
    }
    let (s, t) = (nx + nr, nx + nr + 1);
    let mut net = FlowNetwork::new(nx + nr + 2, s, t)?;
    for x in 0..nx {
        net.add_arc(s, x, tx - dx[x] as i64)?;
    }
    let mut candidate_arcs = Vec::new();
    for x in 0..nx {
        for y in 0..nr {
            if !h.has_edge(x, y) {
                let id = net.add_arc(x, nx + y, 1)?;
                candidate_arcs.push((id, x, y));
            }
        }
    }
    for y in 0..nr {
        net.add_arc(nx + y, t, ty - dr[y] as i64)?;
    }
    let need = (12 * d * m) as i64 - h.edge_count() as i64;
    let result = max_flow(&net);
    if result.value < need {
        return Err(Error::Infeasible(format!(
            "max flow {} is below 12dm - e(H) = {need}",
            result.value
        )));
    }
    let mut out = h.clone();
    for (id, x, y) in candidate_arcs {
        if result.flow[id] == 1 {
            out.add_edge(x, y);
        }
    }
    let ok_degrees = out.x_degrees().iter().all(|&v| v as i64 == tx)
        && out.right_degrees().iter().all(|&v| v as i64 == ty);
    if !ok_degrees || out.edge_count() != 12 * d * m {
        return Err(Error::Internal("regularized graph misses its degree targets".into()));
    }
    let verdict = verify_auto(&out, seed);
    if verdict.is_refuted() {
        return Err(Error::Internal(format!(
            "regularized supergraph lost robust matchability: {verdict:?}"
        )));
    }
    Ok(out)
}
