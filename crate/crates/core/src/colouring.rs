//! Edge-coloured complete graphs whose colour classes form a 1-factorization.
//!
//! Vertices are `0..n` and colours are `0..n-1`. Edges are stored as
//! normalized `(min, max)` pairs; the colouring itself is a flat row-major
//! upper-triangular array, which is also the on-disk JSON layout.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::rng::seeded;

pub type Vertex = usize;
pub type Colour = usize;

/// An unordered vertex pair, always stored with `lo < hi`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub lo: Vertex,
    pub hi: Vertex,
}

impl Edge {
    pub fn new(u: Vertex, v: Vertex) -> Self {
        assert_ne!(u, v, "loops are not edges");
        if u < v {
            Edge { lo: u, hi: v }
        } else {
            Edge { lo: v, hi: u }
        }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.lo == v || self.hi == v
    }

    pub fn other(&self, v: Vertex) -> Vertex {
        if self.lo == v {
            self.hi
        } else {
            debug_assert_eq!(self.hi, v);
            self.lo
        }
    }

    pub fn touches(&self, other: &Edge) -> bool {
        self.contains(other.lo) || self.contains(other.hi)
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.lo, self.hi)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.lo, self.hi)
    }
}

/// Number of unordered pairs over `n` vertices.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Row-major upper-triangular index of `{u, v}`.
pub fn pair_index(n: usize, e: Edge) -> usize {
    debug_assert!(e.hi < n);
    e.lo * n - e.lo * (e.lo + 1) / 2 + (e.hi - e.lo - 1)
}

/// Inverse of [`pair_index`].
pub fn pair_at(n: usize, mut idx: usize) -> Edge {
    let mut u = 0;
    loop {
        let row = n - u - 1;
        if idx < row {
            return Edge::new(u, u + 1 + idx);
        }
        idx -= row;
        u += 1;
    }
}

/// All pairs over `n` vertices in row-major order.
pub fn all_pairs(n: usize) -> impl Iterator<Item = Edge> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| Edge::new(u, v)))
}

/// A complete graph on an even number of vertices with a 1-factorization.
#[derive(Clone, PartialEq, Eq)]
pub struct EdgeColouredKn {
    n: usize,
    colours: Vec<Colour>,
    classes: Vec<Vec<Edge>>,
    /// `partner[c][v]` is the `c`-neighbour of `v`.
    partner: Vec<Vec<Vertex>>,
}

impl fmt::Debug for EdgeColouredKn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EdgeColouredKn")
            .field("n", &self.n)
            .field("classes", &self.classes)
            .finish()
    }
}

/// A reason why a raw colouring is not a 1-factorization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FactorizationViolation {
    OddOrTooSmall { n: usize },
    WrongLength { expected: usize, found: usize },
    ColourOutOfRange { position: usize, edge: Edge, colour: Colour },
    /// Vertex `vertex` sees colour `colour` on more than one edge.
    NotAMatching { colour: Colour, vertex: Vertex, edges: Vec<Edge> },
    /// Colour class `colour` leaves `vertex` uncovered.
    NotPerfect { colour: Colour, vertex: Vertex },
    ColourCount { expected: usize, found: usize },
}

impl fmt::Display for FactorizationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FactorizationViolation::*;
        match self {
            OddOrTooSmall { n } => write!(f, "n = {n} must be even and at least 2"),
            WrongLength { expected, found } => {
                write!(f, "colour array has {found} entries, expected {expected}")
            }
            ColourOutOfRange { position, edge, colour } => write!(
                f,
                "colours[{position}] (edge {edge}) = {colour} is out of range"
            ),
            NotAMatching { colour, vertex, edges } => write!(
                f,
                "colour {colour} is not a matching: vertex {vertex} lies on {edges:?}"
            ),
            NotPerfect { colour, vertex } => {
                write!(f, "colour {colour} does not cover vertex {vertex}")
            }
            ColourCount { expected, found } => {
                write!(f, "{found} colours in use, expected {expected}")
            }
        }
    }
}

/// Checks a raw colouring (row-major upper-triangular) for the
/// 1-factorization invariants. An empty result means valid.
pub fn verify_colouring(n: usize, colours: &[Colour]) -> Vec<FactorizationViolation> {
    use FactorizationViolation::*;
    let mut out = Vec::new();
    if n < 2 || n % 2 == 1 {
        out.push(OddOrTooSmall { n });
        return out;
    }
    let expected = pair_count(n);
    if colours.len() != expected {
        out.push(WrongLength { expected, found: colours.len() });
        return out;
    }
    let k = n - 1;
    // seen[c][v] = edges of colour c at v
    let mut seen: Vec<BTreeMap<Vertex, Vec<Edge>>> = vec![BTreeMap::new(); k];
    let mut used = BTreeSet::new();
    for (pos, (e, &c)) in all_pairs(n).zip(colours).enumerate() {
        if c >= k {
            out.push(ColourOutOfRange { position: pos, edge: e, colour: c });
            continue;
        }
        used.insert(c);
        seen[c].entry(e.lo).or_default().push(e);
        seen[c].entry(e.hi).or_default().push(e);
    }
    for (c, at) in seen.iter().enumerate() {
        for v in 0..n {
            match at.get(&v) {
                None => out.push(NotPerfect { colour: c, vertex: v }),
                Some(es) if es.len() > 1 => out.push(NotAMatching {
                    colour: c,
                    vertex: v,
                    edges: es.clone(),
                }),
                _ => {}
            }
        }
    }
    if used.len() != k {
        out.push(ColourCount { expected: k, found: used.len() });
    }
    out
}

impl EdgeColouredKn {
    /// Builds a validated instance from the flat colour array.
    pub fn from_colours(n: usize, colours: Vec<Colour>) -> Result<Self> {
        let violations = verify_colouring(n, &colours);
        if let Some(first) = violations.first() {
            return Err(Error::InvalidInstance(format!(
                "{first} ({} violation(s) total)",
                violations.len()
            )));
        }
        Ok(Self::build_unchecked(n, colours))
    }

    fn build_unchecked(n: usize, colours: Vec<Colour>) -> Self {
        let k = n - 1;
        let mut classes = vec![Vec::with_capacity(n / 2); k];
        let mut partner = vec![vec![usize::MAX; n]; k];
        for (e, &c) in all_pairs(n).zip(&colours) {
            classes[c].push(e);
            partner[c][e.lo] = e.hi;
            partner[c][e.hi] = e.lo;
        }
        EdgeColouredKn { n, colours, classes, partner }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn colour_count(&self) -> usize {
        self.n - 1
    }

    /// Number of trees in a rainbow spanning tree decomposition, `n/2`.
    pub fn t(&self) -> usize {
        self.n / 2
    }

    pub fn edge_count(&self) -> usize {
        self.colours.len()
    }

    pub fn colour(&self, e: Edge) -> Colour {
        self.colours[pair_index(self.n, e)]
    }

    pub fn colour_of(&self, u: Vertex, v: Vertex) -> Colour {
        self.colour(Edge::new(u, v))
    }

    /// The `c`-edges, sorted.
    pub fn class(&self, c: Colour) -> &[Edge] {
        &self.classes[c]
    }

    pub fn classes(&self) -> &[Vec<Edge>] {
        &self.classes
    }

    /// The `c`-neighbour of `v`.
    pub fn partner(&self, c: Colour, v: Vertex) -> Vertex {
        self.partner[c][v]
    }

    pub fn colours(&self) -> &[Colour] {
        &self.colours
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> {
        all_pairs(self.n)
    }

    pub fn to_json(&self) -> InstanceJson {
        InstanceJson { n: self.n, colours: self.colours.clone() }
    }

    pub fn from_json(j: InstanceJson) -> Result<Self> {
        Self::from_colours(j.n, j.colours)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref())?;
        let j: InstanceJson = serde_json::from_str(&text)?;
        Self::from_json(j)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, serde_json::to_string(&self.to_json())? + "\n")?;
        Ok(())
    }

    /// The same factorization with vertices renamed by `perm` (old -> new)
    /// and colours renamed by `colour_perm`.
    pub fn relabeled(&self, perm: &[Vertex], colour_perm: &[Colour]) -> Self {
        let mut colours = vec![0; self.colours.len()];
        for (e, &c) in all_pairs(self.n).zip(&self.colours) {
            let f = Edge::new(perm[e.lo], perm[e.hi]);
            colours[pair_index(self.n, f)] = colour_perm[c];
        }
        Self::build_unchecked(self.n, colours)
    }
}

/// JSON instance layout: `{ "n": int, "colours": [...] }`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct InstanceJson {
    pub n: usize,
    pub colours: Vec<Colour>,
}

pub fn verify_factorization(g: &EdgeColouredKn) -> Vec<FactorizationViolation> {
    verify_colouring(g.n, &g.colours)
}

fn check_even(n: usize) -> Result<()> {
    if n < 2 || n % 2 == 1 {
        return Err(invalid(format!("n = {n} must be even and at least 2")));
    }
    Ok(())
}

/// The classical round-robin ("circle") 1-factorization: vertex `n-1` sits
/// at the centre and colour `c` pairs it with `c`, rotating the rest.
pub fn generate_circle_factorization(n: usize) -> Result<EdgeColouredKn> {
    check_even(n)?;
    let k = n - 1;
    let mut colours = vec![0; pair_count(n)];
    for c in 0..k {
        colours[pair_index(n, Edge::new(c, n - 1))] = c;
        for d in 1..=(n - 2) / 2 {
            let a = (c + d) % k;
            let b = (c + k - d) % k;
            colours[pair_index(n, Edge::new(a, b))] = c;
        }
    }
    Ok(EdgeColouredKn::build_unchecked(n, colours))
}

const FACTORIZATION_RESTARTS: usize = 1000;

/// Largest `n` sampled by backtracking.
pub const BACKTRACK_LIMIT: usize = 32;

/// Applies `swaps` random Kempe swaps: pick colours `a != b` and a vertex,
/// and exchange `a` and `b` along the alternating cycle through it. Each
/// swap keeps every colour class a perfect matching.
pub fn kempe_mix(g: &EdgeColouredKn, swaps: usize, seed: u64) -> EdgeColouredKn {
    let n = g.n();
    if n < 4 {
        return g.clone();
    }
    let k = n - 1;
    let mut rng = seeded(seed);
    let mut colours = g.colours().to_vec();
    let mut partner = vec![0; n * k];
    for c in 0..k {
        for e in g.class(c) {
            partner[e.lo * k + c] = e.hi;
            partner[e.hi * k + c] = e.lo;
        }
    }
    let mut cycle = Vec::with_capacity(n);
    for _ in 0..swaps {
        let a = rng.gen_range(0..k);
        let b = (a + rng.gen_range(1..k)) % k;
        let start = rng.gen_range(0..n);
        cycle.clear();
        let (mut v, mut c) = (start, a);
        loop {
            cycle.push(v);
            v = partner[v * k + c];
            c = if c == a { b } else { a };
            if v == start && c == a {
                break;
            }
        }
        // cycle[j] -- cycle[j+1] had colour a for even j, b for odd j
        let len = cycle.len();
        for j in 0..len {
            let (u, w) = (cycle[j], cycle[(j + 1) % len]);
            let new = if j % 2 == 0 { b } else { a };
            colours[pair_index(n, Edge::new(u, w))] = new;
            partner[u * k + new] = w;
            partner[w * k + new] = u;
        }
    }
    let out = EdgeColouredKn::build_unchecked(n, colours);
    debug_assert!(verify_factorization(&out).is_empty());
    out
}

/// Random 1-factorization by randomized backtracking.
///
/// The search treats each edge and each (vertex, colour) incidence as a
/// constraint and always branches on the most constrained one, trying
/// candidates in random order. Each attempt has a node budget; on
/// exhaustion the search restarts, up to 1000 times. Outputs are not
/// uniform over all 1-factorizations.
///
/// Above [`BACKTRACK_LIMIT`] vertices the backtracking is too slow, and the
/// circle factorization is relabeled at random and then mixed by
/// [`kempe_mix`].
pub fn generate_random_factorization(n: usize, seed: u64) -> Result<EdgeColouredKn> {
    check_even(n)?;
    let mut rng = seeded(seed);
    if n > BACKTRACK_LIMIT {
        let g = generate_circle_factorization(n)?;
        let mut perm: Vec<Vertex> = (0..n).collect();
        perm.shuffle(&mut rng);
        let mut cperm: Vec<Colour> = (0..n - 1).collect();
        cperm.shuffle(&mut rng);
        return Ok(kempe_mix(&g.relabeled(&perm, &cperm), n * n, rng.gen()));
    }
    let node_budget = 200 * pair_count(n) + 1000;
    for _ in 0..FACTORIZATION_RESTARTS {
        let mut search = FactorizationSearch::new(n, &mut rng);
        if search.run(&mut rng, node_budget) {
            let mut colours = vec![0; pair_count(n)];
            for (e, c) in search.edges.iter().zip(&search.colour) {
                colours[pair_index(n, *e)] = c.expect("complete");
            }
            let g = EdgeColouredKn::build_unchecked(n, colours);
            debug_assert!(verify_factorization(&g).is_empty());
            return Ok(g);
        }
    }
    Err(Error::RetryExhausted {
        attempts: FACTORIZATION_RESTARTS,
        what: format!("random 1-factorization of K_{n}"),
    })
}

struct FactorizationSearch {
    n: usize,
    edges: Vec<Edge>,
    colour: Vec<Option<Colour>>,
    /// has[v][c]: vertex v already has a c-edge.
    has: Vec<Vec<bool>>,
    nodes: usize,
}

enum Branch {
    Edge(usize, Vec<Colour>),
    Incidence(Vec<(usize, Colour)>),
}

impl FactorizationSearch {
    fn new(n: usize, rng: &mut impl Rng) -> Self {
        let mut edges: Vec<Edge> = all_pairs(n).collect();
        edges.shuffle(rng);
        FactorizationSearch {
            n,
            colour: vec![None; edges.len()],
            edges,
            has: vec![vec![false; n - 1]; n],
            nodes: 0,
        }
    }

    fn free_colours(&self, e: Edge) -> Vec<Colour> {
        (0..self.n - 1)
            .filter(|&c| !self.has[e.lo][c] && !self.has[e.hi][c])
            .collect()
    }

    /// Picks the most constrained open item; `None` means all edges coloured.
    fn choose(&self) -> Option<Branch> {
        let mut best: Option<Branch> = None;
        let mut best_len = usize::MAX;
        let mut any_open = false;
        // options[v][c] = open edges at v that could take colour c
        let mut options: Vec<Vec<Vec<(usize, Colour)>>> =
            vec![vec![Vec::new(); self.n - 1]; self.n];
        for (i, &e) in self.edges.iter().enumerate() {
            if self.colour[i].is_some() {
                continue;
            }
            any_open = true;
            let free = self.free_colours(e);
            for &c in &free {
                options[e.lo][c].push((i, c));
                options[e.hi][c].push((i, c));
            }
            if free.len() < best_len {
                best_len = free.len();
                best = Some(Branch::Edge(i, free));
                if best_len == 0 {
                    return best;
                }
            }
        }
        if !any_open {
            return None;
        }
        for v in 0..self.n {
            for c in 0..self.n - 1 {
                if self.has[v][c] {
                    continue;
                }
                let opts = &options[v][c];
                if opts.len() < best_len {
                    best_len = opts.len();
                    best = Some(Branch::Incidence(opts.clone()));
                    if best_len == 0 {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn assign(&mut self, i: usize, c: Colour, on: bool) {
        let e = self.edges[i];
        self.colour[i] = on.then_some(c);
        self.has[e.lo][c] = on;
        self.has[e.hi][c] = on;
    }

    fn run(&mut self, rng: &mut impl Rng, budget: usize) -> bool {
        self.nodes += 1;
        if self.nodes > budget {
            return false;
        }
        let mut choices: Vec<(usize, Colour)> = match self.choose() {
            None => return true,
            Some(Branch::Edge(i, free)) => free.into_iter().map(|c| (i, c)).collect(),
            Some(Branch::Incidence(opts)) => opts,
        };
        choices.shuffle(rng);
        for (i, c) in choices {
            self.assign(i, c, true);
            if self.run(rng, budget) {
                return true;
            }
            self.assign(i, c, false);
            if self.nodes > budget {
                return false;
            }
        }
        false
    }
}

/// A set of edges over `0..n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSet {
    edges: BTreeSet<Edge>,
}

impl EdgeSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds an edge set, rejecting duplicates and endpoints outside `0..n`.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for e in edges {
            if e.hi >= n {
                return Err(invalid(format!("edge {e} has an endpoint outside 0..{n}")));
            }
            if !set.insert(e) {
                return Err(invalid(format!("duplicate edge {e}")));
            }
        }
        Ok(EdgeSet { edges: set })
    }

    pub fn insert(&mut self, e: Edge) -> bool {
        self.edges.insert(e)
    }

    pub fn remove(&mut self, e: &Edge) -> bool {
        self.edges.remove(e)
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter()
    }

    /// Edges incident to `v`, written ∂(v).
    pub fn incident(&self, v: Vertex) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.contains(v))
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.incident(v).count()
    }

    /// Edges of colour `c`, written E_c.
    pub fn of_colour<'a>(&'a self, g: &'a EdgeColouredKn, c: Colour) -> impl Iterator<Item = &'a Edge> {
        self.edges.iter().filter(move |e| g.colour(**e) == c)
    }

    pub fn vertices(&self) -> BTreeSet<Vertex> {
        self.edges.iter().flat_map(|e| [e.lo, e.hi]).collect()
    }

    pub fn colours(&self, g: &EdgeColouredKn) -> BTreeSet<Colour> {
        self.edges.iter().map(|&e| g.colour(e)).collect()
    }

    /// `self - other`.
    pub fn minus(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet {
            edges: self.edges.difference(&other.edges).copied().collect(),
        }
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet {
            edges: self.edges.union(&other.edges).copied().collect(),
        }
    }

    pub fn to_vec(&self) -> Vec<Edge> {
        self.edges.iter().copied().collect()
    }
}

impl FromIterator<Edge> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        EdgeSet { edges: iter.into_iter().collect() }
    }
}

impl<'a> IntoIterator for &'a EdgeSet {
    type Item = &'a Edge;
    type IntoIter = std::collections::btree_set::Iter<'a, Edge>;
    fn into_iter(self) -> Self::IntoIter {
        self.edges.iter()
    }
}

/// True iff the edges of `s` carry pairwise distinct colours.
pub fn is_rainbow(g: &EdgeColouredKn, s: &EdgeSet) -> bool {
    let mut seen = vec![false; g.colour_count()];
    for &e in s {
        let c = g.colour(e);
        if seen[c] {
            return false;
        }
        seen[c] = true;
    }
    true
}

/// True iff the given edges (possibly with repeats) have distinct colours.
pub fn is_rainbow_slice(g: &EdgeColouredKn, edges: &[Edge]) -> bool {
    let mut seen = BTreeSet::new();
    edges.iter().all(|&e| seen.insert(g.colour(e)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BoundKind {
    /// |V_i| > m or |C_i| > m.
    SetSize,
    /// v lies in more than m of the V_i.
    VertexIncidence,
    /// d_G(v) > m.
    VertexDegree,
    /// c lies in more than m of the C_i.
    ColourIncidence,
    /// More than m c-edges in G.
    ColourMultiplicity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Witness {
    VertexSet(usize),
    ColourSet(usize),
    Vertex(Vertex),
    Colour(Colour),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundViolation {
    pub kind: BoundKind,
    pub witness: Witness,
    pub observed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundednessReport {
    pub m: usize,
    pub violations: Vec<BoundViolation>,
}

impl BoundednessReport {
    pub fn is_bounded(&self) -> bool {
        self.violations.is_empty()
    }

    /// Smallest threshold at which the audited triple would be bounded,
    /// as far as the recorded violations tell.
    pub fn worst(&self) -> usize {
        self.violations.iter().map(|v| v.observed).max().unwrap_or(0)
    }
}

/// Audits the triple `(leftover, vertex_sets, colour_sets)` against the
/// three m-boundedness conditions, listing every failure.
pub fn check_bounded(
    g: &EdgeColouredKn,
    leftover: &EdgeSet,
    vertex_sets: &[BTreeSet<Vertex>],
    colour_sets: &[BTreeSet<Colour>],
    m: usize,
) -> Result<BoundednessReport> {
    if vertex_sets.len() != colour_sets.len() {
        return Err(invalid(format!(
            "{} vertex sets but {} colour sets",
            vertex_sets.len(),
            colour_sets.len()
        )));
    }
    let n = g.n();
    let mut violations = Vec::new();
    let mut push = |kind, witness, observed: usize| {
        if observed > m {
            violations.push(BoundViolation { kind, witness, observed });
        }
    };
    for (i, (vs, cs)) in vertex_sets.iter().zip(colour_sets).enumerate() {
        push(BoundKind::SetSize, Witness::VertexSet(i), vs.len());
        push(BoundKind::SetSize, Witness::ColourSet(i), cs.len());
    }
    let mut vertex_inc = vec![0usize; n];
    for vs in vertex_sets {
        for &v in vs {
            vertex_inc[v] += 1;
        }
    }
    let mut degree = vec![0usize; n];
    let mut multiplicity = vec![0usize; g.colour_count()];
    for &e in leftover {
        degree[e.lo] += 1;
        degree[e.hi] += 1;
        multiplicity[g.colour(e)] += 1;
    }
    for v in 0..n {
        push(BoundKind::VertexIncidence, Witness::Vertex(v), vertex_inc[v]);
        push(BoundKind::VertexDegree, Witness::Vertex(v), degree[v]);
    }
    let mut colour_inc = vec![0usize; g.colour_count()];
    for cs in colour_sets {
        for &c in cs {
            colour_inc[c] += 1;
        }
    }
    for c in 0..g.colour_count() {
        push(BoundKind::ColourIncidence, Witness::Colour(c), colour_inc[c]);
        push(BoundKind::ColourMultiplicity, Witness::Colour(c), multiplicity[c]);
    }
    Ok(BoundednessReport { m, violations })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DecompositionDiagnostic {
    /// An edge appears in two parts.
    Overlap { edge: Edge, parts: (usize, usize) },
    /// Edges of K_n that no part covers.
    Missing { count: usize },
    OutOfRange { part: usize, edge: Edge },
    PartSize { part: usize, edges: usize },
    NotSpanningTree { part: usize, components: usize },
    NotRainbow { part: usize, colour: Colour },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionCheck {
    pub valid: bool,
    pub diagnostics: Vec<DecompositionDiagnostic>,
}

/// Checks that `parts` are edge-disjoint rainbow spanning trees covering
/// every edge of `g`.
pub fn verify_decomposition(g: &EdgeColouredKn, parts: &[EdgeSet]) -> DecompositionCheck {
    use DecompositionDiagnostic::*;
    let n = g.n();
    let mut diagnostics = Vec::new();
    let mut owner: Vec<Option<usize>> = vec![None; g.edge_count()];
    for (p, part) in parts.iter().enumerate() {
        for &e in part {
            if e.hi >= n {
                diagnostics.push(OutOfRange { part: p, edge: e });
                continue;
            }
            let slot = &mut owner[pair_index(n, e)];
            match slot {
                Some(q) => diagnostics.push(Overlap { edge: e, parts: (*q, p) }),
                None => *slot = Some(p),
            }
        }
        if part.len() != n - 1 {
            diagnostics.push(PartSize { part: p, edges: part.len() });
        }
        let mut dsu = Dsu::new(n);
        for &e in part {
            if e.hi < n {
                dsu.union(e.lo, e.hi);
            }
        }
        if dsu.components() != 1 || part.len() != n - 1 {
            diagnostics.push(NotSpanningTree { part: p, components: dsu.components() });
        }
        let mut seen = BTreeSet::new();
        for &e in part {
            if e.hi < n && !seen.insert(g.colour(e)) {
                diagnostics.push(NotRainbow { part: p, colour: g.colour(e) });
            }
        }
    }
    let missing = owner.iter().filter(|o| o.is_none()).count();
    if missing > 0 {
        diagnostics.push(Missing { count: missing });
    }
    DecompositionCheck { valid: diagnostics.is_empty(), diagnostics }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    components: usize,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect(), size: vec![1; n], components: n }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already connected.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.components -= 1;
        true
    }

    pub fn components(&self) -> usize {
        self.components
    }
}

/// Result of a random split: one cell per weight, plus the elements that
/// fell into the slack `1 - sum(weights)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split<T> {
    pub cells: Vec<Vec<T>>,
    pub remainder: Vec<T>,
}

const SPLIT_SLACK: f64 = 1e-9;

/// Assigns every element independently to cell `i` with probability
/// `weights[i]`.
pub fn random_split<T: Clone>(universe: &[T], weights: &[f64], seed: u64) -> Result<Split<T>> {
    let mut rng = seeded(seed);
    random_split_with(universe, weights, &mut rng)
}

pub(crate) fn random_split_with<T: Clone>(
    universe: &[T],
    weights: &[f64],
    rng: &mut impl Rng,
) -> Result<Split<T>> {
    if let Some(w) = weights.iter().find(|w| !(**w >= 0.0) || !w.is_finite()) {
        return Err(invalid(format!("split weight {w} must be a non-negative number")));
    }
    let total: f64 = weights.iter().sum();
    if total > 1.0 + SPLIT_SLACK {
        return Err(invalid(format!("split weights sum to {total} > 1")));
    }
    let mut cells = vec![Vec::new(); weights.len()];
    let mut remainder = Vec::new();
    for x in universe {
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        let mut placed = false;
        for (i, w) in weights.iter().enumerate() {
            acc += w;
            if u < acc {
                cells[i].push(x.clone());
                placed = true;
                break;
            }
        }
        if !placed {
            // rounding slack when the weights sum to one
            if total >= 1.0 - SPLIT_SLACK && !weights.is_empty() {
                let last = weights.iter().rposition(|w| *w > 0.0).unwrap_or(weights.len() - 1);
                cells[last].push(x.clone());
            } else {
                remainder.push(x.clone());
            }
        }
    }
    Ok(Split { cells, remainder })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kempe_swaps_keep_a_factorization() {
        let g = generate_circle_factorization(12).unwrap();
        let h = kempe_mix(&g, 500, 3);
        assert!(verify_factorization(&h).is_empty());
        assert_ne!(h, g);
    }

    #[test]
    fn large_random_factorization_is_valid() {
        let g = generate_random_factorization(2 * BACKTRACK_LIMIT + 2, 0).unwrap();
        assert!(verify_factorization(&g).is_empty());
        assert_eq!(g, generate_random_factorization(2 * BACKTRACK_LIMIT + 2, 0).unwrap());
    }

    #[test]
    fn pair_index_roundtrip() {
        for n in [2, 3, 7, 10] {
            for (i, e) in all_pairs(n).enumerate() {
                assert_eq!(pair_index(n, e), i);
                assert_eq!(pair_at(n, i), e);
            }
        }
    }

    #[test]
    fn k2_single_edge() {
        let g = generate_circle_factorization(2).unwrap();
        assert_eq!(g.colours(), &[0]);
        assert!(verify_factorization(&g).is_empty());
    }

    #[test]
    fn k4_is_the_unique_factorization() {
        let g = generate_circle_factorization(4).unwrap();
        let mut classes: Vec<Vec<Edge>> = g.classes().to_vec();
        classes.sort();
        let expected = vec![
            vec![Edge::new(0, 1), Edge::new(2, 3)],
            vec![Edge::new(0, 2), Edge::new(1, 3)],
            vec![Edge::new(0, 3), Edge::new(1, 2)],
        ];
        assert_eq!(classes, expected);
    }

    #[test]
    fn odd_n_rejected() {
        assert!(matches!(generate_circle_factorization(5), Err(Error::InvalidArgument(_))));
        assert!(matches!(generate_circle_factorization(0), Err(Error::InvalidArgument(_))));
        assert!(matches!(generate_random_factorization(7, 0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn broken_k4_reports_non_matching_class() {
        let g = generate_circle_factorization(4).unwrap();
        let mut colours = g.colours().to_vec();
        let c01 = colours[pair_index(4, Edge::new(0, 1))];
        colours[pair_index(4, Edge::new(0, 2))] = c01;
        let v = verify_colouring(4, &colours);
        assert!(v
            .iter()
            .any(|x| matches!(x, FactorizationViolation::NotAMatching { vertex: 0, .. })));
        assert!(EdgeColouredKn::from_colours(4, colours).is_err());
    }

    #[test]
    fn random_k4_is_the_unique_one() {
        for seed in 0..5 {
            let g = generate_random_factorization(4, seed).unwrap();
            let mut classes: Vec<Vec<Edge>> = g.classes().to_vec();
            classes.sort();
            assert_eq!(classes.len(), 3);
            assert_eq!(classes[0], vec![Edge::new(0, 1), Edge::new(2, 3)]);
        }
    }

    #[test]
    fn random_factorization_deterministic() {
        let a = generate_random_factorization(8, 7).unwrap();
        let b = generate_random_factorization(8, 7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn star_is_rainbow() {
        let g = generate_circle_factorization(10).unwrap();
        for v in 0..10 {
            let star: EdgeSet = (0..10).filter(|&u| u != v).map(|u| Edge::new(u, v)).collect();
            assert!(is_rainbow(&g, &star));
        }
        assert!(is_rainbow(&g, &EdgeSet::new()));
        let two: EdgeSet = g.class(3)[..2].iter().copied().collect();
        assert!(!is_rainbow(&g, &two));
    }

    #[test]
    fn bounded_empty_and_oversized() {
        let g = generate_circle_factorization(6).unwrap();
        let r = check_bounded(&g, &EdgeSet::new(), &[BTreeSet::new()], &[BTreeSet::new()], 0).unwrap();
        assert!(r.is_bounded());
        let vs = vec![BTreeSet::from([0, 1, 2]), BTreeSet::new()];
        let cs = vec![BTreeSet::new(), BTreeSet::new()];
        let r = check_bounded(&g, &EdgeSet::new(), &vs, &cs, 2).unwrap();
        assert_eq!(
            r.violations,
            vec![BoundViolation { kind: BoundKind::SetSize, witness: Witness::VertexSet(0), observed: 3 }]
        );
    }

    #[test]
    fn perfect_matching_is_one_bounded_in_degree_and_multiplicity() {
        let g = generate_circle_factorization(8).unwrap();
        // first rainbow perfect matching found by brute force
        fn search(g: &EdgeColouredKn, left: &mut Vec<Vertex>, acc: &mut Vec<Edge>) -> bool {
            let Some(&u) = left.first() else { return true };
            for j in 1..left.len() {
                let e = Edge::new(u, left[j]);
                if acc.iter().any(|&f| g.colour(f) == g.colour(e)) {
                    continue;
                }
                let rest: Vec<Vertex> = left.iter().copied().filter(|&w| w != u && w != left[j]).collect();
                let saved = std::mem::replace(left, rest);
                acc.push(e);
                if search(g, left, acc) {
                    return true;
                }
                acc.pop();
                *left = saved;
            }
            false
        }
        let mut acc = Vec::new();
        assert!(search(&g, &mut (0..8).collect(), &mut acc));
        let pm: EdgeSet = acc.into_iter().collect();
        let r = check_bounded(&g, &pm, &[], &[], 1).unwrap();
        assert!(r.is_bounded(), "{:?}", r.violations);
        let class: EdgeSet = g.class(2).iter().copied().collect();
        let r = check_bounded(&g, &class, &[], &[], 1).unwrap();
        assert!(r
            .violations
            .iter()
            .all(|v| v.kind == BoundKind::ColourMultiplicity && v.witness == Witness::Colour(2)));
    }

    #[test]
    fn decomposition_k2_and_overlap() {
        let g = generate_circle_factorization(2).unwrap();
        let part: EdgeSet = [Edge::new(0, 1)].into_iter().collect();
        assert!(verify_decomposition(&g, &[part.clone()]).valid);
        let check = verify_decomposition(&g, &[part.clone(), part]);
        assert!(!check.valid);
        assert!(check
            .diagnostics
            .iter()
            .any(|d| matches!(d, DecompositionDiagnostic::Overlap { .. })));
    }

    #[test]
    fn split_edge_cases() {
        let xs: Vec<u32> = (0..100).collect();
        let s = random_split(&xs, &[1.0], 3).unwrap();
        assert_eq!(s.cells[0], xs);
        let s = random_split::<u32>(&[], &[0.3, 0.7], 3).unwrap();
        assert!(s.cells.iter().all(|c| c.is_empty()));
        assert!(random_split(&xs, &[-0.1, 0.5], 0).is_err());
        let s = random_split(&xs, &[0.2, 0.3], 9).unwrap();
        let total: usize = s.cells.iter().map(Vec::len).sum::<usize>() + s.remainder.len();
        assert_eq!(total, 100);
        assert_eq!(s, random_split(&xs, &[0.2, 0.3], 9).unwrap());
    }

    #[test]
    fn json_loader_positions_errors() {
        let j = InstanceJson { n: 4, colours: vec![0, 1, 2, 2, 1, 7] };
        let err = EdgeColouredKn::from_json(j).unwrap_err().to_string();
        assert!(err.contains("colours[5]"), "{err}");
    }
}
