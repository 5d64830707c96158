//! Tree shapes: the target tree `T_{n;r,b}`, its maximum-degree-3 variant,
//! connectors, and canonical forms for isomorphism testing.

use std::collections::{BTreeSet, VecDeque};
use std::path::Path;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::rng::seeded;

/// Distinguished vertices of a tree shape.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeLabels {
    /// The long path `v_0 … v_ℓ`.
    pub spine: Vec<usize>,
    /// Vertices where gadgets attach.
    pub attachment_roots: Vec<usize>,
    /// Pendant vertices matched to the end of the spine.
    pub b_set: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeShape {
    adj: Vec<Vec<usize>>,
    pub labels: TreeLabels,
}

impl TreeShape {
    /// Validates that `edges` form a tree on `0..vertex_count`.
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if vertex_count == 0 {
            return Err(invalid("a tree needs at least one vertex"));
        }
        if edges.len() + 1 != vertex_count {
            return Err(invalid(format!(
                "{} edges on {vertex_count} vertices cannot form a tree",
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); vertex_count];
        let mut seen = BTreeSet::new();
        for &(a, b) in edges {
            if a == b || a >= vertex_count || b >= vertex_count {
                return Err(invalid(format!("edge ({a}, {b}) is invalid")));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(invalid(format!("edge ({a}, {b}) is repeated")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let t = TreeShape { adj, labels: TreeLabels::default() };
        if t.bfs_order(0).len() != vertex_count {
            return Err(invalid("the graph is disconnected"));
        }
        Ok(t)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.len() - 1
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (a, ns) in self.adj.iter().enumerate() {
            for &b in ns {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    fn bfs_order(&self, root: usize) -> Vec<usize> {
        let mut seen = vec![false; self.adj.len()];
        let mut order = vec![root];
        seen[root] = true;
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
        order
    }

    /// Parent of each vertex when rooted at `root` (`None` at the root).
    pub fn parents(&self, root: usize) -> Vec<Option<usize>> {
        let mut parent = vec![None; self.adj.len()];
        let mut seen = vec![false; self.adj.len()];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    queue.push_back(w);
                }
            }
        }
        parent
    }

    /// The one or two centroids.
    pub fn centroids(&self) -> Vec<usize> {
        let n = self.adj.len();
        let order = self.bfs_order(0);
        let parent = self.parents(0);
        let mut size = vec![1usize; n];
        for &v in order.iter().rev() {
            if let Some(p) = parent[v] {
                size[p] += size[v];
            }
        }
        let mut out = Vec::new();
        for v in 0..n {
            let mut worst = n - size[v];
            for &w in &self.adj[v] {
                if parent[w] == Some(v) {
                    worst = worst.max(size[w]);
                }
            }
            if 2 * worst <= n {
                out.push(v);
            }
        }
        out
    }

    /// The same tree with vertex `v` renamed `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> TreeShape {
        let edges: Vec<(usize, usize)> = self.edges().into_iter().map(|(a, b)| (perm[a], perm[b])).collect();
        let mut t = TreeShape::new(self.vertex_count(), &edges).expect("relabeling keeps a tree");
        let map = |vs: &Vec<usize>| vs.iter().map(|&v| perm[v]).collect();
        t.labels = TreeLabels {
            spine: map(&self.labels.spine),
            attachment_roots: map(&self.labels.attachment_roots),
            b_set: map(&self.labels.b_set),
        };
        t
    }

    pub fn to_json(&self) -> TreeJson {
        TreeJson { parent: self.parents(0), labels: self.labels.clone() }
    }

    pub fn from_json(j: TreeJson) -> Result<Self> {
        let n = j.parent.len();
        let edges: Vec<(usize, usize)> = j.parent.iter().enumerate().filter_map(|(v, p)| p.map(|p| (v, p))).collect();
        let mut t = TreeShape::new(n, &edges)?;
        let labelled = j.labels.spine.iter().chain(&j.labels.attachment_roots).chain(&j.labels.b_set);
        if labelled.into_iter().any(|&v| v >= n) {
            return Err(invalid("tree label out of range"));
        }
        t.labels = j.labels;
        Ok(t)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        TreeShape::from_json(serde_json::from_str(&text)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, serde_json::to_string(&self.to_json())? + "\n")?;
        Ok(())
    }
}

/// Parent-array layout: `{"parent": [null, 0, ...], "labels": {...}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub parent: Vec<Option<usize>>,
    #[serde(default)]
    pub labels: TreeLabels,
}

/// Path `P_k` on `k` vertices.
pub fn path_tree(k: usize) -> Result<TreeShape> {
    let edges: Vec<(usize, usize)> = (1..k).map(|i| (i - 1, i)).collect();
    let mut t = TreeShape::new(k, &edges)?;
    t.labels.spine = (0..k).collect();
    Ok(t)
}

/// Star on `k` vertices centred at 0.
pub fn star_tree(k: usize) -> Result<TreeShape> {
    let edges: Vec<(usize, usize)> = (1..k).map(|i| (0, i)).collect();
    TreeShape::new(k, &edges)
}

/// Uniform random labelled tree on `k` vertices (Prüfer decoding).
pub fn random_tree(k: usize, seed: u64) -> Result<TreeShape> {
    if k <= 2 {
        return path_tree(k);
    }
    let mut rng = seeded(seed);
    let code: Vec<usize> = (0..k - 2).map(|_| rng.gen_range(0..k)).collect();
    let mut degree = vec![1usize; k];
    for &c in &code {
        degree[c] += 1;
    }
    let mut leaves: BTreeSet<usize> = (0..k).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(k - 1);
    for &c in &code {
        let leaf = *leaves.iter().next().unwrap();
        leaves.remove(&leaf);
        edges.push((leaf, c));
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.insert(c);
        }
    }
    let rest: Vec<usize> = leaves.into_iter().collect();
    edges.push((rest[0], rest[1]));
    TreeShape::new(k, &edges)
}

/// Paths of length two hung at each interior attachment vertex.
pub const INTERIOR_PATHS: usize = 510;
/// Paths of length two hung at each end attachment vertex.
pub const END_PATHS: usize = 255;

/// Spine length `ℓ = n - 1020r - b - 1` (possibly negative).
pub fn spine_length(n: usize, r: usize, b: usize) -> i64 {
    n as i64 - 1020 * r as i64 - b as i64 - 1
}

/// The tree `T_{n;r,b}`: a path `v_0 … v_ℓ` with 510 paths of length 2
/// hung at `v_{5k}` for `1 ≤ k < r`, 255 at each of `v_0` and `v_{5r}`,
/// and `b` pendant vertices matched to `v_{ℓ-b+1}, …, v_ℓ`.
///
/// Requires `r, b ≥ 1` and `ℓ > r + b`; additionally `5r ≤ ℓ` so that
/// `v_{5r}` exists and `5(r-1) ≤ ℓ - b` so that no pendant lands on an
/// interior attachment vertex (which would push its degree past 512).
///
/// Vertex ids: spine `0..=ℓ`, then the hung paths (hub order, two ids per
/// path, the middle vertex first), then `B`.
pub fn build_t(n: usize, r: usize, b: usize) -> Result<TreeShape> {
    let ell = spine_length(n, r, b);
    if r == 0 || b == 0 {
        return Err(invalid(format!("r = {r} and b = {b} must both be at least 1 (ℓ = {ell})")));
    }
    if ell <= (r + b) as i64 {
        return Err(invalid(format!("ℓ = {ell} must exceed r + b = {}", r + b)));
    }
    let ell = ell as usize;
    if 5 * r > ell || 5 * (r - 1) > ell - b {
        return Err(invalid(format!(
            "ℓ = {ell} is too short for attachment vertices up to v_{} and {b} pendants",
            5 * r
        )));
    }
    let mut edges: Vec<(usize, usize)> = (1..=ell).map(|i| (i - 1, i)).collect();
    let mut next = ell + 1;
    let mut roots = Vec::with_capacity(r + 1);
    for k in 0..=r {
        let hub = 5 * k;
        roots.push(hub);
        let count = if k == 0 || k == r { END_PATHS } else { INTERIOR_PATHS };
        for _ in 0..count {
            edges.push((hub, next));
            edges.push((next, next + 1));
            next += 2;
        }
    }
    let mut b_set = Vec::with_capacity(b);
    for j in 0..b {
        edges.push((ell - b + 1 + j, next));
        b_set.push(next);
        next += 1;
    }
    debug_assert_eq!(next, n);
    let mut t = TreeShape::new(n, &edges)?;
    t.labels = TreeLabels { spine: (0..=ell).collect(), attachment_roots: roots, b_set };
    Ok(t)
}

/// Leaves per binary connector side in the degree-3 variant, `2^8`.
pub const DELTA3_LEAVES: usize = 256;

/// Parameters of the maximum-degree-3 variant of `T_{n;r,b}`.
///
/// The tree strings together `r` matchings of `leaves` edges each, of
/// which one edge per matching lies in the tree and the other endpoints
/// are leaves. Between consecutive matchings sits a connector: a binary
/// tree on the head set of one matching and one on the tail set of the
/// next, joined at their roots by a path of length 2, every edge then
/// subdivided once. The first tail set and the last head set hang from
/// subdivided binary caps; a tail path of length `ℓ'` leaves the last cap
/// and carries `b` pendant vertices on its final `b` vertices.
///
/// With `L = leaves`, counting vertices gives
/// `n = 2Lr + (6L-3)(r-1) + 2(3L-3) + ℓ' + b`, i.e.
/// `ℓ' = n - (8L-3)r + 3 - b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Delta3Params {
    pub n: usize,
    pub r: usize,
    pub b: usize,
    pub leaves: usize,
}

/// Vertices of a connector that are not matching endpoints: `6L - 3`.
pub fn delta3_connector_new_vertices(leaves: usize) -> usize {
    6 * leaves - 3
}
/// Edges of a connector: `8L - 4`.
pub fn delta3_connector_edges(leaves: usize) -> usize {
    8 * leaves - 4
}
/// Non-leaf vertices of a subdivided binary cap: `3L - 3`.
pub fn delta3_cap_new_vertices(leaves: usize) -> usize {
    3 * leaves - 3
}
/// Edges of a subdivided binary cap: `4L - 4`.
pub fn delta3_cap_edges(leaves: usize) -> usize {
    4 * leaves - 4
}

impl Delta3Params {
    pub fn new(n: usize, r: usize, b: usize) -> Self {
        Delta3Params { n, r, b, leaves: DELTA3_LEAVES }
    }

    /// `ℓ' = n - (8L-3)r + 3 - b` (possibly negative).
    pub fn tail_length(&self) -> i64 {
        self.n as i64 - (8 * self.leaves as i64 - 3) * self.r as i64 + 3 - self.b as i64
    }
}

struct Builder {
    next: usize,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn fresh(&mut self) -> usize {
        self.next += 1;
        self.next - 1
    }

    /// Subdivided edge `a – s – b`.
    fn subdivided(&mut self, a: usize, b: usize) {
        let s = self.fresh();
        self.edges.push((a, s));
        self.edges.push((s, b));
    }

    /// Full binary tree over `leaves` (every edge subdivided); returns the root.
    fn binary(&mut self, leaves: &[usize]) -> usize {
        if leaves.len() == 1 {
            return leaves[0];
        }
        let mid = leaves.len() / 2;
        let left = self.binary(&leaves[..mid]);
        let right = self.binary(&leaves[mid..]);
        let root = self.fresh();
        self.subdivided(root, left);
        self.subdivided(root, right);
        root
    }
}

/// The maximum-degree-3 variant; the first edge of each matching is the
/// one in the tree, which does not affect the shape.
pub fn build_t_delta3(p: Delta3Params) -> Result<TreeShape> {
    let tail = p.tail_length();
    if p.r == 0 || p.b == 0 {
        return Err(invalid("r and b must both be at least 1"));
    }
    if p.leaves < 2 {
        return Err(invalid("binary connectors need at least 2 leaves"));
    }
    if tail <= p.b as i64 {
        return Err(invalid(format!("tail length ℓ' = {tail} must exceed b = {}", p.b)));
    }
    let tail = tail as usize;
    let l = p.leaves;
    let mut bld = Builder { next: 0, edges: Vec::with_capacity(p.n) };
    // matching endpoints: tails then heads for each matching
    let mut tails = Vec::with_capacity(p.r);
    let mut heads = Vec::with_capacity(p.r);
    for _ in 0..p.r {
        let ts: Vec<usize> = (0..l).map(|_| bld.fresh()).collect();
        let hs: Vec<usize> = (0..l).map(|_| bld.fresh()).collect();
        bld.edges.push((ts[0], hs[0]));
        tails.push(ts);
        heads.push(hs);
    }
    let mut roots = Vec::new();
    let start = bld.binary(&tails[0]);
    roots.push(start);
    for k in 0..p.r - 1 {
        let bh = bld.binary(&heads[k]);
        let bt = bld.binary(&tails[k + 1]);
        let mid = bld.fresh();
        bld.subdivided(bh, mid);
        bld.subdivided(mid, bt);
        roots.push(mid);
    }
    let end = bld.binary(&heads[p.r - 1]);
    roots.push(end);
    let mut path = vec![end];
    for _ in 0..tail {
        let v = bld.fresh();
        bld.edges.push((*path.last().unwrap(), v));
        path.push(v);
    }
    let mut b_set = Vec::with_capacity(p.b);
    for j in 0..p.b {
        let v = bld.fresh();
        bld.edges.push((path[tail - p.b + 1 + j], v));
        b_set.push(v);
    }
    if bld.next != p.n {
        return Err(crate::error::Error::Internal(format!(
            "degree-3 tree has {} vertices, expected {}",
            bld.next, p.n
        )));
    }
    let mut t = TreeShape::new(p.n, &bld.edges)?;
    let parent = t.parents(start);
    let mut spine = vec![*path.last().unwrap()];
    while let Some(q) = parent[*spine.last().unwrap()] {
        spine.push(q);
    }
    spine.reverse();
    t.labels = TreeLabels { spine, attachment_roots: roots, b_set };
    Ok(t)
}

/// A connector for a `k`-uniform matching `R`: for each hyperedge, `k + 1`
/// new vertices `v_{R,1..k+1}`, a perfect matching from `R` onto
/// `v_{R,1..k}` and a star from `v_{R,k+1}` to `v_{R,1..k}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Connector {
    pub hyperedges: Vec<Vec<usize>>,
    /// `new_vertices[j]` lists `v_{R_j,1}, …, v_{R_j,k+1}`.
    pub new_vertices: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

impl Connector {
    pub fn vertex_count(&self) -> usize {
        self.hyperedges.iter().map(Vec::len).sum::<usize>() + self.new_vertices.iter().map(Vec::len).sum::<usize>()
    }
}

/// Builds the connector; new vertices get ids `first_new, first_new + 1, …`,
/// which must not collide with the hyperedge vertices.
pub fn build_connector(hyperedges: &[Vec<usize>], first_new: usize) -> Result<Connector> {
    let k = hyperedges.first().map_or(0, Vec::len);
    let mut seen = BTreeSet::new();
    for (j, r) in hyperedges.iter().enumerate() {
        if r.len() != k || k == 0 {
            return Err(invalid(format!("hyperedge {j} breaks {k}-uniformity")));
        }
        for &v in r {
            if !seen.insert(v) {
                return Err(invalid(format!("vertex {v} lies in two hyperedges")));
            }
            if v >= first_new {
                return Err(invalid(format!("vertex {v} collides with new vertex ids")));
            }
        }
    }
    let mut next = first_new;
    let mut new_vertices = Vec::with_capacity(hyperedges.len());
    let mut edges = Vec::with_capacity(2 * k * hyperedges.len());
    for r in hyperedges {
        let vs: Vec<usize> = (next..next + k + 1).collect();
        next += k + 1;
        for (j, &u) in r.iter().enumerate() {
            edges.push((u, vs[j]));
        }
        for j in 0..k {
            edges.push((vs[k], vs[j]));
        }
        new_vertices.push(vs);
    }
    Ok(Connector { hyperedges: hyperedges.to_vec(), new_vertices, edges })
}

/// Canonical string of the tree rooted at `root`.
fn rooted_code(t: &TreeShape, root: usize) -> String {
    let order = t.bfs_order(root);
    let parent = t.parents(root);
    let mut codes: Vec<Option<String>> = vec![None; t.vertex_count()];
    let mut child_codes: Vec<Vec<String>> = vec![Vec::new(); t.vertex_count()];
    for &v in order.iter().rev() {
        let mut kids = std::mem::take(&mut child_codes[v]);
        kids.sort_unstable();
        let mut s = String::with_capacity(2 + kids.iter().map(String::len).sum::<usize>());
        s.push('(');
        for k in &kids {
            s.push_str(k);
        }
        s.push(')');
        match parent[v] {
            Some(p) => child_codes[p].push(s),
            None => codes[v] = Some(s),
        }
    }
    codes[root].take().expect("root coded")
}

/// AHU canonical form rooted at the centroid (the smaller of the two
/// codes when there are two centroids). Equal iff isomorphic.
pub fn canonical_form(t: &TreeShape) -> String {
    t.centroids()
        .into_iter()
        .map(|c| rooted_code(t, c))
        .min()
        .expect("a tree has a centroid")
}

/// [`canonical_form`] of an edge list, rejecting non-trees.
pub fn canonical_form_of(vertex_count: usize, edges: &[(usize, usize)]) -> Result<String> {
    Ok(canonical_form(&TreeShape::new(vertex_count, edges)?))
}

pub fn tree_isomorphic(a: &TreeShape, b: &TreeShape) -> bool {
    a.vertex_count() == b.vertex_count() && canonical_form(a) == canonical_form(b)
}
