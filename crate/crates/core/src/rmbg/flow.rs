//! Integer max flow (Dinic) with a min-cut certificate.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub cap: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowNetwork {
    nodes: usize,
    arcs: Vec<Arc>,
    source: usize,
    sink: usize,
}

impl FlowNetwork {
    pub fn new(nodes: usize, source: usize, sink: usize) -> Result<Self> {
        if source >= nodes || sink >= nodes || source == sink {
            return Err(invalid(format!(
                "source {source} / sink {sink} invalid for {nodes} nodes"
            )));
        }
        Ok(FlowNetwork { nodes, arcs: Vec::new(), source, sink })
    }

    /// Adds an arc and returns its index.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64) -> Result<usize> {
        if from >= self.nodes || to >= self.nodes {
            return Err(invalid(format!("arc {from}->{to} out of range")));
        }
        if cap < 0 {
            return Err(invalid(format!("arc {from}->{to} has negative capacity {cap}")));
        }
        if to == self.source {
            return Err(invalid("the source may not have incoming arcs"));
        }
        if from == self.sink {
            return Err(invalid("the sink may not have outgoing arcs"));
        }
        self.arcs.push(Arc { from, to, cap });
        Ok(self.arcs.len() - 1)
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowResult {
    pub value: i64,
    /// Flow on each arc, indexed like [`FlowNetwork::arcs`].
    pub flow: Vec<i64>,
    /// Nodes reachable from the source in the final residual graph.
    pub source_side: Vec<bool>,
    /// Capacity of the cut `(source_side, rest)`; equals `value`.
    pub cut_capacity: i64,
}

struct Residual {
    head: Vec<usize>,
    cap: Vec<i64>,
    adj: Vec<Vec<usize>>,
}

impl Residual {
    fn build(net: &FlowNetwork) -> Self {
        let mut r = Residual {
            head: Vec::with_capacity(2 * net.arcs.len()),
            cap: Vec::with_capacity(2 * net.arcs.len()),
            adj: vec![Vec::new(); net.nodes],
        };
        for a in &net.arcs {
            r.adj[a.from].push(r.head.len());
            r.head.push(a.to);
            r.cap.push(a.cap);
            r.adj[a.to].push(r.head.len());
            r.head.push(a.from);
            r.cap.push(0);
        }
        r
    }

    fn levels(&self, s: usize) -> Vec<usize> {
        let mut level = vec![usize::MAX; self.adj.len()];
        level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &id in &self.adj[u] {
                let v = self.head[id];
                if self.cap[id] > 0 && level[v] == usize::MAX {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        level
    }

    fn push(&mut self, u: usize, t: usize, limit: i64, level: &[usize], next: &mut [usize]) -> i64 {
        if u == t {
            return limit;
        }
        while next[u] < self.adj[u].len() {
            let id = self.adj[u][next[u]];
            let v = self.head[id];
            if self.cap[id] > 0 && level[v] == level[u].wrapping_add(1) {
                let got = self.push(v, t, limit.min(self.cap[id]), level, next);
                if got > 0 {
                    self.cap[id] -= got;
                    self.cap[id ^ 1] += got;
                    return got;
                }
            }
            next[u] += 1;
        }
        0
    }
}

/// Maximum s-t flow by Dinic's blocking-flow algorithm.
pub fn max_flow(net: &FlowNetwork) -> FlowResult {
    let mut res = Residual::build(net);
    let (s, t) = (net.source, net.sink);
    let mut value = 0;
    loop {
        let level = res.levels(s);
        if level[t] == usize::MAX {
            break;
        }
        let mut next = vec![0; net.nodes];
        loop {
            let f = res.push(s, t, i64::MAX, &level, &mut next);
            if f == 0 {
                break;
            }
            value += f;
        }
    }
    let source_side: Vec<bool> = res.levels(s).iter().map(|&l| l != usize::MAX).collect();
    let flow: Vec<i64> = (0..net.arcs.len()).map(|i| res.cap[2 * i + 1]).collect();
    let cut_capacity = net
        .arcs
        .iter()
        .filter(|a| source_side[a.from] && !source_side[a.to])
        .map(|a| a.cap)
        .sum();
    debug_assert_eq!(cut_capacity, value);
    FlowResult { value, flow, source_side, cut_capacity }
}

/// Checks capacity bounds and conservation at every internal node.
pub fn check_flow(net: &FlowNetwork, flow: &[i64]) -> bool {
    if flow.len() != net.arcs.len() {
        return false;
    }
    let mut balance = vec![0i64; net.nodes];
    for (a, &f) in net.arcs.iter().zip(flow) {
        if f < 0 || f > a.cap {
            return false;
        }
        balance[a.from] -= f;
        balance[a.to] += f;
    }
    (0..net.nodes).all(|v| v == net.source || v == net.sink || balance[v] == 0)
}
