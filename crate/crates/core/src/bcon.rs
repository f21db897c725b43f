//! Back-connectivity: how many vertex-disjoint qualifying paths leave a
//! vertex, exactly and via a shortest-path relaxation.
//!
//! A path from `u` qualifies when its internal vertices precede `u` and its
//! endpoint does not (the same condition as reach membership). `exact_bcon`
//! counts the largest set of such paths, pairwise disjoint aside from `u`.
//! `estimated_bcon` restricts to shortest qualifying paths, which reduces
//! to unit-capacity max flow on a level DAG: edges only join consecutive
//! BFS layers, so every root-to-sink route is necessarily a shortest
//! qualifying path of length at most the radius. The estimate never
//! exceeds the exact value, and a longer detour really can free up an
//! extra disjoint path (see the fixture in the tests).

use thiserror::Error;

use crate::graph::{Graph, VertexId};
use crate::order::PrefixOrder;

/// Default cap on enumerated qualifying paths in [`exact_bcon`].
pub const DEFAULT_PATH_CAP: usize = 200_000;

#[derive(Debug, Error)]
pub enum BconError {
    #[error("graph too large for exact back-connectivity (n = {0}, limit 128)")]
    TooLarge(usize),
    #[error("qualifying path count exceeds the cap ({count} > {cap})")]
    PathCapExceeded { count: usize, cap: usize },
}

/// Level graph of shortest qualifying paths out of a root vertex.
///
/// Node 0 is the root. Internal nodes are predecessors of the root on some
/// root-to-sink route; sink nodes are reach members at their minimal depth.
/// Every internal node lies on at least one root-to-sink path; useless
/// branches are pruned during construction.
#[derive(Debug, Clone)]
pub struct LevelDag {
    root: VertexId,
    radius: usize,
    node_vertex: Vec<VertexId>,
    node_layer: Vec<usize>,
    /// Node indices at or above this are sinks.
    first_sink: usize,
    out: Vec<Vec<usize>>,
}

impl LevelDag {
    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Sink vertices with their depth, ascending by vertex.
    pub fn sinks(&self) -> Vec<(VertexId, usize)> {
        let mut out: Vec<_> = (self.first_sink..self.node_vertex.len())
            .map(|i| (self.node_vertex[i], self.node_layer[i]))
            .collect();
        out.sort_unstable();
        out
    }

    /// Surviving internal vertices with their layer, ascending by vertex.
    pub fn internals(&self) -> Vec<(VertexId, usize)> {
        let mut out: Vec<_> = (1..self.first_sink)
            .map(|i| (self.node_vertex[i], self.node_layer[i]))
            .collect();
        out.sort_unstable();
        out
    }

    /// Human-readable layer listing, one line per layer.
    pub fn dump(&self) -> String {
        use std::fmt::Write as _;
        let mut lines = format!("root {}\n", self.root);
        for layer in 1..=self.radius {
            let ints: Vec<_> =
                self.internals().into_iter().filter(|&(_, l)| l == layer).map(|(v, _)| v).collect();
            let sinks: Vec<_> =
                self.sinks().into_iter().filter(|&(_, l)| l == layer).map(|(v, _)| v).collect();
            writeln!(lines, "layer {layer}: internals {ints:?} sinks {sinks:?}").unwrap();
        }
        lines
    }

    /// Maximum number of root-to-sink paths, vertex-disjoint aside from the
    /// root: unit-capacity max flow with internal nodes split in two and
    /// capacity-one edges into a super-sink (endpoints are disjoint too).
    pub fn max_disjoint_paths(&self) -> usize {
        let n_internal = self.first_sink - 1;
        let n_sink = self.node_vertex.len() - self.first_sink;
        if n_sink == 0 {
            return 0;
        }
        // Flow node ids: 0 source; internal k has in 1+2k and out 2+2k;
        // sink j is 1+2*n_internal+j; super-sink last.
        let sink_base = 1 + 2 * n_internal;
        let t = sink_base + n_sink;
        let mut net = FlowNetwork::new(t + 1);
        let flow_in = |node: usize| -> usize {
            if node == 0 {
                0
            } else if node < self.first_sink {
                1 + 2 * (node - 1)
            } else {
                sink_base + (node - self.first_sink)
            }
        };
        for k in 0..n_internal {
            net.add_edge(1 + 2 * k, 2 + 2 * k, 1);
        }
        for j in 0..n_sink {
            net.add_edge(sink_base + j, t, 1);
        }
        for node in 0..self.first_sink {
            let from = if node == 0 { 0 } else { 2 + 2 * (node - 1) };
            for &s in &self.out[node] {
                net.add_edge(from, flow_in(s), 1);
            }
        }
        net.max_flow(0, t)
    }
}

/// Builds the level DAG of shortest qualifying paths from `u` at radius
/// `r`. Internal candidates appear at their BFS layer, sinks at their
/// minimal depth; only consecutive-layer edges are kept, and internals
/// from which no sink is reachable are pruned.
pub fn build_level_dag(g: &Graph, sigma: &PrefixOrder, u: VertexId, r: usize) -> LevelDag {
    let disc = g.bfs_layers(u, |w| sigma.precedes(w, u), r);
    // Preliminary nodes: vertex -> candidate node id.
    let mut internals = Vec::new();
    let mut sinks = Vec::new();
    for v in g.vertices() {
        if v == u {
            continue;
        }
        if let Some(layer) = disc[v] {
            if sigma.precedes(v, u) {
                // An internal at layer r cannot lead to a sink within r.
                if layer < r {
                    internals.push((v, layer));
                }
            } else {
                sinks.push((v, layer));
            }
        }
    }
    // Node ids must ascend by layer so the reverse usefulness sweep below
    // sees every node after all of its successors.
    internals.sort_unstable_by_key(|&(v, l)| (l, v));
    let mut node_of = vec![usize::MAX; g.n()];
    let mut node_vertex = vec![u];
    let mut node_layer = vec![0usize];
    for &(v, l) in &internals {
        node_of[v] = node_vertex.len();
        node_vertex.push(v);
        node_layer.push(l);
    }
    let first_sink = node_vertex.len();
    for &(v, l) in &sinks {
        node_of[v] = node_vertex.len();
        node_vertex.push(v);
        node_layer.push(l);
    }
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); node_vertex.len()];
    for node in 0..first_sink {
        let v = node_vertex[node];
        let layer = node_layer[node];
        for &x in g.neighbors(v) {
            if x != u && node_of[x] != usize::MAX && node_layer[node_of[x]] == layer + 1 {
                out[node].push(node_of[x]);
            }
        }
    }
    // Prune internals with no sink below them: reverse reachability from
    // the sinks.
    let mut useful = vec![false; node_vertex.len()];
    useful[first_sink..].fill(true);
    // Internal node ids ascend by layer and edges only point one layer
    // down, so a reverse sweep settles usefulness in one pass.
    for node in (0..first_sink).rev() {
        if out[node].iter().any(|&s| useful[s]) {
            useful[node] = true;
        }
    }
    useful[0] = true;
    let keep: Vec<usize> = (0..node_vertex.len()).filter(|&i| useful[i]).collect();
    let mut remap = vec![usize::MAX; node_vertex.len()];
    for (new, &old) in keep.iter().enumerate() {
        remap[old] = new;
    }
    let new_first_sink = keep.iter().filter(|&&i| i < first_sink).count();
    LevelDag {
        root: u,
        radius: r,
        node_vertex: keep.iter().map(|&i| node_vertex[i]).collect(),
        node_layer: keep.iter().map(|&i| node_layer[i]).collect(),
        first_sink: new_first_sink,
        out: keep
            .iter()
            .map(|&i| {
                out[i].iter().filter(|&&s| useful[s]).map(|&s| remap[s]).collect::<Vec<_>>()
            })
            .collect(),
    }
}

/// Shortest-path back-connectivity: the max-flow value of the level DAG.
pub fn estimated_bcon(g: &Graph, sigma: &PrefixOrder, u: VertexId, r: usize) -> usize {
    build_level_dag(g, sigma, u, r).max_disjoint_paths()
}

/// Exact back-connectivity: enumerates every qualifying path of length at
/// most `r` out of `u` (not just shortest ones) and packs a maximum
/// vertex-disjoint subset by branch and bound.
pub fn exact_bcon(
    g: &Graph,
    sigma: &PrefixOrder,
    u: VertexId,
    r: usize,
) -> Result<usize, BconError> {
    exact_bcon_with_cap(g, sigma, u, r, DEFAULT_PATH_CAP)
}

/// [`exact_bcon`] with an explicit cap on the number of enumerated paths.
pub fn exact_bcon_with_cap(
    g: &Graph,
    sigma: &PrefixOrder,
    u: VertexId,
    r: usize,
    cap: usize,
) -> Result<usize, BconError> {
    if g.n() > 128 {
        return Err(BconError::TooLarge(g.n()));
    }
    let mut masks: Vec<u128> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut stack_mask = 0u128;
    let walk = PathWalk { g, sigma, u, r };
    enumerate_paths(&walk, u, 0, &mut stack_mask, &mut |mask| {
        if seen.insert(mask) {
            masks.push(mask);
        }
        if masks.len() > cap {
            return Err(BconError::PathCapExceeded { count: masks.len(), cap });
        }
        Ok(())
    })?;
    // Fewer-vertex paths first tends to find strong packings early, which
    // tightens the bound for the include/exclude search.
    masks.sort_unstable_by_key(|m| m.count_ones());
    let mut best = 0;
    pack(&masks, 0, 0, 0, &mut best);
    Ok(best)
}

/// The admissibility of a specific total order: the largest exact
/// back-connectivity over all vertices.
pub fn adm_of_order(g: &Graph, sigma: &PrefixOrder, r: usize) -> Result<usize, BconError> {
    debug_assert!(sigma.is_total(), "admissibility of an order needs a total order");
    let mut worst = 0;
    for u in g.vertices() {
        worst = worst.max(exact_bcon(g, sigma, u, r)?);
    }
    Ok(worst)
}

/// Fixed inputs of one path enumeration: the walk always starts at `u`
/// and may use at most `r` edges.
struct PathWalk<'a> {
    g: &'a Graph,
    sigma: &'a PrefixOrder,
    u: VertexId,
    r: usize,
}

fn enumerate_paths(
    walk: &PathWalk,
    cur: VertexId,
    len: usize,
    mask: &mut u128,
    record: &mut impl FnMut(u128) -> Result<(), BconError>,
) -> Result<(), BconError> {
    for &x in walk.g.neighbors(cur) {
        if x == walk.u || *mask & (1 << x) != 0 {
            continue;
        }
        let step = len + 1;
        if !walk.sigma.precedes(x, walk.u) {
            // Endpoint: the path stops here (a non-predecessor can never be
            // internal).
            if step <= walk.r {
                record(*mask | (1 << x))?;
            }
        } else if step < walk.r {
            *mask |= 1 << x;
            enumerate_paths(walk, x, step, mask, record)?;
            *mask &= !(1u128 << x);
        }
    }
    Ok(())
}

fn pack(masks: &[u128], i: usize, used: u128, count: usize, best: &mut usize) {
    if count > *best {
        *best = count;
    }
    if i == masks.len() || count + (masks.len() - i) <= *best {
        return;
    }
    if masks[i] & used == 0 {
        pack(masks, i + 1, used | masks[i], count + 1, best);
    }
    pack(masks, i + 1, used, count, best);
}

/// Unit-style max flow by repeated augmenting paths (BFS in the residual
/// graph). Capacities here are 0/1 and path counts are tiny, so this is
/// all the machinery the level DAG needs.
struct FlowNetwork {
    // (to, capacity, index of reverse edge)
    edges: Vec<Vec<(usize, u32, usize)>>,
}

impl FlowNetwork {
    fn new(n: usize) -> Self {
        FlowNetwork { edges: vec![Vec::new(); n] }
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: u32) {
        let rev_from = self.edges[to].len();
        let rev_to = self.edges[from].len();
        self.edges[from].push((to, cap, rev_from));
        self.edges[to].push((from, 0, rev_to));
    }

    fn max_flow(&mut self, s: usize, t: usize) -> usize {
        let mut flow = 0;
        loop {
            let mut prev: Vec<Option<(usize, usize)>> = vec![None; self.edges.len()];
            let mut queue = std::collections::VecDeque::from([s]);
            'bfs: while let Some(v) = queue.pop_front() {
                for (idx, &(to, cap, _)) in self.edges[v].iter().enumerate() {
                    if cap > 0 && to != s && prev[to].is_none() {
                        prev[to] = Some((v, idx));
                        if to == t {
                            break 'bfs;
                        }
                        queue.push_back(to);
                    }
                }
            }
            if prev[t].is_none() {
                return flow;
            }
            let mut v = t;
            while v != s {
                let (from, idx) = prev[v].unwrap();
                let (_, _, rev) = self.edges[from][idx];
                self.edges[from][idx].1 -= 1;
                self.edges[v][rev].1 += 1;
                v = from;
            }
            flow += 1;
        }
    }
}
