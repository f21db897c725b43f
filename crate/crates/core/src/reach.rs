//! Reachability along an order: `reach` and `wreach` sets, and whole-order
//! evaluation.
//!
//! A vertex `v` is in `reach_r(u)` when some u-v path of length at most `r`
//! has all internal vertices before `u` in the order while `v` itself is
//! not before `u`. In `wreach_r(u)` the internal vertices only need to be
//! before the endpoint `v`. Orders read left to right: a vertex reaches to
//! the right through vertices on its left, and is never reachable from
//! itself. The two sets coincide at `r = 1` (both are the neighbors not
//! before `u`), and `reach` is always contained in `wreach`.
//!
//! Both notions are defined against prefix orders. For an unordered `u`
//! under a strict prefix, every placed vertex precedes `u`, so endpoints
//! are necessarily unordered vertices; this is intended behavior, used by
//! the greedy ordering to score unplaced vertices.

use serde_json::{json, Map, Value};

use crate::graph::{Graph, VertexId};
use crate::order::{OrderError, PrefixOrder};

/// Vertices reachable from `u` within `r` steps through predecessors of
/// `u`, as `(v, d_v)` pairs sorted by vertex, where `d_v` is the least `i`
/// such that `v` is `i`-reachable. `u` may be placed or unordered.
pub fn reach_set(
    g: &Graph,
    sigma: &PrefixOrder,
    u: VertexId,
    r: usize,
) -> Vec<(VertexId, usize)> {
    let layers = g.bfs_layers(u, |w| sigma.precedes(w, u), r);
    let mut out = Vec::new();
    for v in g.vertices() {
        if v == u {
            continue;
        }
        if let Some(d) = layers[v] {
            if !sigma.precedes(v, u) {
                out.push((v, d));
            }
        }
    }
    out
}

/// Vertices weakly reachable from `u` within `r` steps, sorted. A target
/// `v` qualifies when a backward search from `v` through the predecessors
/// of `v` hits `u` within `r` steps.
pub fn wreach_set(g: &Graph, sigma: &PrefixOrder, u: VertexId, r: usize) -> Vec<VertexId> {
    let mut out = Vec::new();
    for v in g.vertices() {
        if v == u || sigma.precedes(v, u) {
            continue;
        }
        let layers = g.bfs_layers(v, |w| sigma.precedes(w, v), r);
        if layers[u].is_some() {
            out.push(v);
        }
    }
    out
}

/// Per-vertex reach and wreach sets of a total order, plus the order's
/// coloring numbers: `col` is the largest reach set, `wcol` the largest
/// wreach set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachReport {
    pub r: usize,
    pub col: usize,
    pub wcol: usize,
    reach: Vec<Vec<(VertexId, usize)>>,
    wreach: Vec<Vec<VertexId>>,
}

impl ReachReport {
    /// Reach set of `u` as `(v, d_v)` pairs, ascending by vertex.
    pub fn reach_of(&self, u: VertexId) -> &[(VertexId, usize)] {
        &self.reach[u]
    }

    /// Weak reach set of `u`, ascending.
    pub fn wreach_of(&self, u: VertexId) -> &[VertexId] {
        &self.wreach[u]
    }

    /// Minimal reach depth of `v` from `u`; `None` when `v` is not in
    /// `reach_r(u)` (depths are kept only for members).
    pub fn reach_distance(&self, u: VertexId, v: VertexId) -> Option<usize> {
        self.reach[u]
            .binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| self.reach[u][i].1)
    }

    pub fn n(&self) -> usize {
        self.reach.len()
    }

    /// Stable JSON shape: `{r, col, wcol, reach: {u: [v..]}, wreach: {u: [v..]}}`.
    pub fn to_json(&self) -> Value {
        let mut reach = Map::new();
        let mut wreach = Map::new();
        for u in 0..self.n() {
            reach.insert(
                u.to_string(),
                Value::from(self.reach[u].iter().map(|&(v, _)| v).collect::<Vec<_>>()),
            );
            wreach.insert(u.to_string(), Value::from(self.wreach[u].clone()));
        }
        json!({
            "r": self.r,
            "col": self.col,
            "wcol": self.wcol,
            "reach": Value::Object(reach),
            "wreach": Value::Object(wreach),
        })
    }
}

/// Evaluates a total order: all reach and wreach sets at radius `r` in
/// O(n·m) (one depth-`r` restricted BFS per vertex in each direction).
pub fn evaluate_order(g: &Graph, sigma: &PrefixOrder, r: usize) -> Result<ReachReport, OrderError> {
    if !sigma.is_total() {
        return Err(OrderError::NotTotal { placed: sigma.len(), n: sigma.n() });
    }
    let n = g.n();
    let mut reach = Vec::with_capacity(n);
    for u in g.vertices() {
        reach.push(reach_set(g, sigma, u, r));
    }
    let mut wreach: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for v in g.vertices() {
        // Backward pass: every u before v hit within r steps through
        // predecessors of v gains v as a weak reach member. The outer loop
        // ascends in v, so each wreach list stays sorted.
        let layers = g.bfs_layers(v, |w| sigma.precedes(w, v), r);
        for u in g.vertices() {
            if layers[u].is_some() && sigma.precedes(u, v) {
                wreach[u].push(v);
            }
        }
    }
    let col = reach.iter().map(Vec::len).max().unwrap_or(0);
    let wcol = wreach.iter().map(Vec::len).max().unwrap_or(0);
    Ok(ReachReport { r, col, wcol, reach, wreach })
}
