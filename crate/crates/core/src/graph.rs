//! Simple undirected graphs on dense vertex ids `0..n`.
//!
//! Parallel edges and self-loops are rejected everywhere: all quantities
//! downstream (reach sets, disjoint path counts) are defined on simple
//! graphs, and a self-loop would make a vertex its own neighbor, which the
//! reachability definitions explicitly exclude.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

/// Dense vertex index, valid against the owning graph's vertex count.
pub type VertexId = usize;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("line {line}: {msg}")]
    MalformedLine { line: usize, msg: String },
    #[error("vertex id {id} out of range for n = {n}")]
    IdOutOfRange { id: usize, n: usize },
    #[error("self-loop at vertex {0} is not allowed")]
    SelfLoop(VertexId),
}

/// Input/output encodings understood by [`Graph::parse`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    /// `p edge n m` header, `e u v` lines, 1-based ids, `c` comments.
    Dimacs,
    /// One `u v` pair per line, 0-based ids, `#` comments, n inferred.
    EdgeList,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<VertexId>>,
    m: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    /// Builds a graph from an edge list, rejecting out-of-range ids and
    /// self-loops. Duplicate edges collapse silently.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::IdOutOfRange { id: u, n });
            }
            if v >= n {
                return Err(GraphError::IdOutOfRange { id: v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            set.insert((u.min(v), u.max(v)));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &set {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { adj, m: set.len() })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, u: VertexId) -> usize {
        self.adj[u].len()
    }

    /// Neighbors of `u` in ascending order.
    pub fn neighbors(&self, u: VertexId) -> &[VertexId] {
        &self.adj[u]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.n()
    }

    /// All edges as `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.m);
        for u in self.vertices() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn parse(text: &str, format: GraphFormat) -> Result<Self, GraphError> {
        match format {
            GraphFormat::Dimacs => parse_dimacs(text),
            GraphFormat::EdgeList => parse_edge_list(text),
        }
    }

    /// Guesses the format: a `p edge` header anywhere means DIMACS.
    pub fn parse_auto(text: &str) -> Result<Self, GraphError> {
        let is_dimacs = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('c') && !l.starts_with('#'))
            .is_some_and(|l| l.starts_with("p "));
        if is_dimacs {
            parse_dimacs(text)
        } else {
            parse_edge_list(text)
        }
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p edge {} {}\n", self.n(), self.m());
        for (u, v) in self.edges() {
            writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
        }
        out
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            writeln!(out, "{} {}", u, v).unwrap();
        }
        out
    }

    /// Returns a copy with an `ell`-subdivided edge added between `u` and
    /// `v`: a fresh path `u, s_1, ..., s_ell, v`. The new internal vertices
    /// get ids `n..n+ell` and are returned in path order. With `ell = 0`
    /// this adds the plain edge `uv` (idempotent if it already exists).
    /// Repeated calls create vertex-disjoint parallel paths, never parallel
    /// edges.
    pub fn subdivide_edge(
        &self,
        u: VertexId,
        v: VertexId,
        ell: usize,
    ) -> Result<(Graph, Vec<VertexId>), GraphError> {
        let n = self.n();
        if u >= n {
            return Err(GraphError::IdOutOfRange { id: u, n });
        }
        if v >= n {
            return Err(GraphError::IdOutOfRange { id: v, n });
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let mut edges = self.edges();
        let fresh: Vec<VertexId> = (n..n + ell).collect();
        if ell == 0 {
            edges.push((u, v));
        } else {
            edges.push((u, fresh[0]));
            for w in fresh.windows(2) {
                edges.push((w[0], w[1]));
            }
            edges.push((fresh[ell - 1], v));
        }
        let g = Graph::from_edges(n + ell, &edges)?;
        Ok((g, fresh))
    }

    /// Layered BFS from `root` where only vertices satisfying `allowed` are
    /// expanded. Vertices failing the predicate may still be discovered (as
    /// frontier endpoints) but contribute no further edges; the root itself
    /// is always expanded. `layer[w]` is the shortest length of a root-`w`
    /// path whose internal vertices all satisfy `allowed`, if that length is
    /// at most `max_depth`.
    pub fn bfs_layers<F: Fn(VertexId) -> bool>(
        &self,
        root: VertexId,
        allowed: F,
        max_depth: usize,
    ) -> Vec<Option<usize>> {
        let mut layer = vec![None; self.n()];
        layer[root] = Some(0);
        let mut frontier = vec![root];
        let mut depth = 0;
        while !frontier.is_empty() && depth < max_depth {
            depth += 1;
            let mut next = Vec::new();
            for &w in &frontier {
                for &x in self.neighbors(w) {
                    if layer[x].is_none() {
                        layer[x] = Some(depth);
                        if allowed(x) {
                            next.push(x);
                        }
                    }
                }
            }
            frontier = next;
        }
        layer
    }

    /// Classic min-degree peel. Returns the degeneracy and a witness order
    /// (peel sequence, leftmost first) in which every vertex has at most
    /// `degeneracy` neighbors to its right. Ties break on smallest id.
    pub fn degeneracy(&self) -> (usize, Vec<VertexId>) {
        let n = self.n();
        let mut deg: Vec<usize> = self.vertices().map(|u| self.degree(u)).collect();
        let mut buckets: Vec<BTreeSet<VertexId>> = vec![BTreeSet::new(); n + 1];
        for u in self.vertices() {
            buckets[deg[u]].insert(u);
        }
        let mut removed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut degen = 0;
        let mut cur = 0;
        for _ in 0..n {
            while buckets[cur].is_empty() {
                cur += 1;
            }
            let u = *buckets[cur].iter().next().unwrap();
            buckets[cur].remove(&u);
            degen = degen.max(cur);
            removed[u] = true;
            order.push(u);
            for &v in self.neighbors(u) {
                if !removed[v] {
                    buckets[deg[v]].remove(&v);
                    deg[v] -= 1;
                    buckets[deg[v]].insert(v);
                    if deg[v] < cur {
                        cur = deg[v];
                    }
                }
            }
        }
        (degen, order)
    }
}

fn parse_dimacs(text: &str) -> Result<Graph, GraphError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut tok = line.split_ascii_whitespace();
        match tok.next() {
            Some("p") => {
                if n.is_some() {
                    return Err(GraphError::MalformedHeader("duplicate p line".into()));
                }
                if tok.next() != Some("edge") {
                    return Err(GraphError::MalformedHeader(format!(
                        "expected 'p edge n m', got '{line}'"
                    )));
                }
                let nv = tok
                    .next()
                    .and_then(|s| s.parse::<usize>().ok())
                    .ok_or_else(|| GraphError::MalformedHeader(format!("bad vertex count in '{line}'")))?;
                // The declared edge count is informational; files in the
                // wild routinely get it wrong, so only its presence is
                // checked.
                tok.next()
                    .and_then(|s| s.parse::<usize>().ok())
                    .ok_or_else(|| GraphError::MalformedHeader(format!("bad edge count in '{line}'")))?;
                n = Some(nv);
            }
            Some("e") => {
                let n = n.ok_or_else(|| {
                    GraphError::MalformedHeader("edge line before p line".into())
                })?;
                let mut next_id = || -> Result<usize, GraphError> {
                    let id: usize = tok
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or(GraphError::MalformedLine {
                            line: idx + 1,
                            msg: "expected 'e u v'".into(),
                        })?;
                    if id == 0 || id > n {
                        return Err(GraphError::IdOutOfRange { id, n });
                    }
                    Ok(id - 1)
                };
                let u = next_id()?;
                let v = next_id()?;
                edges.push((u, v));
            }
            _ => {
                return Err(GraphError::MalformedLine {
                    line: idx + 1,
                    msg: format!("unrecognized line '{line}'"),
                })
            }
        }
    }
    let n = n.ok_or_else(|| GraphError::MalformedHeader("missing p line".into()))?;
    Graph::from_edges(n, &edges)
}

fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut edges = Vec::new();
    let mut max_id = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_ascii_whitespace().collect();
        if toks.len() != 2 {
            return Err(GraphError::MalformedLine {
                line: idx + 1,
                msg: format!("expected 'u v', got '{line}'"),
            });
        }
        let parse = |s: &str| -> Result<usize, GraphError> {
            s.parse().map_err(|_| GraphError::MalformedLine {
                line: idx + 1,
                msg: format!("bad vertex id '{s}'"),
            })
        };
        let u = parse(toks[0])?;
        let v = parse(toks[1])?;
        max_id = Some(max_id.unwrap_or(0).max(u).max(v));
        edges.push((u, v));
    }
    let n = max_id.map_or(0, |m| m + 1);
    Graph::from_edges(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimacs_path_on_three_vertices() {
        let g = Graph::parse("c a path\np edge 3 2\ne 1 2\ne 2 3\n", GraphFormat::Dimacs).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert!(!g.has_edge(0, 2));
    }

    #[test]
    fn edge_list_duplicates_collapse() {
        let g = Graph::parse("0 1\n1 0 # same edge\n1 2\n", GraphFormat::EdgeList).unwrap();
        assert_eq!((g.n(), g.m()), (3, 2));
    }

    #[test]
    fn self_loop_rejected() {
        assert!(matches!(
            Graph::parse("p edge 2 1\ne 1 1\n", GraphFormat::Dimacs),
            Err(GraphError::SelfLoop(0))
        ));
        assert!(matches!(Graph::from_edges(3, &[(2, 2)]), Err(GraphError::SelfLoop(2))));
    }

    #[test]
    fn malformed_and_out_of_range_inputs() {
        assert!(matches!(
            Graph::parse("p graph 3 1\ne 1 2\n", GraphFormat::Dimacs),
            Err(GraphError::MalformedHeader(_))
        ));
        assert!(matches!(
            Graph::parse("p edge 2 1\ne 1 3\n", GraphFormat::Dimacs),
            Err(GraphError::IdOutOfRange { id: 3, n: 2 })
        ));
        assert!(Graph::parse("0 1 2\n", GraphFormat::EdgeList).is_err());
    }

    #[test]
    fn auto_detection() {
        assert_eq!(Graph::parse_auto("p edge 2 1\ne 1 2\n").unwrap().n(), 2);
        assert_eq!(Graph::parse_auto("# comment\n0 1\n").unwrap().n(), 2);
    }

    #[test]
    fn round_trip_dimacs() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (3, 4), (0, 4)]).unwrap();
        let back = Graph::parse(&g.to_dimacs(), GraphFormat::Dimacs).unwrap();
        assert_eq!(g, back);
        let back = Graph::parse(&g.to_edge_list(), GraphFormat::EdgeList).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn subdivide_grows_counts() {
        let p2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        // ell = 0 on an existing edge is a no-op: a 0-subdivided edge is a
        // plain edge and parallel edges are not representable.
        let (g, fresh) = p2.subdivide_edge(0, 1, 0).unwrap();
        assert!(fresh.is_empty());
        assert_eq!((g.n(), g.m()), (2, 1));

        let two = Graph::new(2);
        let (g, fresh) = two.subdivide_edge(0, 1, 0).unwrap();
        assert!(fresh.is_empty());
        assert_eq!((g.n(), g.m()), (2, 1));

        let (g, fresh) = p2.subdivide_edge(0, 1, 2).unwrap();
        assert_eq!(fresh, vec![2, 3]);
        assert_eq!((g.n(), g.m()), (4, 4));
        assert!(g.has_edge(0, 2) && g.has_edge(2, 3) && g.has_edge(3, 1));

        // Two 1-subdivisions of the same pair give disjoint parallel paths.
        let (g, s1) = p2.subdivide_edge(0, 1, 1).unwrap();
        let (g, s2) = g.subdivide_edge(0, 1, 1).unwrap();
        assert_ne!(s1, s2);
        assert_eq!((g.n(), g.m()), (4, 5));
    }

    #[test]
    fn bfs_layers_respects_allowed() {
        // Star with center 0 and leaves 1..=3.
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let layers = star.bfs_layers(1, |v| v == 0, 2);
        assert_eq!(layers, vec![Some(1), Some(0), Some(2), Some(2)]);
        // Nothing allowed: only direct neighbors appear.
        let layers = star.bfs_layers(1, |_| false, 2);
        assert_eq!(layers, vec![Some(1), Some(0), None, None]);
        // Depth zero never leaves the root.
        let layers = star.bfs_layers(0, |_| true, 0);
        assert_eq!(layers, vec![Some(0), None, None, None]);
    }

    #[test]
    fn degeneracy_of_small_graphs() {
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(p4.degeneracy().0, 1);
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(c5.degeneracy().0, 2);
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let (d, order) = k4.degeneracy();
        assert_eq!(d, 3);
        assert_eq!(order.len(), 4);
        assert_eq!(Graph::new(0).degeneracy(), (0, vec![]));
    }
}
