//! Shared fixtures, definitional oracles, and seeded corpus generators for
//! the integration suites.
//!
//! Everything here recomputes quantities straight from the definitions —
//! exhaustive simple-path enumeration, permutation search, brute-force
//! path packing — deliberately sharing no logic with the library's
//! algorithms, so the two can check each other.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use gencol::{CnfFormula, Graph, Literal, Parameter, PrefixOrder, VertexId};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// The 11-vertex, 15-edge worked example used throughout the suites: a
/// 5-cycle `v0..v4` joined to a path `v4..v10` with chords back to `v0`,
/// `v1`, and `v4`.
pub fn worked_example_graph() -> Graph {
    Graph::from_edges(
        11,
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (0, 4),
            (4, 5),
            (5, 6),
            (6, 7),
            (7, 8),
            (8, 9),
            (9, 10),
            (0, 7),
            (0, 9),
            (1, 6),
            (4, 8),
        ],
    )
    .unwrap()
}

/// Calls `f` on every simple path that starts at `u` and has between 1 and
/// `r` edges. The slice passed to `f` starts with `u` and ends at the
/// path's current endpoint.
pub fn for_each_simple_path(g: &Graph, u: VertexId, r: usize, f: &mut impl FnMut(&[VertexId])) {
    fn extend(
        g: &Graph,
        r: usize,
        path: &mut Vec<VertexId>,
        on_path: &mut Vec<bool>,
        f: &mut impl FnMut(&[VertexId]),
    ) {
        let last = *path.last().unwrap();
        for &w in g.neighbors(last) {
            if on_path[w] {
                continue;
            }
            path.push(w);
            on_path[w] = true;
            f(path);
            if path.len() <= r {
                extend(g, r, path, on_path, f);
            }
            on_path[w] = false;
            path.pop();
        }
    }
    let mut path = vec![u];
    let mut on_path = vec![false; g.n()];
    on_path[u] = true;
    extend(g, r, &mut path, &mut on_path, f);
}

/// Definitional r-reach: endpoints `v` of simple paths from `u` with at
/// most `r` edges, `v` not preceding `u`, and every internal vertex
/// preceding `u`. Maps each endpoint to its minimal qualifying length.
pub fn naive_reach(
    g: &Graph,
    sigma: &PrefixOrder,
    u: VertexId,
    r: usize,
) -> BTreeMap<VertexId, usize> {
    let mut out = BTreeMap::new();
    for_each_simple_path(g, u, r, &mut |path| {
        let v = *path.last().unwrap();
        let internals = &path[1..path.len() - 1];
        if !sigma.precedes(v, u) && internals.iter().all(|&w| sigma.precedes(w, u)) {
            let d = path.len() - 1;
            out.entry(v).and_modify(|e: &mut usize| *e = (*e).min(d)).or_insert(d);
        }
    });
    out
}

/// Definitional weak r-reach: endpoints `v` of simple paths from `u` with
/// at most `r` edges, `v` not preceding `u`, and every internal vertex
/// preceding the endpoint `v`.
pub fn naive_wreach(g: &Graph, sigma: &PrefixOrder, u: VertexId, r: usize) -> BTreeSet<VertexId> {
    let mut out = BTreeSet::new();
    for_each_simple_path(g, u, r, &mut |path| {
        let v = *path.last().unwrap();
        let internals = &path[1..path.len() - 1];
        if !sigma.precedes(v, u) && internals.iter().all(|&w| sigma.precedes(w, v)) {
            out.insert(v);
        }
    });
    out
}

fn path_mask(path: &[VertexId]) -> u64 {
    // Skip the shared origin; packings are vertex-disjoint except there.
    path[1..].iter().fold(0u64, |acc, &w| acc | 1 << w)
}

/// Largest number of pairwise disjoint masks, by branch and bound over the
/// deduplicated, subset-minimal mask list.
fn max_disjoint_masks(masks: &[u64]) -> usize {
    let distinct: BTreeSet<u64> = masks.iter().copied().collect();
    let minimal: Vec<u64> = distinct
        .iter()
        .filter(|&&m| !distinct.iter().any(|&s| s != m && s & m == s))
        .copied()
        .collect();
    fn go(minimal: &[u64], i: usize, used: u64, depth: usize, best: &mut usize) {
        *best = (*best).max(depth);
        if i == minimal.len() || depth + (minimal.len() - i) <= *best {
            return;
        }
        if minimal[i] & used == 0 {
            go(minimal, i + 1, used | minimal[i], depth + 1, best);
        }
        go(minimal, i + 1, used, depth, best);
    }
    let mut best = 0;
    go(&minimal, 0, 0, 0, &mut best);
    best
}

fn qualifying_masks(g: &Graph, sigma: &PrefixOrder, u: VertexId, r: usize) -> Vec<u64> {
    assert!(g.n() <= 64, "mask oracles cover small graphs only");
    let mut masks = Vec::new();
    for_each_simple_path(g, u, r, &mut |path| {
        let v = *path.last().unwrap();
        let internals = &path[1..path.len() - 1];
        if !sigma.precedes(v, u) && internals.iter().all(|&w| sigma.precedes(w, u)) {
            masks.push(path_mask(path));
        }
    });
    masks
}

/// Definitional r-backconnectivity: maximum number of r-qualifying paths
/// from `u` that are vertex-disjoint except at `u`, by exhaustive packing.
pub fn naive_packing(g: &Graph, sigma: &PrefixOrder, u: VertexId, r: usize) -> usize {
    max_disjoint_masks(&qualifying_masks(g, sigma, u, r))
}

/// The same packing restricted to shortest qualifying paths: only paths
/// whose length equals the minimal qualifying length of their endpoint
/// participate.
pub fn naive_shortest_packing(g: &Graph, sigma: &PrefixOrder, u: VertexId, r: usize) -> usize {
    let shortest = naive_reach(g, sigma, u, r);
    let mut masks = Vec::new();
    for_each_simple_path(g, u, r, &mut |path| {
        let v = *path.last().unwrap();
        let internals = &path[1..path.len() - 1];
        if !sigma.precedes(v, u)
            && internals.iter().all(|&w| sigma.precedes(w, u))
            && shortest.get(&v) == Some(&(path.len() - 1))
        {
            masks.push(path_mask(path));
        }
    });
    max_disjoint_masks(&masks)
}

/// Value of a total order under `param` at radius `r`, computed from the
/// definitional sets alone.
pub fn naive_value_of_order(g: &Graph, sigma: &PrefixOrder, r: usize, param: Parameter) -> usize {
    g.vertices()
        .map(|u| match param {
            Parameter::Col => naive_reach(g, sigma, u, r).len(),
            Parameter::Wcol => naive_wreach(g, sigma, u, r).len(),
            Parameter::Adm => naive_packing(g, sigma, u, r),
        })
        .max()
        .unwrap_or(0)
}

/// Minimum of `param` at radius `r` over every permutation of the
/// vertices, by depth-first enumeration.
///
/// Partial orders are cut off once their value already reaches the best
/// complete order found so far. That never changes the minimum: a placed
/// vertex's reach and backconnectivity are fixed the moment it is placed
/// (its predecessor set no longer changes), and weak-reach sets only grow
/// as the prefix extends, so the partial value is a lower bound for every
/// completion.
pub fn oracle_minimum(g: &Graph, r: usize, param: Parameter) -> usize {
    fn dfs(
        g: &Graph,
        r: usize,
        param: Parameter,
        sigma: &mut PrefixOrder,
        running: usize,
        best: &mut usize,
    ) {
        if running >= *best {
            return;
        }
        if sigma.is_total() {
            *best = running;
            return;
        }
        for v in g.vertices() {
            if sigma.is_placed(v) {
                continue;
            }
            sigma.place(v).unwrap();
            let cost = match param {
                Parameter::Col => naive_reach(g, sigma, v, r).len(),
                Parameter::Adm => naive_packing(g, sigma, v, r),
                Parameter::Wcol => {
                    let mut worst = 0;
                    for &u in sigma.placed() {
                        worst = worst.max(naive_wreach(g, sigma, u, r).len());
                        if worst >= *best {
                            break;
                        }
                    }
                    worst
                }
            };
            dfs(g, r, param, sigma, running.max(cost), best);
            sigma.pop();
        }
    }
    if g.n() == 0 {
        return 0;
    }
    let mut best = usize::MAX;
    let mut sigma = PrefixOrder::empty(g.n());
    dfs(g, r, param, &mut sigma, 0, &mut best);
    best
}

/// Erdős–Rényi graph on `n` vertices with edge probability `p`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Seeded corpus of small random graphs, sizes 4..=8, densities cycling
/// through sparse to dense.
pub fn corpus_graphs(seed: u64, count: usize) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(4..=8);
            let p = [0.2, 0.35, 0.5, 0.7][i % 4];
            random_graph(&mut rng, n, p)
        })
        .collect()
}

/// Uniformly random total order on `0..n`.
pub fn random_total_order(rng: &mut ChaCha8Rng, n: usize) -> PrefixOrder {
    let mut order: Vec<VertexId> = (0..n).collect();
    order.shuffle(rng);
    PrefixOrder::total(order).unwrap()
}

/// Random prefix order: a uniformly random subset of the vertices placed
/// in uniformly random order, the rest unplaced.
pub fn random_prefix(rng: &mut ChaCha8Rng, n: usize) -> PrefixOrder {
    let mut order: Vec<VertexId> = (0..n).collect();
    order.shuffle(rng);
    let k = rng.gen_range(0..=n);
    PrefixOrder::from_prefix(n, &order[..k]).unwrap()
}

/// Random formula with clause widths in {2, 3} and every literal occurring
/// at most twice — the shape the width-{2,3} reductions and the normalizer
/// accept. May produce fewer clauses than requested when literal
/// capacities run out.
pub fn random_occ2_formula(rng: &mut ChaCha8Rng, max_vars: u32, max_clauses: usize) -> CnfFormula {
    let n_vars = rng.gen_range(2..=max_vars);
    // remaining[v][0] tracks the positive literal of variable v+1,
    // remaining[v][1] the negated one.
    let mut remaining = vec![[2u8, 2u8]; n_vars as usize];
    let mut clauses = Vec::new();
    for _ in 0..rng.gen_range(1..=max_clauses) {
        let width = if rng.gen_bool(0.5) { 2 } else { 3 };
        let mut avail: Vec<u32> = (1..=n_vars)
            .filter(|&v| remaining[v as usize - 1].iter().any(|&c| c > 0))
            .collect();
        if avail.len() < width {
            break;
        }
        avail.shuffle(rng);
        let mut clause = Vec::with_capacity(width);
        for &v in avail.iter().take(width) {
            let caps = &mut remaining[v as usize - 1];
            let polarity = match (caps[0] > 0, caps[1] > 0) {
                (true, true) => usize::from(rng.gen_bool(0.5)),
                (true, false) => 0,
                _ => 1,
            };
            caps[polarity] -= 1;
            clause.push(if polarity == 0 { v as Literal } else { -(v as Literal) });
        }
        clauses.push(clause);
    }
    CnfFormula::new(n_vars, clauses).unwrap()
}

/// Random Exact 3-SAT formula: every clause has exactly three distinct
/// variables, signs uniform, no occurrence constraint.
pub fn random_exact3_formula(rng: &mut ChaCha8Rng, max_vars: u32, max_clauses: usize) -> CnfFormula {
    let n_vars = rng.gen_range(3..=max_vars);
    let clauses = (0..rng.gen_range(1..=max_clauses))
        .map(|_| {
            let mut vars: Vec<u32> = (1..=n_vars).collect();
            vars.shuffle(rng);
            vars.iter()
                .take(3)
                .map(|&v| if rng.gen_bool(0.5) { v as Literal } else { -(v as Literal) })
                .collect()
        })
        .collect();
    CnfFormula::new(n_vars, clauses).unwrap()
}

/// Random input for the width-padding repair at radius `r`: clause widths
/// mostly `r − 1` or `r`, occasionally thinner and occasionally empty.
pub fn random_repair_input(rng: &mut ChaCha8Rng, r: usize) -> CnfFormula {
    let n_vars = rng.gen_range(1..=6u32);
    let clauses = (0..rng.gen_range(1..=4))
        .map(|_| {
            let width = if rng.gen_bool(0.12) {
                rng.gen_range(0..=1usize)
            } else {
                rng.gen_range(r - 1..=r)
            };
            let width = width.min(n_vars as usize);
            let mut vars: Vec<u32> = (1..=n_vars).collect();
            vars.shuffle(rng);
            vars.iter()
                .take(width)
                .map(|&v| if rng.gen_bool(0.5) { v as Literal } else { -(v as Literal) })
                .collect()
        })
        .collect();
    CnfFormula::new(n_vars, clauses).unwrap()
}
