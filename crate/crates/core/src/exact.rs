//! Exact decision and minimization for col, wcol, and admissibility at a
//! given radius, by branch and bound over prefix extensions.
//!
//! The col and admissibility searches share one engine: the cost a vertex
//! incurs at placement (reach size, respectively exact back-connectivity)
//! is fully determined by the placed *set*, because its path internals
//! must come from the prefix and everything later is symmetric. That also
//! makes a memo of failed placed-sets sound. The wcol search instead
//! tracks one counter per placed vertex (its weak-reach size so far);
//! counters only grow as the prefix extends, so exceeding the threshold
//! prunes, and failed states are memoized by placed set with counter
//! vectors compared pointwise (a state dominates any state with the same
//! set and no smaller counters).
//!
//! "No" is reported only when the search space is exhausted within
//! budget; running out of budget is a separate outcome, never conflated.

use std::collections::{HashMap, HashSet};
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::bcon::{adm_of_order, estimated_bcon, exact_bcon, BconError};
use crate::graph::{Graph, VertexId};
use crate::greedy::bounded_coloring;
use crate::order::PrefixOrder;
use crate::reach::{evaluate_order, reach_set};

/// Default node budget for searches that do not specify one.
pub const DEFAULT_NODE_BUDGET: u64 = 5_000_000;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error(transparent)]
    Bcon(#[from] BconError),
}

/// Resource limits for a single decide call.
#[derive(Debug, Clone)]
pub struct SearchBudget {
    /// Maximum placements attempted (tree nodes), at least 1.
    pub max_nodes: u64,
    pub wall_clock: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: DEFAULT_NODE_BUDGET, wall_clock: None }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SearchOptions {
    pub budget: SearchBudget,
    /// Vertices to try first at every branch point, e.g. a witness from a
    /// looser threshold. Unknown or duplicate ids are ignored.
    pub hint: Option<Vec<VertexId>>,
    /// Restrict the first placed vertex to one representative per
    /// (degree, sorted neighbor degrees) signature class. A cheap
    /// heuristic, not an automorphism check: it can merge vertices that
    /// are not actually equivalent, so exactness audits leave it off
    /// (the default).
    pub first_vertex_symmetry_break: bool,
    /// Worker threads over disjoint first-placement branches. 0 and 1
    /// both mean sequential; parallel runs are deterministic in the
    /// decision value only while the budget does not bind.
    pub threads: usize,
}

/// Outcome of a threshold decision.
#[derive(Debug, Clone)]
pub enum Decision {
    /// A witness order whose evaluated value is at most the threshold
    /// (re-verified before returning).
    Yes(PrefixOrder),
    /// The full space was exhausted: no order meets the threshold.
    No,
    /// The budget ran out before either answer was established.
    BudgetExhausted,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SearchStats {
    /// Placement attempts across the whole call (all threads).
    pub nodes_expanded: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parameter {
    Col,
    Wcol,
    Adm,
}

impl Parameter {
    pub fn as_str(self) -> &'static str {
        match self {
            Parameter::Col => "col",
            Parameter::Wcol => "wcol",
            Parameter::Adm => "adm",
        }
    }
}

impl std::fmt::Display for Parameter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Result of [`minimize`]: either the proven optimum or, when the budget
/// ran out mid-descent, the surviving bracket.
#[derive(Debug, Clone)]
pub enum MinimizeOutcome {
    Exact { value: usize },
    /// `lo` is the degeneracy lower bound, `hi` the best verified value.
    Bracket { lo: usize, hi: usize },
}

#[derive(Debug, Clone)]
pub struct MinimizeResult {
    pub outcome: MinimizeOutcome,
    /// Order achieving the exact value (respectively the bracket's `hi`).
    pub order: PrefixOrder,
    pub stats: SearchStats,
}

/// Is `col_r(G) <= k`?
pub fn decide_col(
    g: &Graph,
    r: usize,
    k: usize,
    opts: &SearchOptions,
) -> Result<(Decision, SearchStats), SearchError> {
    let cost = move |g: &Graph, sigma: &PrefixOrder, u: VertexId| -> Result<usize, SearchError> {
        Ok(reach_set(g, sigma, u, r).len())
    };
    let (decision, stats) = run_set_search(g, r, k, opts, &cost)?;
    if let Decision::Yes(order) = &decision {
        let report = evaluate_order(g, order, r).expect("witness orders are total");
        assert!(report.col <= k, "internal error: col witness exceeds threshold");
    }
    Ok((decision, stats))
}

/// Is `adm_r(G) <= k`?
pub fn decide_adm(
    g: &Graph,
    r: usize,
    k: usize,
    opts: &SearchOptions,
) -> Result<(Decision, SearchStats), SearchError> {
    let cost = move |g: &Graph, sigma: &PrefixOrder, u: VertexId| -> Result<usize, SearchError> {
        // The flow estimate is a lower bound, so it can rule a placement
        // out without enumerating paths.
        if estimated_bcon(g, sigma, u, r) > k {
            return Ok(k + 1);
        }
        Ok(exact_bcon(g, sigma, u, r)?)
    };
    let (decision, stats) = run_set_search(g, r, k, opts, &cost)?;
    if let Decision::Yes(order) = &decision {
        let worst = adm_of_order(g, order, r)?;
        assert!(worst <= k, "internal error: adm witness exceeds threshold");
    }
    Ok((decision, stats))
}

/// Is `wcol_r(G) <= k`?
pub fn decide_wcol(
    g: &Graph,
    r: usize,
    k: usize,
    opts: &SearchOptions,
) -> Result<(Decision, SearchStats), SearchError> {
    assert!(opts.budget.max_nodes >= 1, "budget must be positive");
    let nodes = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    let ctl = Controls::new(&nodes, &stop, &opts.budget);
    let priority = build_priority(g.n(), opts.hint.as_deref());
    let classes = twin_classes(g);
    let first = first_candidates(g, &priority, &classes, opts.first_vertex_symmetry_break);
    let make = || WcolSearch {
        g,
        r,
        k,
        priority: &priority,
        classes: &classes,
        ctl,
        counter: vec![0; g.n()],
        failed: HashMap::new(),
    };
    let decision = orchestrate(g, &make, &first, opts.threads.max(1), &stop)?;
    if let Decision::Yes(order) = &decision {
        let report = evaluate_order(g, order, r).expect("witness orders are total");
        assert!(report.wcol <= k, "internal error: wcol witness exceeds threshold");
    }
    Ok((decision, SearchStats { nodes_expanded: nodes.load(Ordering::Relaxed) }))
}

/// Exact optimum of a parameter by descending threshold search.
///
/// Starts from the greedy order's evaluated value, repeatedly decides
/// `<= best - 1` with the current witness as a warm-start hint, and stops
/// at the degeneracy, which lower-bounds all three parameters at every
/// radius. Each "yes" witness is re-evaluated exactly, so the descent can
/// skip levels. The budget applies to each decide call separately.
pub fn minimize(
    g: &Graph,
    r: usize,
    parameter: Parameter,
    opts: &SearchOptions,
) -> Result<MinimizeResult, SearchError> {
    let greedy = bounded_coloring(g, r);
    let (lo, _) = g.degeneracy();
    let mut best_order = greedy.order;
    let mut best_val = match parameter {
        Parameter::Col => greedy.report.col,
        Parameter::Wcol => greedy.report.wcol,
        Parameter::Adm => adm_of_order(g, &best_order, r)?,
    };
    let mut nodes_expanded = 0;
    let mut bracket = None;
    while best_val > lo {
        let k = best_val - 1;
        let mut sub = opts.clone();
        sub.hint = Some(best_order.placed().to_vec());
        let (decision, stats) = match parameter {
            Parameter::Col => decide_col(g, r, k, &sub)?,
            Parameter::Wcol => decide_wcol(g, r, k, &sub)?,
            Parameter::Adm => decide_adm(g, r, k, &sub)?,
        };
        nodes_expanded += stats.nodes_expanded;
        match decision {
            Decision::Yes(order) => {
                best_val = match parameter {
                    Parameter::Col => evaluate_order(g, &order, r).unwrap().col,
                    Parameter::Wcol => evaluate_order(g, &order, r).unwrap().wcol,
                    Parameter::Adm => adm_of_order(g, &order, r)?,
                };
                best_order = order;
            }
            Decision::No => break,
            Decision::BudgetExhausted => {
                bracket = Some(MinimizeOutcome::Bracket { lo, hi: best_val });
                break;
            }
        }
    }
    let outcome = bracket.unwrap_or(MinimizeOutcome::Exact { value: best_val });
    Ok(MinimizeResult { outcome, order: best_order, stats: SearchStats { nodes_expanded } })
}

/// Admissibility queries in one place: decide a threshold when one is
/// given, otherwise minimize.
#[derive(Debug)]
pub enum AdmOutcome {
    Decision { decision: Decision, stats: SearchStats },
    Minimized(MinimizeResult),
}

pub fn exact_admissibility(
    g: &Graph,
    r: usize,
    threshold: Option<usize>,
    opts: &SearchOptions,
) -> Result<AdmOutcome, SearchError> {
    match threshold {
        Some(k) => {
            let (decision, stats) = decide_adm(g, r, k, opts)?;
            Ok(AdmOutcome::Decision { decision, stats })
        }
        None => Ok(AdmOutcome::Minimized(minimize(g, r, Parameter::Adm, opts)?)),
    }
}

// ---------------------------------------------------------------------
// Search plumbing.

/// Outcome of exploring one branch of the tree.
enum Probe {
    Found(PrefixOrder),
    Fail,
    Exhausted,
}

/// Shared stop conditions, checked once per placement attempt.
#[derive(Clone, Copy)]
struct Controls<'a> {
    nodes: &'a AtomicU64,
    stop: &'a AtomicBool,
    max_nodes: u64,
    deadline: Option<Instant>,
}

impl<'a> Controls<'a> {
    fn new(nodes: &'a AtomicU64, stop: &'a AtomicBool, budget: &SearchBudget) -> Self {
        Controls {
            nodes,
            stop,
            max_nodes: budget.max_nodes,
            deadline: budget.wall_clock.map(|d| Instant::now() + d),
        }
    }

    /// False once the search must wind down (budget, deadline, or a
    /// sibling worker already found a witness).
    fn tick(&self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return false;
        }
        if self.nodes.fetch_add(1, Ordering::Relaxed) + 1 > self.max_nodes {
            return false;
        }
        match self.deadline {
            Some(d) => Instant::now() <= d,
            None => true,
        }
    }
}

trait FirstBranch {
    fn probe(&mut self, first: VertexId) -> Result<Probe, SearchError>;
}

fn build_priority(n: usize, hint: Option<&[VertexId]>) -> Vec<VertexId> {
    let mut priority = Vec::with_capacity(n);
    let mut taken = vec![false; n];
    if let Some(hint) = hint {
        for &v in hint {
            if v < n && !taken[v] {
                taken[v] = true;
                priority.push(v);
            }
        }
    }
    priority.extend((0..n).filter(|&v| !taken[v]));
    priority
}

/// Groups vertices into twin classes: two vertices share a class only if
/// they have identical open neighborhoods, or identical closed
/// neighborhoods. Swapping two such vertices is a graph automorphism, so
/// while both are unplaced, placing one next explores the same orders (up
/// to relabeling) as placing the other; every branch loop therefore tries
/// a single representative per class. This is exact, unlike the opt-in
/// degree-signature heuristic below.
fn twin_classes(g: &Graph) -> Vec<u32> {
    let n = g.n();
    let mut class = vec![u32::MAX; n];
    let mut next = 0u32;
    // Equal neighbor lists (such vertices are necessarily non-adjacent:
    // neither may appear in the shared list).
    let mut by_open: HashMap<&[VertexId], Vec<VertexId>> = HashMap::new();
    for v in g.vertices() {
        by_open.entry(g.neighbors(v)).or_default().push(v);
    }
    for group in by_open.values() {
        if group.len() >= 2 {
            for &v in group {
                class[v] = next;
            }
            next += 1;
        }
    }
    // Equal closed neighborhoods among the rest (necessarily adjacent).
    let mut by_closed: HashMap<Vec<VertexId>, Vec<VertexId>> = HashMap::new();
    for v in g.vertices() {
        if class[v] == u32::MAX {
            let mut key = g.neighbors(v).to_vec();
            key.push(v);
            key.sort_unstable();
            by_closed.entry(key).or_default().push(v);
        }
    }
    for group in by_closed.values() {
        if group.len() >= 2 {
            for &v in group {
                class[v] = next;
            }
            next += 1;
        }
    }
    for v in g.vertices() {
        if class[v] == u32::MAX {
            class[v] = next;
            next += 1;
        }
    }
    class
}

fn first_candidates(
    g: &Graph,
    priority: &[VertexId],
    classes: &[u32],
    symmetry_break: bool,
) -> Vec<VertexId> {
    let mut seen = vec![false; g.n().max(1)];
    let mut first: Vec<VertexId> = priority
        .iter()
        .copied()
        .filter(|&v| !std::mem::replace(&mut seen[classes[v] as usize], true))
        .collect();
    if symmetry_break {
        let mut representative: HashMap<(usize, Vec<usize>), VertexId> = HashMap::new();
        for v in g.vertices() {
            let mut sig: Vec<usize> = g.neighbors(v).iter().map(|&w| g.degree(w)).collect();
            sig.sort_unstable();
            representative.entry((g.degree(v), sig)).or_insert(v);
        }
        let keep: HashSet<VertexId> = representative.into_values().collect();
        first.retain(|v| keep.contains(v));
    }
    first
}

/// Drives first-placement branches sequentially or across workers. Any
/// witness wins; "no" requires every branch to fail cleanly.
fn orchestrate<B, F>(
    g: &Graph,
    make: &F,
    first: &[VertexId],
    threads: usize,
    stop: &AtomicBool,
) -> Result<Decision, SearchError>
where
    B: FirstBranch,
    F: Fn() -> B + Sync,
{
    if g.n() == 0 {
        // The empty order is total and every maximum over no vertices is
        // zero, below any threshold.
        return Ok(Decision::Yes(PrefixOrder::empty(0)));
    }
    if threads <= 1 || first.len() <= 1 {
        let mut branch = make();
        let mut exhausted = false;
        for &c in first {
            match branch.probe(c)? {
                Probe::Found(order) => return Ok(Decision::Yes(order)),
                Probe::Exhausted => exhausted = true,
                Probe::Fail => {}
            }
        }
        return Ok(if exhausted { Decision::BudgetExhausted } else { Decision::No });
    }
    let next = AtomicUsize::new(0);
    let results: Vec<Mutex<Option<Result<Probe, SearchError>>>> =
        (0..first.len()).map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..threads.min(first.len()) {
            scope.spawn(|| {
                let mut branch = make();
                loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= first.len() || stop.load(Ordering::Relaxed) {
                        break;
                    }
                    let out = branch.probe(first[i]);
                    if matches!(out, Ok(Probe::Found(_)) | Err(_)) {
                        stop.store(true, Ordering::Relaxed);
                    }
                    *results[i].lock().unwrap() = Some(out);
                }
            });
        }
    });
    let mut exhausted = false;
    let mut error = None;
    let mut witness = None;
    for slot in results {
        match slot.into_inner().unwrap() {
            Some(Ok(Probe::Found(order))) => {
                if witness.is_none() {
                    witness = Some(order);
                }
            }
            Some(Ok(Probe::Fail)) => {}
            // Unprocessed slots only happen after a stop, i.e. alongside
            // a witness or an error.
            Some(Ok(Probe::Exhausted)) | None => exhausted = true,
            Some(Err(e)) => error = error.or(Some(e)),
        }
    }
    if let Some(order) = witness {
        return Ok(Decision::Yes(order));
    }
    if let Some(e) = error {
        return Err(e);
    }
    Ok(if exhausted { Decision::BudgetExhausted } else { Decision::No })
}

fn bitset_words(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

// ---------------------------------------------------------------------
// Set-determined search (col and adm).

struct SetSearch<'a, C> {
    g: &'a Graph,
    k: usize,
    priority: &'a [VertexId],
    /// Twin class of each vertex; one representative per class is tried
    /// at each branch point.
    classes: &'a [u32],
    cost: &'a C,
    ctl: Controls<'a>,
    /// Placed sets from which no valid completion exists.
    failed: HashSet<Vec<u64>>,
}

fn run_set_search<C>(
    g: &Graph,
    _r: usize,
    k: usize,
    opts: &SearchOptions,
    cost: &C,
) -> Result<(Decision, SearchStats), SearchError>
where
    C: Fn(&Graph, &PrefixOrder, VertexId) -> Result<usize, SearchError> + Sync,
{
    assert!(opts.budget.max_nodes >= 1, "budget must be positive");
    let nodes = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    let ctl = Controls::new(&nodes, &stop, &opts.budget);
    let priority = build_priority(g.n(), opts.hint.as_deref());
    let classes = twin_classes(g);
    let first = first_candidates(g, &priority, &classes, opts.first_vertex_symmetry_break);
    let make = || SetSearch {
        g,
        k,
        priority: &priority,
        classes: &classes,
        cost,
        ctl,
        failed: HashSet::new(),
    };
    let decision = orchestrate(g, &make, &first, opts.threads.max(1), &stop)?;
    Ok((decision, SearchStats { nodes_expanded: nodes.load(Ordering::Relaxed) }))
}

impl<C> SetSearch<'_, C>
where
    C: Fn(&Graph, &PrefixOrder, VertexId) -> Result<usize, SearchError>,
{
    fn dfs(&mut self, sigma: &mut PrefixOrder, key: &mut Vec<u64>) -> Result<Probe, SearchError> {
        if sigma.is_total() {
            return Ok(Probe::Found(sigma.clone()));
        }
        if self.failed.contains(key.as_slice()) {
            return Ok(Probe::Fail);
        }
        let mut tried = vec![false; self.g.n()];
        for idx in 0..self.priority.len() {
            let u = self.priority[idx];
            if sigma.is_placed(u) || std::mem::replace(&mut tried[self.classes[u] as usize], true)
            {
                continue;
            }
            if !self.ctl.tick() {
                return Ok(Probe::Exhausted);
            }
            sigma.place(u).expect("candidate is unplaced");
            let cost = (self.cost)(self.g, sigma, u)?;
            let mut outcome = Probe::Fail;
            if cost <= self.k {
                key[u / 64] |= 1 << (u % 64);
                outcome = self.dfs(sigma, key)?;
                key[u / 64] &= !(1u64 << (u % 64));
            }
            sigma.pop();
            match outcome {
                Probe::Found(order) => return Ok(Probe::Found(order)),
                // The budget is global: siblings would stop immediately.
                Probe::Exhausted => return Ok(Probe::Exhausted),
                Probe::Fail => {}
            }
        }
        self.failed.insert(key.clone());
        Ok(Probe::Fail)
    }
}

impl<C> FirstBranch for SetSearch<'_, C>
where
    C: Fn(&Graph, &PrefixOrder, VertexId) -> Result<usize, SearchError>,
{
    fn probe(&mut self, first: VertexId) -> Result<Probe, SearchError> {
        let mut sigma = PrefixOrder::empty(self.g.n());
        let mut key = vec![0u64; bitset_words(self.g.n())];
        if !self.ctl.tick() {
            return Ok(Probe::Exhausted);
        }
        sigma.place(first).expect("fresh order");
        if (self.cost)(self.g, &sigma, first)? > self.k {
            return Ok(Probe::Fail);
        }
        key[first / 64] |= 1 << (first % 64);
        self.dfs(&mut sigma, &mut key)
    }
}

// ---------------------------------------------------------------------
// Counter-based search (wcol).

struct WcolSearch<'a> {
    g: &'a Graph,
    r: usize,
    k: usize,
    priority: &'a [VertexId],
    /// Twin class of each vertex; one representative per class is tried
    /// at each branch point.
    classes: &'a [u32],
    ctl: Controls<'a>,
    /// For each placed u: members of wreach(u) determined so far. Every
    /// later placement can only add members, never remove them.
    counter: Vec<u32>,
    /// Failed states: placed set -> counter snapshots (ascending vertex
    /// order) that had no completion. A snapshot prunes any state with
    /// the same set and pointwise-greater-or-equal counters.
    failed: HashMap<Vec<u64>, Vec<Vec<u32>>>,
}

impl WcolSearch<'_> {
    /// Applies the counter increments of placing `u` (already placed in
    /// `sigma`): every placed vertex within distance `r` of `u` through
    /// placed internals gains `u` as a weak-reach member. Returns whether
    /// the state stays viable plus the bumped vertices for rollback.
    fn apply_placement(&mut self, sigma: &PrefixOrder, u: VertexId) -> (bool, Vec<VertexId>) {
        let layers = self.g.bfs_layers(u, |w| sigma.is_placed(w), self.r);
        let mut bumped = Vec::new();
        let mut ok = true;
        for w in self.g.vertices() {
            if w != u && sigma.is_placed(w) && layers[w].is_some() {
                self.counter[w] += 1;
                bumped.push(w);
                if self.counter[w] as usize > self.k {
                    ok = false;
                }
            }
        }
        if ok {
            // Unordered vertices already connected through the prefix are
            // guaranteed future weak-reach members: qualifying internals
            // only need to precede the endpoint, and everything placed now
            // precedes everything placed later.
            ok = self.certain_within_k(sigma, u, &layers);
        }
        if ok {
            for &w in &bumped {
                let lay = self.g.bfs_layers(w, |x| sigma.is_placed(x), self.r);
                if !self.certain_within_k(sigma, w, &lay) {
                    ok = false;
                    break;
                }
            }
        }
        (ok, bumped)
    }

    fn certain_within_k(
        &self,
        sigma: &PrefixOrder,
        w: VertexId,
        layers: &[Option<usize>],
    ) -> bool {
        let mut certain = self.counter[w] as usize;
        for v in self.g.vertices() {
            if !sigma.is_placed(v) && layers[v].is_some() {
                certain += 1;
            }
        }
        certain <= self.k
    }

    fn snapshot(&self, sigma: &PrefixOrder) -> Vec<u32> {
        let mut placed: Vec<VertexId> = sigma.placed().to_vec();
        placed.sort_unstable();
        placed.into_iter().map(|v| self.counter[v]).collect()
    }

    fn dominated(&self, key: &[u64], snap: &[u32]) -> bool {
        match self.failed.get(key) {
            None => false,
            Some(snaps) => {
                snaps.iter().any(|f| f.iter().zip(snap).all(|(a, b)| a <= b))
            }
        }
    }

    fn dfs(&mut self, sigma: &mut PrefixOrder, key: &mut Vec<u64>) -> Probe {
        if sigma.is_total() {
            return Probe::Found(sigma.clone());
        }
        let snap = self.snapshot(sigma);
        if self.dominated(key, &snap) {
            return Probe::Fail;
        }
        let mut tried = vec![false; self.g.n()];
        for idx in 0..self.priority.len() {
            let u = self.priority[idx];
            if sigma.is_placed(u) || std::mem::replace(&mut tried[self.classes[u] as usize], true)
            {
                continue;
            }
            if !self.ctl.tick() {
                return Probe::Exhausted;
            }
            sigma.place(u).expect("candidate is unplaced");
            let (ok, bumped) = self.apply_placement(sigma, u);
            let mut outcome = Probe::Fail;
            if ok {
                key[u / 64] |= 1 << (u % 64);
                outcome = self.dfs(sigma, key);
                key[u / 64] &= !(1u64 << (u % 64));
            }
            for &w in &bumped {
                self.counter[w] -= 1;
            }
            sigma.pop();
            match outcome {
                Probe::Found(order) => return Probe::Found(order),
                Probe::Exhausted => return Probe::Exhausted,
                Probe::Fail => {}
            }
        }
        let entry = self.failed.entry(key.clone()).or_default();
        // Keep a minimal antichain: drop snapshots the new one refines.
        entry.retain(|old| !old.iter().zip(&snap).all(|(a, b)| a >= b));
        entry.push(snap);
        Probe::Fail
    }
}

impl FirstBranch for WcolSearch<'_> {
    fn probe(&mut self, first: VertexId) -> Result<Probe, SearchError> {
        let mut sigma = PrefixOrder::empty(self.g.n());
        let mut key = vec![0u64; bitset_words(self.g.n())];
        if !self.ctl.tick() {
            return Ok(Probe::Exhausted);
        }
        sigma.place(first).expect("fresh order");
        let (ok, bumped) = self.apply_placement(&sigma, first);
        debug_assert!(bumped.is_empty(), "nothing is placed before the first vertex");
        if !ok {
            return Ok(Probe::Fail);
        }
        key[first / 64] |= 1 << (first % 64);
        Ok(self.dfs(&mut sigma, &mut key))
    }
}
