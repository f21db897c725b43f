//! SAT-to-graph reductions whose coloring numbers encode satisfiability.
//!
//! Three constructions turn a CNF formula `φ` into a graph `G(φ)` such
//! that a generalized coloring number of `G(φ)` stays at or below a fixed
//! threshold exactly when `φ` is satisfiable:
//!
//! * [`build_wcol2`] — weak 2-coloring number, threshold 5, for clause
//!   widths 2 and 3;
//! * [`build_wcolr`] — weak r-coloring number at any radius `r ≥ 3`,
//!   threshold `2r − 1`, for formulas whose clauses all have exactly `r`
//!   literals;
//! * [`build_colr`] — r-coloring number at any radius `r ≥ 2`, threshold
//!   6, for clause widths 2 and 3.
//!
//! Every builder returns a [`ReductionGraph`] bundling the graph with a
//! [`Role`] tag per vertex and an inventory of the subdivided connections.
//! [`witness_order`] maps a satisfying assignment to a vertex order meeting
//! the threshold, and [`extract_assignment`] reads an assignment back out
//! of any total order; whenever that order's evaluated value meets the
//! threshold, the extracted assignment satisfies the formula.
//! [`audit_structure`] re-derives the whole construction from the stored
//! formula and reports any deviation in the graph at hand.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::Parameter;
use crate::graph::{Graph, VertexId};
use crate::order::PrefixOrder;
use crate::sat::{is_two_clause_three_sat, Assignment, CnfFormula, Literal};

/// Failures of the reduction builders and the witness-order constructor.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReductionError {
    /// A clause has a width the chosen construction cannot encode.
    #[error("clause {clause} has width {width}; this construction needs {needed}")]
    ClauseWidth {
        clause: usize,
        width: usize,
        needed: &'static str,
    },
    /// The requested radius falls below the construction's minimum.
    #[error("radius {r} is too small for {kind}; it needs r >= {min}")]
    RadiusTooSmall {
        kind: &'static str,
        r: usize,
        min: usize,
    },
    /// Radius 2 has its own construction without subdivided edges.
    #[error(
        "the weak-coloring reduction at radius 2 has no subdivision vertices \
         and is built by build_wcol2; build_wcolr starts at radius 3"
    )]
    RadiusTwoIsWcol2,
    /// The assignment covers a different variable count than the formula.
    #[error("assignment covers {got} variables but the formula has {expected}")]
    AssignmentArity { expected: u32, got: u32 },
    /// Witness orders exist only for satisfying assignments.
    #[error("the assignment does not satisfy the source formula")]
    NonSatisfyingAssignment,
}

/// Which of the three constructions produced a [`ReductionGraph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReductionKind {
    /// Weak 2-coloring number, threshold 5.
    Wcol2,
    /// Weak r-coloring number, threshold `2r − 1`, radius `r ≥ 3`.
    Wcolr { r: usize },
    /// r-coloring number, threshold 6, radius `r ≥ 2`.
    Colr { r: usize },
}

impl ReductionKind {
    /// The radius at which the encoded decision problem lives.
    pub fn radius(&self) -> usize {
        match *self {
            ReductionKind::Wcol2 => 2,
            ReductionKind::Wcolr { r } | ReductionKind::Colr { r } => r,
        }
    }

    /// The decision threshold: the formula is satisfiable iff the graph's
    /// parameter value is at most this.
    pub fn threshold(&self) -> usize {
        match *self {
            ReductionKind::Wcol2 => 5,
            ReductionKind::Wcolr { r } => 2 * r - 1,
            ReductionKind::Colr { .. } => 6,
        }
    }

    /// Which coloring number the construction speaks about.
    pub fn parameter(&self) -> Parameter {
        match self {
            ReductionKind::Wcol2 | ReductionKind::Wcolr { .. } => Parameter::Wcol,
            ReductionKind::Colr { .. } => Parameter::Col,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ReductionKind::Wcol2 => "wcol2",
            ReductionKind::Wcolr { .. } => "wcolr",
            ReductionKind::Colr { .. } => "colr",
        }
    }
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The function a vertex plays inside a reduction graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum Role {
    /// `u_i^t`: copy `copy` (1-based) of the gadget for clause `clause`
    /// (0-based). The r-coloring construction has a single copy per clause.
    Clause { clause: usize, copy: usize },
    /// `f_i` / `f'_i`: filler `which` (1 or 2) attached to a width-2 clause
    /// in the radius-2 weak construction.
    Filler { clause: usize, which: usize },
    /// `v_j`: the vertex of the positive literal of variable `var` (1-based).
    LiteralPos { var: u32 },
    /// `v'_j`: the vertex of the negated literal of variable `var`.
    LiteralNeg { var: u32 },
    /// `w_t`: member `index` (1-based) of the 7-clique.
    Clique { index: usize },
    /// Internal vertex `position` (0-based, counted from the clause end)
    /// of subdivided connection number `link`.
    Subdivision { link: usize, position: usize },
}

/// One subdivided clause-literal connection: the path
/// `from — internals[0] — … — internals[k−1] — to`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubdividedLink {
    /// The clause-side endpoint.
    pub from: VertexId,
    /// The literal-side endpoint.
    pub to: VertexId,
    /// Fresh internal vertices in path order, starting next to `from`.
    pub internals: Vec<VertexId>,
}

/// A graph built from a formula by one of the three constructions, plus
/// everything needed to interpret it: per-vertex roles, the source formula,
/// and the subdivided-connection inventory.
///
/// Vertex ids are assigned deterministically — clause gadgets in formula
/// order (fillers directly after their six clause vertices), then literal
/// pairs `v_j, v'_j` ascending by variable, then the 7-clique where the
/// construction has one, then subdivision vertices in clause order, within
/// a clause in literal order, along each path from the clause end.
#[derive(Debug, Clone)]
pub struct ReductionGraph {
    graph: Graph,
    kind: ReductionKind,
    formula: CnfFormula,
    strict_shape: bool,
    roles: BTreeMap<VertexId, Role>,
    clause_vertices: Vec<Vec<VertexId>>,
    fillers: Vec<Option<(VertexId, VertexId)>>,
    literal_pairs: Vec<(VertexId, VertexId)>,
    clique: Vec<VertexId>,
    links: Vec<SubdividedLink>,
}

impl ReductionGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn kind(&self) -> ReductionKind {
        self.kind
    }

    pub fn formula(&self) -> &CnfFormula {
        &self.formula
    }

    /// Whether the source formula carries the full shape the soundness
    /// theorems assume: 2-Clause 3-SAT (every literal occurring exactly
    /// twice) for the width-{2,3} constructions, Exact r-SAT for the weak
    /// radius-r construction. Builders accept looser formulas — the graph
    /// is well-defined regardless — but only strict builds inherit the
    /// satisfiability-threshold equivalence.
    pub fn strict_shape(&self) -> bool {
        self.strict_shape
    }

    /// Role of every vertex, keyed by vertex id. Serializing this map is
    /// the sidecar format emitted next to graph files.
    pub fn roles(&self) -> &BTreeMap<VertexId, Role> {
        &self.roles
    }

    /// Per clause, the gadget vertices `u_i^1..` in copy order (a single
    /// copy for the r-coloring construction).
    pub fn clause_vertices(&self) -> &[Vec<VertexId>] {
        &self.clause_vertices
    }

    /// Per clause, the filler pair `(f_i, f'_i)` — present only for
    /// width-2 clauses of the radius-2 weak construction.
    pub fn fillers(&self) -> &[Option<(VertexId, VertexId)>] {
        &self.fillers
    }

    /// Per variable (index `j − 1`), the pair `(v_j, v'_j)`.
    pub fn literal_pairs(&self) -> &[(VertexId, VertexId)] {
        &self.literal_pairs
    }

    /// The 7-clique `w_1..w_7` of the r-coloring construction; empty for
    /// the weak constructions.
    pub fn clique(&self) -> &[VertexId] {
        &self.clique
    }

    /// Every subdivided clause-literal connection.
    pub fn links(&self) -> &[SubdividedLink] {
        &self.links
    }

    /// All subdivision vertices, ascending by id.
    pub fn subdivision_vertices(&self) -> Vec<VertexId> {
        self.roles
            .iter()
            .filter(|(_, role)| matches!(role, Role::Subdivision { .. }))
            .map(|(&id, _)| id)
            .collect()
    }

    /// The decision threshold of the underlying construction.
    pub fn threshold(&self) -> usize {
        self.kind.threshold()
    }
}

/// Accumulates fresh vertices, their roles, and edges while a builder runs.
struct Assembler {
    next: VertexId,
    edges: Vec<(VertexId, VertexId)>,
    roles: BTreeMap<VertexId, Role>,
}

impl Assembler {
    fn new() -> Self {
        Assembler {
            next: 0,
            edges: Vec::new(),
            roles: BTreeMap::new(),
        }
    }

    fn fresh(&mut self, role: Role) -> VertexId {
        let id = self.next;
        self.next += 1;
        self.roles.insert(id, role);
        id
    }

    fn edge(&mut self, a: VertexId, b: VertexId) {
        self.edges.push((a, b));
    }

    /// Adds the path `from — x_1 — … — x_k — to` with `k` fresh internal
    /// vertices tagged as subdivision vertices of connection `link`.
    fn subdivided_link(
        &mut self,
        from: VertexId,
        to: VertexId,
        internals: usize,
        link: usize,
    ) -> SubdividedLink {
        let mut prev = from;
        let mut ids = Vec::with_capacity(internals);
        for position in 0..internals {
            let x = self.fresh(Role::Subdivision { link, position });
            self.edge(prev, x);
            prev = x;
            ids.push(x);
        }
        self.edge(prev, to);
        SubdividedLink {
            from,
            to,
            internals: ids,
        }
    }

    fn finish(self) -> (Graph, BTreeMap<VertexId, Role>) {
        let g = Graph::from_edges(self.next, &self.edges)
            .expect("builders emit in-range, loop-free edges");
        (g, self.roles)
    }

    /// Creates the pair `v_j, v'_j` for every declared variable and joins
    /// each pair by an edge.
    fn literal_pairs(&mut self, n_vars: u32) -> Vec<(VertexId, VertexId)> {
        (1..=n_vars)
            .map(|var| {
                let v = self.fresh(Role::LiteralPos { var });
                let v_neg = self.fresh(Role::LiteralNeg { var });
                self.edge(v, v_neg);
                (v, v_neg)
            })
            .collect()
    }
}

fn literal_vertex(pairs: &[(VertexId, VertexId)], lit: Literal) -> VertexId {
    let (v, v_neg) = pairs[(lit.unsigned_abs() - 1) as usize];
    if lit > 0 {
        v
    } else {
        v_neg
    }
}

fn check_widths(
    phi: &CnfFormula,
    accept: impl Fn(usize) -> bool,
    needed: &'static str,
) -> Result<(), ReductionError> {
    for (i, clause) in phi.clauses().iter().enumerate() {
        if !accept(clause.len()) {
            return Err(ReductionError::ClauseWidth {
                clause: i,
                width: clause.len(),
                needed,
            });
        }
    }
    Ok(())
}

/// Builds the weak 2-coloring reduction: `wcol_2(G(φ)) ≤ 5` iff `φ` is
/// satisfiable, for `φ` in 2-Clause 3-SAT form.
///
/// Per clause `c_i` the graph gets six independent vertices
/// `u_i^1..u_i^6`; a width-2 clause additionally gets fillers `f_i, f'_i`,
/// each adjacent to all six (but not to each other). Per variable the two
/// literal vertices `v_j, v'_j` are joined by an edge, and every literal
/// occurrence connects its literal vertex to all six vertices of that
/// clause.
///
/// Clause widths outside {2, 3} are rejected. Occurrence counts are not:
/// the graph is well-defined for any width-{2,3} formula, and
/// [`ReductionGraph::strict_shape`] records whether the
/// exactly-two-occurrences-per-literal condition held.
pub fn build_wcol2(phi: &CnfFormula) -> Result<ReductionGraph, ReductionError> {
    check_widths(phi, |w| w == 2 || w == 3, "2 or 3 literals")?;
    let mut asm = Assembler::new();
    let mut clause_vertices = Vec::with_capacity(phi.num_clauses());
    let mut fillers = Vec::with_capacity(phi.num_clauses());
    for (i, clause) in phi.clauses().iter().enumerate() {
        let block: Vec<VertexId> = (1..=6)
            .map(|copy| asm.fresh(Role::Clause { clause: i, copy }))
            .collect();
        let pair = (clause.len() == 2).then(|| {
            let f1 = asm.fresh(Role::Filler { clause: i, which: 1 });
            let f2 = asm.fresh(Role::Filler { clause: i, which: 2 });
            for &u in &block {
                asm.edge(f1, u);
                asm.edge(f2, u);
            }
            (f1, f2)
        });
        clause_vertices.push(block);
        fillers.push(pair);
    }
    let literal_pairs = asm.literal_pairs(phi.n_vars());
    for (i, clause) in phi.clauses().iter().enumerate() {
        for &lit in clause {
            let lv = literal_vertex(&literal_pairs, lit);
            for &u in &clause_vertices[i] {
                asm.edge(lv, u);
            }
        }
    }
    let strict_shape = is_two_clause_three_sat(phi);
    let (graph, roles) = asm.finish();
    Ok(ReductionGraph {
        graph,
        kind: ReductionKind::Wcol2,
        formula: phi.clone(),
        strict_shape,
        roles,
        clause_vertices,
        fillers,
        literal_pairs,
        clique: Vec::new(),
        links: Vec::new(),
    })
}

/// Builds the weak r-coloring reduction for `r ≥ 3`:
/// `wcol_r(G(φ)) ≤ 2r − 1` iff `φ` is satisfiable, for `φ` in Exact r-SAT
/// form (every clause exactly `r` literals).
///
/// Per clause `c_i` the graph gets `2r` independent vertices
/// `u_i^1..u_i^{2r}`; per variable the pair `v_j — v'_j`; and each literal
/// occurrence is joined to *every* `u_i^t` of its clause by two internally
/// disjoint paths with `r − 2` internal vertices each. Any two clause
/// vertices therefore sit at distance `> r` from each other.
///
/// Radius 2 is rejected with a pointer to [`build_wcol2`]: with `r − 2 = 0`
/// internal vertices the parallel paths would collapse into plain edges and
/// the distance argument above would fail.
pub fn build_wcolr(phi: &CnfFormula, r: usize) -> Result<ReductionGraph, ReductionError> {
    if r == 2 {
        return Err(ReductionError::RadiusTwoIsWcol2);
    }
    if r < 3 {
        return Err(ReductionError::RadiusTooSmall {
            kind: "build_wcolr",
            r,
            min: 3,
        });
    }
    check_widths(phi, |w| w == r, "exactly r literals")?;
    let mut asm = Assembler::new();
    let clause_vertices: Vec<Vec<VertexId>> = (0..phi.num_clauses())
        .map(|i| {
            (1..=2 * r)
                .map(|copy| asm.fresh(Role::Clause { clause: i, copy }))
                .collect()
        })
        .collect();
    let literal_pairs = asm.literal_pairs(phi.n_vars());
    let mut links = Vec::new();
    for (i, clause) in phi.clauses().iter().enumerate() {
        for &lit in clause {
            let lv = literal_vertex(&literal_pairs, lit);
            for &u in &clause_vertices[i] {
                for _ in 0..2 {
                    let link = links.len();
                    links.push(asm.subdivided_link(u, lv, r - 2, link));
                }
            }
        }
    }
    let (graph, roles) = asm.finish();
    Ok(ReductionGraph {
        graph,
        kind: ReductionKind::Wcolr { r },
        formula: phi.clone(),
        // Exact r-SAT imposes nothing beyond the clause widths checked
        // above, so a successful build is always in strict shape.
        strict_shape: true,
        roles,
        clause_vertices,
        fillers: Vec::new(),
        literal_pairs,
        clique: Vec::new(),
        links,
    })
}

/// Builds the r-coloring reduction for `r ≥ 2`: `col_r(G(φ)) ≤ 6` iff `φ`
/// is satisfiable, for `φ` in 2-Clause 3-SAT form.
///
/// Per clause `c_i` the graph gets one clause vertex `u_i`; per variable
/// the pair `v_j — v'_j`; each literal occurrence is joined to its clause
/// vertex by an `(r − 1)`-subdivided edge. A 7-clique `w_1..w_7` anchors
/// the construction: every `u_i` is adjacent to `w_1..w_4` (plus `w_5` when
/// the clause has width 2), every `v_j` to `w_2..w_4`, and every `v'_j` to
/// `w_5..w_7`.
///
/// The guarantee is stated for `r ≥ 2`; radius 1 is rejected rather than
/// extrapolated.
pub fn build_colr(phi: &CnfFormula, r: usize) -> Result<ReductionGraph, ReductionError> {
    if r < 2 {
        return Err(ReductionError::RadiusTooSmall {
            kind: "build_colr",
            r,
            min: 2,
        });
    }
    check_widths(phi, |w| w == 2 || w == 3, "2 or 3 literals")?;
    let mut asm = Assembler::new();
    let clause_vertices: Vec<Vec<VertexId>> = (0..phi.num_clauses())
        .map(|i| vec![asm.fresh(Role::Clause { clause: i, copy: 1 })])
        .collect();
    let literal_pairs = asm.literal_pairs(phi.n_vars());
    let clique: Vec<VertexId> = (1..=7).map(|index| asm.fresh(Role::Clique { index })).collect();
    for a in 0..7 {
        for b in a + 1..7 {
            asm.edge(clique[a], clique[b]);
        }
    }
    for (i, clause) in phi.clauses().iter().enumerate() {
        let u = clause_vertices[i][0];
        for &w in &clique[0..4] {
            asm.edge(u, w);
        }
        if clause.len() == 2 {
            asm.edge(u, clique[4]);
        }
    }
    for &(v, v_neg) in &literal_pairs {
        for &w in &clique[1..4] {
            asm.edge(v, w);
        }
        for &w in &clique[4..7] {
            asm.edge(v_neg, w);
        }
    }
    let mut links = Vec::new();
    for (i, clause) in phi.clauses().iter().enumerate() {
        let u = clause_vertices[i][0];
        for &lit in clause {
            let lv = literal_vertex(&literal_pairs, lit);
            let link = links.len();
            links.push(asm.subdivided_link(u, lv, r - 1, link));
        }
    }
    let strict_shape = is_two_clause_three_sat(phi);
    let (graph, roles) = asm.finish();
    Ok(ReductionGraph {
        graph,
        kind: ReductionKind::Colr { r },
        formula: phi.clone(),
        strict_shape,
        roles,
        clause_vertices,
        fillers: Vec::new(),
        literal_pairs,
        clique,
        links,
    })
}

/// Turns a satisfying assignment into a total order witnessing the
/// construction's threshold: evaluating the returned order at the
/// construction's radius yields `wcol_2 ≤ 5`, `wcol_r ≤ 2r − 1`, or
/// `col_r ≤ 6` respectively.
///
/// The order follows the soundness argument of each construction. Weak
/// radius 2: clause blocks `u_i^1..u_i^6` in formula order, fillers
/// directly after their block, then per variable the false literal's
/// vertex before the true literal's. Weak radius `r ≥ 3`: all subdivision
/// vertices first (ascending id — any order works, this one is
/// deterministic), then clause blocks, then literal pairs false-first.
/// r-coloring: subdivision vertices, true literal vertices, clause
/// vertices, false literal vertices, then `w_1..w_7`.
///
/// Errors when the assignment has the wrong arity or does not satisfy the
/// source formula — the threshold guarantee would be void.
pub fn witness_order(
    rg: &ReductionGraph,
    a: &Assignment,
) -> Result<PrefixOrder, ReductionError> {
    if a.n_vars() != rg.formula.n_vars() {
        return Err(ReductionError::AssignmentArity {
            expected: rg.formula.n_vars(),
            got: a.n_vars(),
        });
    }
    if !rg.formula.evaluate(a) {
        return Err(ReductionError::NonSatisfyingAssignment);
    }
    let mut order = Vec::with_capacity(rg.graph.n());
    let pairs_false_first = |order: &mut Vec<VertexId>| {
        for (j, &(v, v_neg)) in rg.literal_pairs.iter().enumerate() {
            if a.value(j as u32 + 1) {
                order.push(v_neg);
                order.push(v);
            } else {
                order.push(v);
                order.push(v_neg);
            }
        }
    };
    match rg.kind {
        ReductionKind::Wcol2 => {
            for (block, pair) in rg.clause_vertices.iter().zip(&rg.fillers) {
                order.extend_from_slice(block);
                if let Some((f1, f2)) = pair {
                    order.push(*f1);
                    order.push(*f2);
                }
            }
            pairs_false_first(&mut order);
        }
        ReductionKind::Wcolr { .. } => {
            order.extend(rg.subdivision_vertices());
            for block in &rg.clause_vertices {
                order.extend_from_slice(block);
            }
            pairs_false_first(&mut order);
        }
        ReductionKind::Colr { .. } => {
            order.extend(rg.subdivision_vertices());
            for (j, &(v, v_neg)) in rg.literal_pairs.iter().enumerate() {
                order.push(if a.value(j as u32 + 1) { v } else { v_neg });
            }
            for block in &rg.clause_vertices {
                order.push(block[0]);
            }
            for (j, &(v, v_neg)) in rg.literal_pairs.iter().enumerate() {
                order.push(if a.value(j as u32 + 1) { v_neg } else { v });
            }
            order.extend_from_slice(&rg.clique);
        }
    }
    Ok(PrefixOrder::total(order).expect("witness orders cover every vertex exactly once"))
}

/// Reads an assignment out of a total order by comparing each pair
/// `v_j, v'_j`. The weak constructions set `x_j` false when
/// `v_j <_σ v'_j`; the r-coloring construction uses the inverted
/// convention and sets `x_j` true.
///
/// No satisfiability promise attaches to arbitrary orders; when `sigma`'s
/// evaluated parameter value meets the construction's threshold, the
/// returned assignment satisfies the source formula.
pub fn extract_assignment(rg: &ReductionGraph, sigma: &PrefixOrder) -> Assignment {
    debug_assert!(
        sigma.is_total() && sigma.n() == rg.graph.n(),
        "extraction reads a total order over the reduction graph"
    );
    let values = rg
        .literal_pairs
        .iter()
        .map(|&(v, v_neg)| {
            let positive_first = sigma.precedes(v, v_neg);
            match rg.kind {
                ReductionKind::Colr { .. } => positive_first,
                ReductionKind::Wcol2 | ReductionKind::Wcolr { .. } => !positive_first,
            }
        })
        .collect();
    Assignment::new(values)
}

/// Outcome of [`audit_structure`]: the observed census plus every found
/// deviation from the construction the graph claims to be.
#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    /// Vertex count of the audited graph.
    pub n: usize,
    /// Edge count of the audited graph.
    pub m: usize,
    /// Human-readable deviations; empty means the graph matches the
    /// construction exactly.
    pub deviations: Vec<String>,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.deviations.is_empty()
    }
}

/// Rebuilds the construction from the stored formula and kind, then diffs
/// the graph at hand against it: vertex/edge censuses, the full adjacency
/// pattern, the role table, and the role multiset implied by the defining
/// counts. Never errors; all findings land in the report.
pub fn audit_structure(rg: &ReductionGraph) -> AuditReport {
    let mut deviations = Vec::new();
    let rebuilt = match rg.kind {
        ReductionKind::Wcol2 => build_wcol2(&rg.formula),
        ReductionKind::Wcolr { r } => build_wcolr(&rg.formula, r),
        ReductionKind::Colr { r } => build_colr(&rg.formula, r),
    };
    match rebuilt {
        Err(e) => deviations.push(format!(
            "the stored formula no longer fits the construction: {e}"
        )),
        Ok(expected) => {
            if rg.graph.n() != expected.graph.n() {
                deviations.push(format!(
                    "vertex count is {} but the construction prescribes {}",
                    rg.graph.n(),
                    expected.graph.n()
                ));
            }
            if rg.graph.m() != expected.graph.m() {
                deviations.push(format!(
                    "edge count is {} but the construction prescribes {}",
                    rg.graph.m(),
                    expected.graph.m()
                ));
            }
            let shared = rg.graph.n().min(expected.graph.n());
            for u in 0..shared {
                for &v in expected.graph.neighbors(u) {
                    if v > u && v < shared && !rg.graph.has_edge(u, v) {
                        deviations.push(format!("edge {u}-{v} is prescribed but missing"));
                    }
                }
                for &v in rg.graph.neighbors(u) {
                    if v > u && v < shared && !expected.graph.has_edge(u, v) {
                        deviations.push(format!("edge {u}-{v} is present but not prescribed"));
                    }
                }
            }
            if rg.roles != expected.roles {
                deviations.push("vertex role table differs from the construction's".into());
            }
        }
    }
    audit_role_census(rg, &mut deviations);
    AuditReport {
        n: rg.graph.n(),
        m: rg.graph.m(),
        deviations,
    }
}

/// Checks the role multiset against the defining counts, computed from the
/// formula alone: clause-gadget size per clause, fillers per width-2
/// clause, one literal pair per variable, clique size, and subdivision
/// vertices per connection.
fn audit_role_census(rg: &ReductionGraph, deviations: &mut Vec<String>) {
    let phi = &rg.formula;
    let occurrences: usize = phi.clauses().iter().map(|c| c.len()).sum();
    let width2 = phi.clauses().iter().filter(|c| c.len() == 2).count();
    let (clause, filler, clique, subdivision) = match rg.kind {
        ReductionKind::Wcol2 => (6 * phi.num_clauses(), 2 * width2, 0, 0),
        ReductionKind::Wcolr { r } => (
            2 * r * phi.num_clauses(),
            0,
            0,
            // two (r−2)-subdivided paths per (clause vertex, occurrence) pair
            occurrences * 2 * r * 2 * (r - 2),
        ),
        ReductionKind::Colr { r } => (phi.num_clauses(), 0, 7, occurrences * (r - 1)),
    };
    let expected = [
        ("clause", clause),
        ("filler", filler),
        ("positive literal", phi.n_vars() as usize),
        ("negated literal", phi.n_vars() as usize),
        ("clique", clique),
        ("subdivision", subdivision),
    ];
    let mut counts = [0usize; 6];
    for role in rg.roles.values() {
        let slot = match role {
            Role::Clause { .. } => 0,
            Role::Filler { .. } => 1,
            Role::LiteralPos { .. } => 2,
            Role::LiteralNeg { .. } => 3,
            Role::Clique { .. } => 4,
            Role::Subdivision { .. } => 5,
        };
        counts[slot] += 1;
    }
    for ((name, want), got) in expected.iter().zip(counts) {
        if *want != got {
            deviations.push(format!(
                "{got} {name} vertices where the defining counts give {want}"
            ));
        }
    }
}
