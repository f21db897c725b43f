//! Generalized coloring numbers of undirected graphs.
//!
//! The crate computes reach and weak-reach sets of vertices under total and
//! prefix orders, evaluates orders exactly, searches for optimal orders
//! (`col`, `wcol`, and admissibility at a given radius), produces greedy
//! orders driven by back-connectivity estimates, and generates graphs from
//! CNF formulas whose coloring numbers encode satisfiability.
//!
//! The main types are re-exported at the crate root; the modules group
//! them by topic.

pub mod bcon;
pub mod exact;
pub mod graph;
pub mod greedy;
pub mod order;
pub mod reach;
pub mod reduction;
pub mod sat;

pub use bcon::{
    adm_of_order, build_level_dag, estimated_bcon, exact_bcon, exact_bcon_with_cap, BconError,
    LevelDag, DEFAULT_PATH_CAP,
};
pub use exact::{
    decide_adm, decide_col, decide_wcol, exact_admissibility, minimize, AdmOutcome, Decision,
    MinimizeOutcome, MinimizeResult, Parameter, SearchBudget, SearchError, SearchOptions,
    SearchStats, DEFAULT_NODE_BUDGET,
};
pub use graph::{Graph, GraphError, GraphFormat, VertexId};
pub use greedy::{
    bounded_coloring, col_bound_for_adm, wcol_bound_for_adm, weighted_reach_sum, BoundCheck,
    GreedyError, GreedyResult, GreedyState,
};
pub use order::{OrderError, PrefixOrder};
pub use reach::{evaluate_order, reach_set, wreach_set, ReachReport};
pub use reduction::{
    audit_structure, build_colr, build_wcol2, build_wcolr, extract_assignment, witness_order,
    AuditReport, ReductionError, ReductionGraph, ReductionKind, Role, SubdividedLink,
};
pub use sat::{
    brute_force_sat, brute_force_sat_with_cap, is_two_clause_three_sat, normalize_to_2clause3sat,
    parse_cnf, repair_exact_rsat, Assignment, CnfFormula, Literal, NormalizeOutput, SatError,
    DEFAULT_SAT_CAP,
};
