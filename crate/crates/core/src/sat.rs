//! CNF formulas, the occurrence-normalizing gadget, exact-width repair,
//! and a brute-force satisfiability oracle.
//!
//! Literals are nonzero integers in DIMACS style: `3` is the positive
//! literal of variable 3, `-3` its negation. The target shape for the
//! hardness generators is "2-Clause 3-SAT": every clause has 2 or 3
//! distinct variables and every literal occurs in exactly 2 clauses.

use std::collections::BTreeMap;

use thiserror::Error;

/// A DIMACS-style literal: positive for a variable, negative for its
/// negation, never zero.
pub type Literal = i32;

pub const DEFAULT_SAT_CAP: u32 = 24;

#[derive(Debug, Error)]
pub enum SatError {
    #[error("malformed CNF header: {0}")]
    MalformedHeader(String),
    #[error("malformed CNF at line {line}: {msg}")]
    MalformedLine { line: usize, msg: String },
    #[error("literal {lit} references a variable outside 1..={n_vars}")]
    LiteralOutOfRange { lit: Literal, n_vars: u32 },
    #[error("clause {index} mentions variable {var} twice")]
    DuplicateVariable { index: usize, var: u32 },
    #[error("normalization precondition violated: {0}")]
    NotNormalizable(String),
    #[error("clause {index} has {width} distinct variables, wider than r = {r}")]
    ClauseTooWide { index: usize, width: usize, r: usize },
    #[error("formula has {n_vars} variables, above the brute-force cap {cap}")]
    TooManyVariables { n_vars: u32, cap: u32 },
}

/// CNF formula over variables `1..=n_vars`. Within a clause no variable
/// appears twice (in either polarity); parsing enforces this by dropping
/// tautological clauses and collapsing duplicated literals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    n_vars: u32,
    clauses: Vec<Vec<Literal>>,
}

impl CnfFormula {
    /// Builds a formula, validating literal ranges and the
    /// distinct-variables-per-clause invariant.
    pub fn new(n_vars: u32, clauses: Vec<Vec<Literal>>) -> Result<Self, SatError> {
        for (index, clause) in clauses.iter().enumerate() {
            let mut seen = Vec::with_capacity(clause.len());
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() > n_vars {
                    return Err(SatError::LiteralOutOfRange { lit, n_vars });
                }
                let var = lit.unsigned_abs();
                if seen.contains(&var) {
                    return Err(SatError::DuplicateVariable { index, var });
                }
                seen.push(var);
            }
        }
        Ok(CnfFormula { n_vars, clauses })
    }

    pub fn n_vars(&self) -> u32 {
        self.n_vars
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// True when some clause is empty, which no assignment satisfies.
    pub fn is_trivially_unsat(&self) -> bool {
        self.clauses.iter().any(|c| c.is_empty())
    }

    /// Number of clauses containing the literal.
    pub fn occurrences(&self, lit: Literal) -> usize {
        self.clauses.iter().filter(|c| c.contains(&lit)).count()
    }

    pub fn evaluate(&self, assignment: &Assignment) -> bool {
        self.clauses
            .iter()
            .all(|clause| clause.iter().any(|&lit| assignment.satisfies(lit)))
    }

    /// DIMACS text: the standard `p cnf` header plus zero-terminated
    /// clauses.
    pub fn emit(&self) -> String {
        use std::fmt::Write as _;
        let mut out = format!("p cnf {} {}\n", self.n_vars, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause {
                write!(out, "{lit} ").unwrap();
            }
            out.push_str("0\n");
        }
        out
    }
}

/// Total truth assignment for variables `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment { values }
    }

    /// Variable `i + 1` is true iff bit `i` is set.
    pub fn from_bits(n_vars: u32, bits: u64) -> Self {
        Assignment { values: (0..n_vars).map(|i| bits >> i & 1 == 1).collect() }
    }

    pub fn n_vars(&self) -> u32 {
        self.values.len() as u32
    }

    pub fn value(&self, var: u32) -> bool {
        self.values[(var - 1) as usize]
    }

    pub fn satisfies(&self, lit: Literal) -> bool {
        self.value(lit.unsigned_abs()) == (lit > 0)
    }
}

/// Parses DIMACS CNF. Comment lines start with `c`; the `p cnf n m`
/// header precedes the clauses; clauses are zero-terminated integer
/// lists and may span lines. The declared clause count is informational.
/// Tautological clauses are dropped and duplicate literals collapsed;
/// clauses left empty are kept (the formula is then trivially
/// unsatisfiable).
pub fn parse_cnf(text: &str) -> Result<CnfFormula, SatError> {
    let mut header: Option<u32> = None;
    let mut clauses: Vec<Vec<Literal>> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut open_clause_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(SatError::MalformedHeader("duplicate p line".into()));
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            if fields.len() != 4 || fields[1] != "cnf" {
                return Err(SatError::MalformedHeader(trimmed.into()));
            }
            let n = fields[2]
                .parse::<u32>()
                .map_err(|_| SatError::MalformedHeader(trimmed.into()))?;
            fields[3]
                .parse::<u64>()
                .map_err(|_| SatError::MalformedHeader(trimmed.into()))?;
            header = Some(n);
            continue;
        }
        let n_vars = header.ok_or_else(|| {
            SatError::MalformedHeader("clause data before the p cnf header".into())
        })?;
        for token in trimmed.split_whitespace() {
            let lit = token.parse::<Literal>().map_err(|_| SatError::MalformedLine {
                line,
                msg: format!("expected an integer literal, found {token:?}"),
            })?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            if lit.unsigned_abs() > n_vars {
                return Err(SatError::LiteralOutOfRange { lit, n_vars });
            }
            if current.is_empty() {
                open_clause_line = line;
            }
            current.push(lit);
        }
    }
    if !current.is_empty() {
        return Err(SatError::MalformedLine {
            line: open_clause_line,
            msg: "clause not terminated by 0".into(),
        });
    }
    let n_vars = header.ok_or_else(|| SatError::MalformedHeader("missing p cnf header".into()))?;
    let cleaned = clauses.into_iter().filter_map(cleanup_clause).collect();
    CnfFormula::new(n_vars, cleaned)
}

/// Collapses duplicate literals; returns `None` for tautologies (both
/// polarities present), which any assignment satisfies.
fn cleanup_clause(clause: Vec<Literal>) -> Option<Vec<Literal>> {
    let mut kept: Vec<Literal> = Vec::with_capacity(clause.len());
    for lit in clause {
        if kept.contains(&-lit) {
            return None;
        }
        if !kept.contains(&lit) {
            kept.push(lit);
        }
    }
    Some(kept)
}

/// Output of [`normalize_to_2clause3sat`].
#[derive(Debug, Clone)]
pub struct NormalizeOutput {
    pub formula: CnfFormula,
    /// Original variable -> variable in the output, for variables that
    /// survive preprocessing.
    pub var_map: BTreeMap<u32, u32>,
    /// Pure variables fixed during preprocessing and the value chosen.
    pub pure_assignments: Vec<(u32, bool)>,
}

/// True when every clause has 2 or 3 distinct variables and both
/// literals of every variable occur in exactly 2 clauses.
pub fn is_two_clause_three_sat(phi: &CnfFormula) -> bool {
    phi.clauses.iter().all(|c| (2..=3).contains(&c.len()))
        && (1..=phi.n_vars)
            .all(|v| phi.occurrences(v as Literal) == 2 && phi.occurrences(-(v as Literal)) == 2)
}

/// Rewrites a formula with clause widths in {2,3} and at most 2
/// occurrences per literal into 2-Clause 3-SAT form, preserving
/// satisfiability.
///
/// Pure (single-polarity) variables are assigned greedily and their
/// satisfied clauses deleted, to a fixpoint; surviving variables are
/// renumbered compactly; then each literal still occurring once gets the
/// 7-clause patch over 5 fresh variables that raises its count to 2
/// while keeping every fresh literal at exactly 2 (the patch is
/// satisfiable with all five fresh variables true, independent of the
/// patched literal). A formula containing an empty clause short-circuits
/// to a canonical unsatisfiable core already in target form.
pub fn normalize_to_2clause3sat(phi: &CnfFormula) -> Result<NormalizeOutput, SatError> {
    if phi.is_trivially_unsat() {
        let core = CnfFormula::new(2, vec![vec![1, 2], vec![1, -2], vec![-1, 2], vec![-1, -2]])
            .expect("canonical core is well-formed");
        return Ok(NormalizeOutput {
            formula: core,
            var_map: BTreeMap::new(),
            pure_assignments: Vec::new(),
        });
    }
    for clause in &phi.clauses {
        if !(2..=3).contains(&clause.len()) {
            return Err(SatError::NotNormalizable(format!(
                "clause width {} outside 2..=3",
                clause.len()
            )));
        }
    }
    for v in 1..=phi.n_vars {
        for lit in [v as Literal, -(v as Literal)] {
            let occ = phi.occurrences(lit);
            if occ > 2 {
                return Err(SatError::NotNormalizable(format!(
                    "literal {lit} occurs {occ} times, more than 2"
                )));
            }
        }
    }
    // Pure-literal elimination to a fixpoint, smallest variable first.
    let mut clauses = phi.clauses.clone();
    let mut pure_assignments = Vec::new();
    'sweep: loop {
        for v in 1..=phi.n_vars {
            let lit = v as Literal;
            let pos = clauses.iter().filter(|c| c.contains(&lit)).count();
            let neg = clauses.iter().filter(|c| c.contains(&-lit)).count();
            let satisfied = match (pos, neg) {
                (1.., 0) => lit,
                (0, 1..) => -lit,
                _ => continue,
            };
            pure_assignments.push((v, satisfied > 0));
            clauses.retain(|c| !c.contains(&satisfied));
            continue 'sweep;
        }
        break;
    }
    // Compact renumbering of survivors, ascending by original id.
    let mut var_map = BTreeMap::new();
    for clause in &clauses {
        for &lit in clause {
            let next = var_map.len() as u32 + 1;
            var_map.entry(lit.unsigned_abs()).or_insert(next);
        }
    }
    // BTreeMap iteration already visits originals in ascending order, but
    // insertion order above follows clause order; remap to keep the
    // renumbering ascending.
    let ordered: Vec<u32> = var_map.keys().copied().collect();
    for (i, v) in ordered.into_iter().enumerate() {
        var_map.insert(v, i as u32 + 1);
    }
    let mut next_var = var_map.len() as u32;
    let mut out: Vec<Vec<Literal>> = clauses
        .iter()
        .map(|c| c.iter().map(|&lit| lit.signum() * var_map[&lit.unsigned_abs()] as Literal).collect())
        .collect();
    // Patch once-occurring literals, positive polarity of each variable
    // first. Counts are frozen before patching: the patch only touches
    // fresh variables and the patched literal itself.
    let surviving_vars = next_var;
    for v in 1..=surviving_vars {
        for lit in [v as Literal, -(v as Literal)] {
            let occ = out.iter().filter(|c| c.contains(&lit)).count();
            if occ == 1 {
                let y = |i: u32| (next_var + i) as Literal;
                out.extend([
                    vec![lit, y(1), -y(2)],
                    vec![y(1), y(3), -y(4)],
                    vec![-y(1), y(3), -y(4)],
                    vec![-y(1), y(4), -y(5)],
                    vec![y(2), y(4), -y(5)],
                    vec![y(2), -y(3), y(5)],
                    vec![-y(2), -y(3), y(5)],
                ]);
                next_var += 5;
            }
        }
    }
    let formula = CnfFormula::new(next_var, out)?;
    debug_assert!(
        formula.num_clauses() == 0 || is_two_clause_three_sat(&formula),
        "normalization must land in target form"
    );
    Ok(NormalizeOutput { formula, var_map, pure_assignments })
}

/// Pads every clause to exactly `r` distinct variables, preserving
/// satisfiability: a short clause `C` is replaced by `(C or y)` and
/// `(C or not y)` with a fresh `y`, recursively. Each split uses its own
/// fresh variable; a clause of width `w` becomes `2^(r-w)` clauses.
/// Errors on clauses wider than `r`.
pub fn repair_exact_rsat(phi: &CnfFormula, r: usize) -> Result<CnfFormula, SatError> {
    assert!(r >= 1, "target width must be at least 1");
    let mut next_var = phi.n_vars;
    let mut out = Vec::new();
    for (index, clause) in phi.clauses.iter().enumerate() {
        if clause.len() > r {
            return Err(SatError::ClauseTooWide { index, width: clause.len(), r });
        }
        pad_clause(clause.clone(), r, &mut next_var, &mut out);
    }
    CnfFormula::new(next_var, out)
}

fn pad_clause(clause: Vec<Literal>, r: usize, next_var: &mut u32, out: &mut Vec<Vec<Literal>>) {
    if clause.len() == r {
        out.push(clause);
        return;
    }
    *next_var += 1;
    let y = *next_var as Literal;
    let mut with_pos = clause.clone();
    with_pos.push(y);
    pad_clause(with_pos, r, next_var, out);
    let mut with_neg = clause;
    with_neg.push(-y);
    pad_clause(with_neg, r, next_var, out);
}

/// Exhaustive satisfiability check; `Ok(Some(_))` carries a verified
/// satisfying assignment, `Ok(None)` means unsatisfiable.
pub fn brute_force_sat(phi: &CnfFormula) -> Result<Option<Assignment>, SatError> {
    brute_force_sat_with_cap(phi, DEFAULT_SAT_CAP)
}

pub fn brute_force_sat_with_cap(
    phi: &CnfFormula,
    cap: u32,
) -> Result<Option<Assignment>, SatError> {
    if phi.n_vars > cap.min(63) {
        return Err(SatError::TooManyVariables { n_vars: phi.n_vars, cap: cap.min(63) });
    }
    // Bitmask evaluation: clause satisfied iff some positive variable is
    // set or some negated variable is clear.
    let masks: Vec<(u64, u64)> = phi
        .clauses
        .iter()
        .map(|clause| {
            let mut pos = 0u64;
            let mut neg = 0u64;
            for &lit in clause {
                let bit = 1u64 << (lit.unsigned_abs() - 1);
                if lit > 0 {
                    pos |= bit;
                } else {
                    neg |= bit;
                }
            }
            (pos, neg)
        })
        .collect();
    for bits in 0..1u64 << phi.n_vars {
        if masks.iter().all(|&(pos, neg)| bits & pos != 0 || !bits & neg != 0) {
            let assignment = Assignment::from_bits(phi.n_vars, bits);
            assert!(phi.evaluate(&assignment), "bitmask evaluation disagrees with the definition");
            return Ok(Some(assignment));
        }
    }
    Ok(None)
}
