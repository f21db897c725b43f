//! Batch front-end for the `gencol` library: greedy orders, exact
//! decisions and minimizations, order evaluation, hardness-reduction
//! graph generation, and CNF shape transforms.
//!
//! Exit codes are a stable contract: 0 success, 1 decision "no", 2 input
//! error, 3 budget exhausted. JSON (the default format) is stable; text
//! output is human-oriented and may change.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use gencol::{
    bounded_coloring, build_colr, build_wcol2, build_wcolr, decide_adm, decide_col, decide_wcol,
    evaluate_order, minimize, normalize_to_2clause3sat, parse_cnf, repair_exact_rsat,
    witness_order, Assignment, CnfFormula, Decision, Graph, MinimizeOutcome, Parameter,
    PrefixOrder, ReductionGraph, SearchBudget, SearchOptions, DEFAULT_NODE_BUDGET,
};
use serde_json::{json, Value};

const EXIT_OK: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "gencol",
    version,
    about = "Generalized coloring numbers: greedy bounds, exact search, \
             and SAT-hardness graph generators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format. `json` is the stable contract; `text` is for eyes.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Opaque value echoed into reports. No subcommand draws randomness;
    /// pipelines that do can thread their seed through for provenance.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParamArg {
    Col,
    Wcol,
    Adm,
}

impl ParamArg {
    fn to_parameter(self) -> Parameter {
        match self {
            ParamArg::Col => Parameter::Col,
            ParamArg::Wcol => Parameter::Wcol,
            ParamArg::Adm => Parameter::Adm,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            ParamArg::Col => "col",
            ParamArg::Wcol => "wcol",
            ParamArg::Adm => "adm",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    /// Radius-2 weak-coloring reduction (threshold 5).
    Wcol2,
    /// Radius-r weak-coloring reduction, r >= 3 (threshold 2r-1).
    Wcolr,
    /// Radius-r coloring reduction, r >= 2 (threshold 6).
    Colr,
}

#[derive(Clone, Copy, ValueEnum)]
enum TransformArg {
    /// Rewrite widths {2,3} / occurrences <= 2 into the exactly-two-
    /// occurrences-per-literal target shape.
    Normalize2c3,
    /// Pad every clause to exactly r distinct variables (needs --r).
    ExactR,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormatArg {
    Dimacs,
    EdgeList,
}

#[derive(Subcommand)]
enum Command {
    /// Greedy bounded-backconnectivity order plus its evaluated report.
    Order {
        /// Graph file (DIMACS or edge list, detected automatically).
        graph: PathBuf,
        /// Radius.
        #[arg(long)]
        r: usize,
        /// Where to write the order file (default: `<graph>.order`).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact decision (with --k) or minimization of col/wcol/adm.
    Compute {
        /// Graph file (DIMACS or edge list, detected automatically).
        graph: PathBuf,
        #[arg(long, value_enum)]
        param: ParamArg,
        /// Radius.
        #[arg(long)]
        r: usize,
        /// Decision threshold; omit to minimize instead.
        #[arg(long)]
        k: Option<usize>,
        /// Search budget in placement attempts.
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget_nodes: u64,
        /// Worker threads over first-placement branches.
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Evaluate a given total order: coloring numbers and per-vertex rows.
    Eval {
        /// Graph file (DIMACS or edge list, detected automatically).
        graph: PathBuf,
        /// Order file: one vertex id per line, a permutation of 0..n.
        #[arg(long)]
        order: PathBuf,
        /// Radius.
        #[arg(long)]
        r: usize,
    },
    /// Build a hardness-reduction graph from a CNF formula.
    Reduce {
        /// CNF file in DIMACS format.
        cnf: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Radius; required for `wcolr` (>= 3) and `colr` (>= 2), fixed
        /// at 2 for `wcol2`.
        #[arg(long)]
        r: Option<usize>,
        /// Satisfying assignment file (whitespace-separated signed
        /// literals, e.g. `1 -2 3`, optional trailing 0): also emit the
        /// witness order it induces and that order's evaluated value.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Where to write the graph (default: `<cnf>.graph`).
        #[arg(long)]
        out_graph: Option<PathBuf>,
        /// Where to write the vertex-role sidecar (default:
        /// `<cnf>.roles.json`).
        #[arg(long)]
        out_roles: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = GraphFormatArg::Dimacs)]
        graph_format: GraphFormatArg,
    },
    /// Transform a CNF formula's shape, preserving satisfiability.
    Sat {
        /// CNF file in DIMACS format.
        cnf: PathBuf,
        #[arg(long, value_enum)]
        transform: TransformArg,
        /// Target width for `exact-r`.
        #[arg(long)]
        r: Option<usize>,
        /// Where to write the transformed CNF (default: stdout only).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Order { graph, r, out } => cmd_order(cli, graph, *r, out.as_deref()),
        Command::Compute { graph, param, r, k, budget_nodes, threads } => {
            cmd_compute(cli, graph, *param, *r, *k, *budget_nodes, *threads)
        }
        Command::Eval { graph, order, r } => cmd_eval(cli, graph, order, *r),
        Command::Reduce { cnf, kind, r, witness, out_graph, out_roles, graph_format } => {
            cmd_reduce(
                cli,
                cnf,
                *kind,
                *r,
                witness.as_deref(),
                out_graph.as_deref(),
                out_roles.as_deref(),
                *graph_format,
            )
        }
        Command::Sat { cnf, transform, r, out } => {
            cmd_sat(cli, cnf, *transform, *r, out.as_deref())
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn load_graph(path: &Path) -> Result<Graph> {
    Graph::parse_auto(&read(path)?).with_context(|| format!("parsing graph {}", path.display()))
}

fn load_cnf(path: &Path) -> Result<CnfFormula> {
    parse_cnf(&read(path)?).with_context(|| format!("parsing CNF {}", path.display()))
}

fn require_radius(r: usize) -> Result<()> {
    if r == 0 {
        bail!("--r must be at least 1");
    }
    Ok(())
}

/// Derives `<input>.<suffix>` next to the input file.
fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".");
    name.push(suffix);
    PathBuf::from(name)
}

fn emit(cli: &Cli, body: Value, text: impl FnOnce() -> String) {
    match cli.format {
        Format::Json => {
            let mut body = body;
            if let (Some(seed), Some(map)) = (cli.seed, body.as_object_mut()) {
                map.insert("seed".into(), json!(seed));
            }
            println!("{}", serde_json::to_string_pretty(&body).expect("valid JSON"));
        }
        Format::Text => println!("{}", text()),
    }
}

fn order_to_vec(sigma: &PrefixOrder) -> Vec<usize> {
    sigma.placed().to_vec()
}

fn cmd_order(cli: &Cli, graph_path: &Path, r: usize, out: Option<&Path>) -> Result<u8> {
    require_radius(r)?;
    let g = load_graph(graph_path)?;
    let result = bounded_coloring(&g, r);
    let out_path = out.map(Path::to_path_buf).unwrap_or_else(|| sibling(graph_path, "order"));
    write(&out_path, &result.order.to_order_file())?;
    let b = &result.bounds;
    emit(
        cli,
        json!({
            "r": r,
            "n": g.n(),
            "m": g.m(),
            "order": order_to_vec(&result.order),
            "order_file": out_path.display().to_string(),
            "col": result.report.col,
            "wcol": result.report.wcol,
            "max_est_seen": result.max_est_seen,
            "bounds": {
                "k": b.k,
                "col_bound": b.col_bound,
                "wcol_bound": b.wcol_bound,
                "col_within": b.col_within,
                "wcol_within": b.wcol_within,
                "degenerate": b.degenerate,
            },
        }),
        || {
            format!(
                "greedy order at r = {r}: col = {}, wcol = {}, largest estimate seen = {}\n\
                 order written to {}",
                result.report.col,
                result.report.wcol,
                result.max_est_seen,
                out_path.display()
            )
        },
    );
    Ok(EXIT_OK)
}

fn cmd_compute(
    cli: &Cli,
    graph_path: &Path,
    param: ParamArg,
    r: usize,
    k: Option<usize>,
    budget_nodes: u64,
    threads: usize,
) -> Result<u8> {
    require_radius(r)?;
    if budget_nodes == 0 {
        bail!("--budget-nodes must be at least 1");
    }
    let g = load_graph(graph_path)?;
    let opts = SearchOptions {
        budget: SearchBudget { max_nodes: budget_nodes, wall_clock: None },
        threads,
        ..SearchOptions::default()
    };
    match k {
        Some(k) => {
            let (decision, stats) = match param.to_parameter() {
                Parameter::Col => decide_col(&g, r, k, &opts)?,
                Parameter::Wcol => decide_wcol(&g, r, k, &opts)?,
                Parameter::Adm => decide_adm(&g, r, k, &opts)?,
            };
            let (answer, order, code) = match decision {
                Decision::Yes(sigma) => ("yes", Some(order_to_vec(&sigma)), EXIT_OK),
                Decision::No => ("no", None, EXIT_NO),
                Decision::BudgetExhausted => ("budget_exhausted", None, EXIT_BUDGET),
            };
            emit(
                cli,
                json!({
                    "parameter": param.as_str(),
                    "r": r,
                    "k": k,
                    "answer": answer,
                    "order": order,
                    "nodes_expanded": stats.nodes_expanded,
                }),
                || format!("{}_{r} <= {k}? {answer}", param.as_str()),
            );
            Ok(code)
        }
        None => {
            let result = minimize(&g, r, param.to_parameter(), &opts)?;
            let order = order_to_vec(&result.order);
            match result.outcome {
                MinimizeOutcome::Exact { value } => {
                    emit(
                        cli,
                        json!({
                            "parameter": param.as_str(),
                            "r": r,
                            "value": value,
                            "order": order,
                            "nodes_expanded": result.stats.nodes_expanded,
                        }),
                        || format!("{}_{r} = {value}", param.as_str()),
                    );
                    Ok(EXIT_OK)
                }
                MinimizeOutcome::Bracket { lo, hi } => {
                    emit(
                        cli,
                        json!({
                            "parameter": param.as_str(),
                            "r": r,
                            "bracket": { "lo": lo, "hi": hi },
                            "order": order,
                            "nodes_expanded": result.stats.nodes_expanded,
                        }),
                        || {
                            format!(
                                "budget exhausted: {lo} <= {}_{r} <= {hi} \
                                 (order achieving {hi} emitted)",
                                param.as_str()
                            )
                        },
                    );
                    Ok(EXIT_BUDGET)
                }
            }
        }
    }
}

fn cmd_eval(cli: &Cli, graph_path: &Path, order_path: &Path, r: usize) -> Result<u8> {
    require_radius(r)?;
    let g = load_graph(graph_path)?;
    let sigma = PrefixOrder::parse(&read(order_path)?, g.n())
        .with_context(|| format!("parsing order {}", order_path.display()))?;
    let report = evaluate_order(&g, &sigma, r)
        .context("the order file must list every vertex exactly once")?;
    let text = format!("col_{r} = {}, wcol_{r} = {} under the given order", report.col, report.wcol);
    emit(cli, report.to_json(), || text);
    Ok(EXIT_OK)
}

/// Parses a satisfying assignment written as whitespace-separated signed
/// literals (`2` true, `-2` false), optionally ending with a DIMACS-style
/// `0`. Every variable must be assigned exactly once.
fn parse_assignment(text: &str, n_vars: u32) -> Result<Assignment> {
    let mut values = vec![None; n_vars as usize];
    for token in text.split_whitespace() {
        let lit: i64 = token.parse().with_context(|| format!("bad literal {token:?}"))?;
        if lit == 0 {
            break;
        }
        let var = lit.unsigned_abs();
        if var > u64::from(n_vars) {
            bail!("literal {lit} references a variable outside 1..={n_vars}");
        }
        let slot = &mut values[(var - 1) as usize];
        if slot.is_some() {
            bail!("variable {var} assigned twice");
        }
        *slot = Some(lit > 0);
    }
    let values: Option<Vec<bool>> = values.into_iter().collect();
    match values {
        Some(values) => Ok(Assignment::new(values)),
        None => bail!("assignment must cover every variable 1..={n_vars}"),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_reduce(
    cli: &Cli,
    cnf_path: &Path,
    kind: KindArg,
    r: Option<usize>,
    witness: Option<&Path>,
    out_graph: Option<&Path>,
    out_roles: Option<&Path>,
    graph_format: GraphFormatArg,
) -> Result<u8> {
    let phi = load_cnf(cnf_path)?;
    let rg: ReductionGraph = match kind {
        KindArg::Wcol2 => {
            if !matches!(r, None | Some(2)) {
                bail!("the wcol2 reduction is fixed at radius 2; drop --r or pass --r 2");
            }
            build_wcol2(&phi)?
        }
        KindArg::Wcolr => {
            let r = r.context("--r is required for the wcolr reduction (r >= 3)")?;
            build_wcolr(&phi, r)?
        }
        KindArg::Colr => {
            let r = r.context("--r is required for the colr reduction (r >= 2)")?;
            build_colr(&phi, r)?
        }
    };
    let g = rg.graph();
    let graph_path = out_graph
        .map(Path::to_path_buf)
        .unwrap_or_else(|| sibling(cnf_path, "graph"));
    let roles_path = out_roles
        .map(Path::to_path_buf)
        .unwrap_or_else(|| sibling(cnf_path, "roles.json"));
    let rendered = match graph_format {
        GraphFormatArg::Dimacs => g.to_dimacs(),
        GraphFormatArg::EdgeList => g.to_edge_list(),
    };
    write(&graph_path, &rendered)?;
    write(
        &roles_path,
        &serde_json::to_string_pretty(rg.roles()).expect("roles serialize"),
    )?;

    let witness_part = match witness {
        None => None,
        Some(path) => {
            let assignment = parse_assignment(&read(path)?, phi.n_vars())
                .with_context(|| format!("parsing assignment {}", path.display()))?;
            let sigma = witness_order(&rg, &assignment)?;
            let report = evaluate_order(g, &sigma, rg.kind().radius()).expect("witness is total");
            let value = match rg.kind().parameter() {
                Parameter::Wcol => report.wcol,
                _ => report.col,
            };
            Some(json!({
                "order": order_to_vec(&sigma),
                "value": value,
                "threshold": rg.threshold(),
                "within_threshold": value <= rg.threshold(),
            }))
        }
    };

    let witness_text = witness_part
        .as_ref()
        .map(|w| {
            format!(
                "\nwitness order value {} against threshold {}",
                w["value"], w["threshold"]
            )
        })
        .unwrap_or_default();
    emit(
        cli,
        json!({
            "kind": rg.kind().as_str(),
            "radius": rg.kind().radius(),
            "parameter": match rg.kind().parameter() {
                Parameter::Wcol => "wcol",
                _ => "col",
            },
            "threshold": rg.threshold(),
            "n": g.n(),
            "m": g.m(),
            "strict_shape": rg.strict_shape(),
            "graph_file": graph_path.display().to_string(),
            "roles_file": roles_path.display().to_string(),
            "witness": witness_part,
        }),
        || {
            format!(
                "{} reduction: n = {}, m = {}, threshold {}\ngraph -> {}\nroles -> {}{witness_text}",
                rg.kind().as_str(),
                g.n(),
                g.m(),
                rg.threshold(),
                graph_path.display(),
                roles_path.display()
            )
        },
    );
    Ok(EXIT_OK)
}

fn cmd_sat(
    cli: &Cli,
    cnf_path: &Path,
    transform: TransformArg,
    r: Option<usize>,
    out: Option<&Path>,
) -> Result<u8> {
    let phi = load_cnf(cnf_path)?;
    let (label, formula, extra) = match transform {
        TransformArg::Normalize2c3 => {
            if r.is_some() {
                bail!("--r applies only to the exact-r transform");
            }
            let output = normalize_to_2clause3sat(&phi)?;
            let var_map: Value = output
                .var_map
                .iter()
                .map(|(from, to)| (from.to_string(), json!(to)))
                .collect::<serde_json::Map<String, Value>>()
                .into();
            let pure: Vec<Value> = output
                .pure_assignments
                .iter()
                .map(|&(var, value)| json!({ "var": var, "value": value }))
                .collect();
            ("normalize2c3", output.formula, json!({ "var_map": var_map, "pure_assignments": pure }))
        }
        TransformArg::ExactR => {
            let r = r.context("--r is required for the exact-r transform")?;
            if r == 0 {
                bail!("--r must be at least 1");
            }
            ("exact-r", repair_exact_rsat(&phi, r)?, json!({ "r": r }))
        }
    };
    let rendered = formula.emit();
    if let Some(path) = out {
        write(path, &rendered)?;
    }
    emit(
        cli,
        json!({
            "transform": label,
            "n_vars": formula.n_vars(),
            "clauses": formula.num_clauses(),
            "cnf": rendered,
            "details": extra,
            "out_file": out.map(|p| p.display().to_string()),
        }),
        || rendered.clone(),
    );
    Ok(EXIT_OK)
}
