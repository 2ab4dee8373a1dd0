//! Command-line front end: single batches of either iteration, graph
//! diagnostics, and reproduction of the two reference tables.
//!
//! Exit codes: `0` when every requested run executed, `1` when output could
//! not be written, `2` for invalid flags, `3` for an unknown or malformed
//! graph.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::detector::{
    effective_delta, run_batch, run_batch_until_decisive, Batch, BatchSummary, Prediction,
    RunOutcome,
};
use crate::graphs::{
    automorphisms_with_budget, catalog, has_maximal_schur_set, is_vertex_transitive,
    parse_adjacency, Graph, GraphError, DEFAULT_SEARCH_BUDGET,
};
use crate::reference::{FAILURE_RATES, GRAPH_N_MAX, GRAPH_TABLE};
use crate::sinkhorn_core::{Classification, RunConfig, RunStatus};

pub const EXIT_OK: i32 = 0;
pub const EXIT_OUTPUT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GRAPH: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "qsinkhorn",
    version,
    about = "Sinkhorn scaling for quantum permutation matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Batch of the plain iteration in dimension n
    Magic(MagicArgs),
    /// Batch of the graph-aware iteration and a quantum-symmetry prediction
    Qsym(QsymArgs),
    /// Size, degrees, automorphism group and transitivity of a graph
    GraphInfo(GraphInfoArgs),
    /// Recompute one of the reference tables
    Reproduce(ReproduceArgs),
}

#[derive(Args, Debug)]
struct MagicArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1e-6)]
    epsilon: f64,
    #[arg(long, default_value_t = 500)]
    nmax: usize,
    #[arg(long, default_value_t = 1)]
    runs: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Directory for runs.jsonl, summary.json and histogram.csv
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct QsymArgs {
    /// Catalog name, or @path to an adjacency file
    #[arg(long)]
    graph: String,
    #[arg(long, default_value_t = 0.5)]
    tau: f64,
    #[arg(long, default_value_t = 1e-3)]
    epsilon: f64,
    #[arg(long, default_value_t = 2000)]
    nmax: usize,
    #[arg(long, default_value_t = 0.05)]
    delta: f64,
    #[arg(long, default_value_t = 1)]
    runs: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Grid `start:end:step` of τ values; writes tau_sweep.csv
    #[arg(long, value_name = "A:B:STEP")]
    tau_sweep: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GraphInfoArgs {
    #[arg(long)]
    graph: String,
    /// Node budget for the automorphism and Schur-set searches
    #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
    budget: u64,
}

#[derive(clap::ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Table {
    Table1,
    Table2,
}

#[derive(Args, Debug)]
struct ReproduceArgs {
    #[arg(value_enum)]
    table: Table,
    /// Runs per row (default 50 for table1, 1000 for table2)
    #[arg(long)]
    runs: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Restrict table1 to these comma-separated graphs
    #[arg(long, value_delimiter = ',')]
    graphs: Vec<String>,
    /// Directory for the CSV and text renderings
    #[arg(long)]
    out: Option<PathBuf>,
}

/// One run as written to `runs.jsonl`. Indices in `witness` are 1-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub graph: String,
    pub n: usize,
    pub tau: Option<f64>,
    pub epsilon: f64,
    pub n_max: usize,
    pub delta: f64,
    pub seed: u64,
    pub iterations: usize,
    pub final_error: f64,
    pub error_magic: f64,
    pub error_comm: Option<f64>,
    pub max_commutator: Option<f64>,
    pub witness: Option<[[usize; 2]; 2]>,
    pub classification: Classification,
    pub status: RunStatus,
    pub wall_time_s: f64,
}

impl RunRecord {
    fn new(
        graph: &str,
        n: usize,
        tau: Option<f64>,
        config: &RunConfig,
        delta: f64,
        o: &RunOutcome,
    ) -> Self {
        let r = &o.report;
        Self {
            graph: graph.to_string(),
            n,
            tau,
            epsilon: config.epsilon,
            n_max: config.n_max,
            delta,
            seed: o.seed,
            iterations: r.iterations,
            final_error: r.final_error,
            error_magic: r.error_magic,
            error_comm: r.error_comm,
            max_commutator: r.max_commutator,
            witness: r
                .witness
                .map(|((i, j), (k, l))| [[i + 1, j + 1], [k + 1, l + 1]]),
            classification: r.classification,
            status: r.status,
            wall_time_s: r.wall_time.as_secs_f64(),
        }
    }
}

/// Batch summary as written to `summary.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryDocument {
    pub graph: String,
    pub n: usize,
    pub tau: Option<f64>,
    pub epsilon: f64,
    pub n_max: usize,
    /// Commutator threshold applied after clamping.
    pub delta: f64,
    pub seed: u64,
    #[serde(flatten)]
    pub summary: BatchSummary,
    pub warnings: Vec<String>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Graph(String),
    Output(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Graph(_) => EXIT_GRAPH,
            Failure::Output(_) => EXIT_OUTPUT,
        }
    }
}

fn output_error(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure::Output(format!("cannot write {}: {e}", path.display()))
}

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Magic(a) => cmd_magic(a),
        Command::Qsym(a) => cmd_qsym(a),
        Command::GraphInfo(a) => cmd_graph_info(a),
        Command::Reproduce(a) => cmd_reproduce(a),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            match &f {
                Failure::Usage(m) | Failure::Graph(m) | Failure::Output(m) => {
                    eprintln!("error: {m}")
                }
            }
            f.code()
        }
    }
}

/// Resolves a catalog name, or `@path` to an adjacency file.
pub fn resolve_graph(spec: &str) -> Result<Graph, GraphError> {
    match spec.strip_prefix('@') {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| GraphError::Parse {
                line: 0,
                message: format!("cannot read {path}: {e}"),
            })?;
            let name = Path::new(path)
                .file_stem()
                .map_or_else(|| path.to_string(), |s| s.to_string_lossy().into_owned());
            Ok(parse_adjacency(&text)?.with_name(name))
        }
        None => catalog(spec),
    }
}

fn graph_or_exit(spec: &str) -> Result<Graph, Failure> {
    resolve_graph(spec).map_err(|e| Failure::Graph(e.to_string()))
}

fn checked_config(config: RunConfig) -> Result<RunConfig, Failure> {
    config
        .validate()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(config)
}

fn write_batch(
    out: &Path,
    records: &[RunRecord],
    document: &SummaryDocument,
) -> Result<(), Failure> {
    fs::create_dir_all(out).map_err(|e| output_error(out, e))?;
    let runs_path = out.join("runs.jsonl");
    let mut lines = String::new();
    for r in records {
        lines.push_str(&serde_json::to_string(r).expect("records serialize"));
        lines.push('\n');
    }
    fs::write(&runs_path, lines).map_err(|e| output_error(&runs_path, e))?;

    let summary_path = out.join("summary.json");
    let body = serde_json::to_string_pretty(document).expect("summaries serialize");
    fs::write(&summary_path, body + "\n").map_err(|e| output_error(&summary_path, e))?;

    let hist_path = out.join("histogram.csv");
    let mut w = csv::Writer::from_path(&hist_path).map_err(|e| output_error(&hist_path, e))?;
    for b in &document.summary.histogram {
        w.serialize(b).map_err(|e| output_error(&hist_path, e))?;
    }
    w.flush().map_err(|e| output_error(&hist_path, e))
}

fn print_summary(document: &SummaryDocument) {
    let s = &document.summary;
    let mean = s
        .mean_iterations
        .map_or_else(|| "-".to_string(), |m| format!("{m:.2}"));
    println!(
        "{}: {} runs, {} successes, failure rate {:.4}, mean iterations {}, noncommutative {}, prediction {}",
        document.graph, s.runs, s.successes, s.failure_rate, mean, s.noncommutative_successes, s.prediction
    );
    for w in &document.warnings {
        eprintln!("warning: {w}");
    }
}

fn cmd_magic(a: MagicArgs) -> Result<(), Failure> {
    if a.runs == 0 {
        return Err(Failure::Usage("--runs must be at least 1".into()));
    }
    let config = checked_config(RunConfig::new(a.epsilon, a.nmax).with_seed(a.seed))?;
    if a.n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    let delta = effective_delta(config.delta, config.epsilon);
    let batch = run_batch(None, a.n, &config, a.runs);
    let records: Vec<RunRecord> = batch
        .outcomes
        .iter()
        .map(|o| RunRecord::new("none", a.n, None, &config, delta.value, o))
        .collect();
    let mut warnings = Vec::new();
    if delta.thin_margin {
        warnings.push(thin_margin_warning(delta.value));
    }
    let document = SummaryDocument {
        graph: "none".into(),
        n: a.n,
        tau: None,
        epsilon: config.epsilon,
        n_max: config.n_max,
        delta: delta.value,
        seed: config.seed,
        summary: batch.summary,
        warnings,
    };
    if let Some(out) = &a.out {
        write_batch(out, &records, &document)?;
    }
    print_summary(&document);
    Ok(())
}

fn thin_margin_warning(delta: f64) -> String {
    format!("precision is coarse relative to the commutator threshold; classifying with delta = {delta}")
}

fn schur_warning(g: &Graph) -> Option<String> {
    match has_maximal_schur_set(g, DEFAULT_SEARCH_BUDGET) {
        Ok(Some(_)) => None,
        Ok(None) => Some(
            "graph has no maximal Schur set (not uniformly vertex transitive); rank-one solutions may not exist".into(),
        ),
        Err(_) => Some("maximal Schur set search exceeded its budget; applicability unknown".into()),
    }
}

/// Parses `start:end:step` into the grid `start, start + step, …, ≤ end`.
pub fn parse_tau_grid(spec: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [a, b, step] = parts.as_slice() else {
        return Err(format!("expected start:end:step, got {spec:?}"));
    };
    let parse = |s: &str| s.trim().parse::<f64>().map_err(|e| format!("{s:?}: {e}"));
    let (a, b, step) = (parse(a)?, parse(b)?, parse(step)?);
    if !(0.0..=1.0).contains(&a) || !(0.0..=1.0).contains(&b) || a > b {
        return Err("tau range must satisfy 0 <= start <= end <= 1".into());
    }
    if step.is_nan() || step <= 0.0 {
        return Err("tau step must be positive".into());
    }
    let count = ((b - a) / step + 1e-9).floor() as usize;
    // rounding keeps grid points like 0.3 exact in the output
    Ok((0..=count)
        .map(|k| ((a + k as f64 * step) * 1e12).round() / 1e12)
        .collect())
}

#[derive(Debug, Serialize)]
struct SweepRow {
    tau: f64,
    runs: usize,
    successes: usize,
    failure_rate: f64,
    mean_iterations: Option<f64>,
    noncommutative_successes: usize,
    prediction: Prediction,
}

fn cmd_qsym(a: QsymArgs) -> Result<(), Failure> {
    if a.runs == 0 {
        return Err(Failure::Usage("--runs must be at least 1".into()));
    }
    let grid = match &a.tau_sweep {
        Some(spec) => Some(parse_tau_grid(spec).map_err(Failure::Usage)?),
        None => None,
    };
    let base = RunConfig::new(a.epsilon, a.nmax)
        .with_tau(a.tau)
        .with_delta(a.delta)
        .with_seed(a.seed);
    let base = checked_config(base)?;
    let g = graph_or_exit(&a.graph)?;
    let name = g.name().unwrap_or("graph").to_string();
    let delta = effective_delta(base.delta, base.epsilon);

    let mut warnings = Vec::new();
    if let Some(w) = schur_warning(&g) {
        warnings.push(w);
    }
    if delta.thin_margin {
        warnings.push(thin_margin_warning(delta.value));
    }

    let Some(grid) = grid else {
        let batch = run_batch(Some(&g), g.n(), &base, a.runs);
        let records = batch_records(&name, &g, &base, delta.value, &batch);
        let document = SummaryDocument {
            graph: name,
            n: g.n(),
            tau: Some(base.tau),
            epsilon: base.epsilon,
            n_max: base.n_max,
            delta: delta.value,
            seed: base.seed,
            summary: batch.summary,
            warnings,
        };
        if let Some(out) = &a.out {
            write_batch(out, &records, &document)?;
        }
        print_summary(&document);
        return Ok(());
    };

    let mut rows = Vec::new();
    let mut records = Vec::new();
    for &tau in &grid {
        let config = base.with_tau(tau);
        let batch = run_batch(Some(&g), g.n(), &config, a.runs);
        records.extend(batch_records(&name, &g, &config, delta.value, &batch));
        let s = &batch.summary;
        println!(
            "tau {tau:.3}: {} successes of {}, mean iterations {}",
            s.successes,
            s.runs,
            s.mean_iterations
                .map_or_else(|| "-".into(), |m| format!("{m:.2}"))
        );
        rows.push(SweepRow {
            tau,
            runs: s.runs,
            successes: s.successes,
            failure_rate: s.failure_rate,
            mean_iterations: s.mean_iterations,
            noncommutative_successes: s.noncommutative_successes,
            prediction: s.prediction,
        });
    }
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    if let Some(out) = &a.out {
        fs::create_dir_all(out).map_err(|e| output_error(out, e))?;
        let runs_path = out.join("runs.jsonl");
        let mut f = fs::File::create(&runs_path).map_err(|e| output_error(&runs_path, e))?;
        for r in &records {
            writeln!(
                f,
                "{}",
                serde_json::to_string(r).expect("records serialize")
            )
            .map_err(|e| output_error(&runs_path, e))?;
        }
        let sweep_path = out.join("tau_sweep.csv");
        let mut w =
            csv::Writer::from_path(&sweep_path).map_err(|e| output_error(&sweep_path, e))?;
        for row in &rows {
            w.serialize(row).map_err(|e| output_error(&sweep_path, e))?;
        }
        w.flush().map_err(|e| output_error(&sweep_path, e))?;
    }
    Ok(())
}

fn batch_records(
    name: &str,
    g: &Graph,
    config: &RunConfig,
    delta: f64,
    batch: &Batch,
) -> Vec<RunRecord> {
    batch
        .outcomes
        .iter()
        .map(|o| RunRecord::new(name, g.n(), Some(config.tau), config, delta, o))
        .collect()
}

/// The `graph-info` report as a JSON value.
pub fn graph_info(g: &Graph, budget: u64) -> serde_json::Value {
    let unknown = json!("unknown");
    let (order, vt) = match automorphisms_with_budget(g, 0, budget) {
        Ok(auts) => {
            let vt = is_vertex_transitive(g, budget).map_or(unknown.clone(), |b| json!(b));
            (json!(auts.len()), vt)
        }
        Err(_) => (json!("budget_exceeded"), unknown.clone()),
    };
    let (uvt, schur) = match has_maximal_schur_set(g, budget) {
        Ok(Some(set)) => (
            json!(true),
            json!(set
                .iter()
                .map(|p| p.images().iter().map(|&i| i + 1).collect::<Vec<_>>())
                .collect::<Vec<_>>()),
        ),
        Ok(None) => (json!(false), serde_json::Value::Null),
        Err(_) => (unknown, serde_json::Value::Null),
    };
    json!({
        "graph": g.name().unwrap_or("graph"),
        "n": g.n(),
        "undirected": g.is_undirected(),
        "degree_sequence": g.degree_sequence(),
        "regular_degree": g.regular_degree(),
        "automorphism_group_order": order,
        "vertex_transitive": vt,
        "uniformly_vertex_transitive": uvt,
        "maximal_schur_set": schur,
    })
}

fn cmd_graph_info(a: GraphInfoArgs) -> Result<(), Failure> {
    let g = graph_or_exit(&a.graph)?;
    let info = graph_info(&g, a.budget);
    println!("{}", serde_json::to_string_pretty(&info).expect("json"));
    Ok(())
}

/// One computed row of the graph table next to its published values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphTableRow {
    pub graph: String,
    pub vertices: usize,
    pub automorphism_group_order: Option<usize>,
    pub epsilon: f64,
    pub tau: f64,
    pub n_max: usize,
    pub runs: usize,
    pub successes: usize,
    pub failure_rate: f64,
    pub mean_iterations: Option<f64>,
    pub reference_mean_iterations: f64,
    pub noncommutative_successes: usize,
    pub max_commutator: Option<f64>,
    pub prediction: Prediction,
    pub reference_prediction: Prediction,
    pub matches: bool,
}

/// Runs the graph table at its reference parameters with at least `runs`
/// runs per graph (extended up to four times that while inconclusive).
/// An empty `only` selects every graph.
pub fn reproduce_graph_table(
    runs: usize,
    seed: u64,
    only: &[String],
) -> Result<Vec<GraphTableRow>, GraphError> {
    let mut rows = Vec::new();
    for reference in GRAPH_TABLE
        .iter()
        .filter(|r| only.is_empty() || only.iter().any(|o| o == r.name))
    {
        let g = catalog(reference.name)?;
        let config = RunConfig::new(reference.epsilon, GRAPH_N_MAX)
            .with_tau(reference.tau)
            .with_seed(seed);
        let batch = run_batch_until_decisive(Some(&g), g.n(), &config, runs, 4 * runs);
        let s = batch.summary;
        let order = automorphisms_with_budget(&g, 0, DEFAULT_SEARCH_BUDGET)
            .ok()
            .map(|a| a.len());
        let row = GraphTableRow {
            graph: reference.name.to_string(),
            vertices: g.n(),
            automorphism_group_order: order,
            epsilon: reference.epsilon,
            tau: reference.tau,
            n_max: GRAPH_N_MAX,
            runs: s.runs,
            successes: s.successes,
            failure_rate: s.failure_rate,
            mean_iterations: s.mean_iterations,
            reference_mean_iterations: reference.mean_iterations,
            noncommutative_successes: s.noncommutative_successes,
            max_commutator: s.max_commutator,
            prediction: s.prediction,
            reference_prediction: reference.prediction,
            matches: s.prediction == reference.prediction,
        };
        eprintln!(
            "{}: {} runs, {} successes, prediction {} (reference {})",
            row.graph, row.runs, row.successes, row.prediction, row.reference_prediction
        );
        rows.push(row);
    }
    Ok(rows)
}

/// One computed row of the failure-rate table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FailureTableRow {
    pub n: usize,
    pub epsilon: f64,
    pub n_max: usize,
    pub runs: usize,
    pub failures: usize,
    pub failure_rate: f64,
    pub reference_failure_rate: f64,
    pub mean_iterations: Option<f64>,
}

pub fn reproduce_failure_table(runs: usize, seed: u64) -> Vec<FailureTableRow> {
    FAILURE_RATES
        .iter()
        .map(|reference| {
            let config = RunConfig::new(reference.epsilon, reference.n_max).with_seed(seed);
            let s = run_batch(None, reference.n, &config, runs).summary;
            FailureTableRow {
                n: reference.n,
                epsilon: reference.epsilon,
                n_max: reference.n_max,
                runs: s.runs,
                failures: s.failures,
                failure_rate: s.failure_rate,
                reference_failure_rate: reference.failure_rate,
                mean_iterations: s.mean_iterations,
            }
        })
        .collect()
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".into(), |m| format!("{m:.2}"))
}

pub fn render_graph_table(rows: &[GraphTableRow]) -> String {
    let mut s = format!(
        "{:<14} {:>3} {:>5} {:>7} {:>4} {:>5} {:>5} {:>9} {:>9} {:>5} {:>4}\n",
        "graph",
        "|V|",
        "|Aut|",
        "eps",
        "tau",
        "runs",
        "succ",
        "avg.iter",
        "ref.iter",
        "pred",
        "ref"
    );
    for r in rows {
        let order = r
            .automorphism_group_order
            .map_or_else(|| "?".into(), |o| o.to_string());
        let _ = writeln!(
            s,
            "{:<14} {:>3} {:>5} {:>7.0e} {:>4} {:>5} {:>5} {:>9} {:>9.2} {:>5} {:>4}",
            r.graph,
            r.vertices,
            order,
            r.epsilon,
            r.tau,
            r.runs,
            r.successes,
            fmt_opt(r.mean_iterations),
            r.reference_mean_iterations,
            r.prediction.to_string(),
            r.reference_prediction.to_string(),
        );
    }
    s
}

pub fn render_failure_table(rows: &[FailureTableRow]) -> String {
    let mut s = format!(
        "{:>2} {:>7} {:>5} {:>5} {:>8} {:>9} {:>9}\n",
        "n", "eps", "N_max", "runs", "failures", "P(fail)", "reference"
    );
    for r in rows {
        let _ = writeln!(
            s,
            "{:>2} {:>7.0e} {:>5} {:>5} {:>8} {:>8.1}% {:>8.1}%",
            r.n,
            r.epsilon,
            r.n_max,
            r.runs,
            r.failures,
            100.0 * r.failure_rate,
            100.0 * r.reference_failure_rate
        );
    }
    s
}

fn write_table<T: Serialize>(
    out: &Path,
    stem: &str,
    rows: &[T],
    text: &str,
) -> Result<(), Failure> {
    fs::create_dir_all(out).map_err(|e| output_error(out, e))?;
    let csv_path = out.join(format!("{stem}.csv"));
    let mut w = csv::Writer::from_path(&csv_path).map_err(|e| output_error(&csv_path, e))?;
    for r in rows {
        w.serialize(r).map_err(|e| output_error(&csv_path, e))?;
    }
    w.flush().map_err(|e| output_error(&csv_path, e))?;
    let text_path = out.join(format!("{stem}.txt"));
    fs::write(&text_path, text).map_err(|e| output_error(&text_path, e))
}

fn cmd_reproduce(a: ReproduceArgs) -> Result<(), Failure> {
    if a.runs == Some(0) {
        return Err(Failure::Usage("--runs must be at least 1".into()));
    }
    match a.table {
        Table::Table1 => {
            for name in &a.graphs {
                if !GRAPH_TABLE.iter().any(|r| r.name == name) {
                    return Err(Failure::Graph(format!("{name} is not in the graph table")));
                }
            }
            let rows = reproduce_graph_table(a.runs.unwrap_or(50), a.seed, &a.graphs)
                .map_err(|e| Failure::Graph(e.to_string()))?;
            let text = render_graph_table(&rows);
            if let Some(out) = &a.out {
                write_table(out, "table1", &rows, &text)?;
            }
            print!("{text}");
        }
        Table::Table2 => {
            if !a.graphs.is_empty() {
                return Err(Failure::Usage("--graphs applies to table1 only".into()));
            }
            let rows = reproduce_failure_table(a.runs.unwrap_or(1000), a.seed);
            let text = render_failure_table(&rows);
            if let Some(out) = &a.out {
                write_table(out, "table2", &rows, &text)?;
            }
            print!("{text}");
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_grid_hits_tenths_exactly() {
        let grid = parse_tau_grid("0:1:0.1").unwrap();
        assert_eq!(grid.len(), 11);
        assert_eq!(grid[3], 0.3);
        assert_eq!(grid[10], 1.0);
        assert_eq!(parse_tau_grid("0.5:0.5:0.1").unwrap(), vec![0.5]);
    }

    #[test]
    fn tau_grid_rejects_bad_specs() {
        assert!(parse_tau_grid("0:1").is_err());
        assert!(parse_tau_grid("0.6:0.2:0.1").is_err());
        assert!(parse_tau_grid("0:1:0").is_err());
        assert!(parse_tau_grid("0:2:0.5").is_err());
        assert!(parse_tau_grid("a:1:0.1").is_err());
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(["qsinkhorn", "magic"]), EXIT_USAGE);
        assert_eq!(
            run(["qsinkhorn", "magic", "--n", "3", "--bogus"]),
            EXIT_USAGE
        );
        assert_eq!(
            run(["qsinkhorn", "magic", "--n", "3", "--epsilon", "-1"]),
            EXIT_USAGE
        );
        assert_eq!(
            run(["qsinkhorn", "magic", "--n", "3", "--runs", "0"]),
            EXIT_USAGE
        );
        assert_eq!(
            run(["qsinkhorn", "qsym", "--graph", "k4", "--tau", "1.5"]),
            EXIT_USAGE
        );
    }

    #[test]
    fn unknown_graph_exits_3() {
        assert_eq!(
            run(["qsinkhorn", "qsym", "--graph", "nonesuch"]),
            EXIT_GRAPH
        );
        assert_eq!(
            run(["qsinkhorn", "graph-info", "--graph", "@/nonexistent/file"]),
            EXIT_GRAPH
        );
    }

    #[test]
    fn record_witness_is_one_based() {
        let config = RunConfig::new(1e-8, 100).with_seed(5);
        let batch = run_batch(None, 4, &config, 1);
        let record = RunRecord::new("none", 4, None, &config, 0.05, &batch.outcomes[0]);
        let w = record.witness.unwrap();
        assert!(w.iter().flatten().all(|&i| (1..=4).contains(&i)));
        let line = serde_json::to_string(&record).unwrap();
        assert_eq!(serde_json::from_str::<RunRecord>(&line).unwrap(), record);
    }
}
