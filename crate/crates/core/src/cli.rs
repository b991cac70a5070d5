//! The `mlc` command line: `solve`, `verify` and `bench`.
//!
//! Reports are `key: value` lines by default, or a JSON object with
//! `--json`. Exit codes: 0 success, 1 bad arguments or unreadable input,
//! 2 malformed input file, 3 a solver result failed re-validation,
//! 4 (`verify` only) the claimed witness is invalid.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, CommandFactory, Parser, Subcommand};
use serde::Serialize;

use crate::graph::{Graph, LabelledGraph};
use crate::io::{self, BudgetSpec, LabelSource, LoadError};
use crate::solver::{solve, solve_parallel, Solution};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_INVALID_WITNESS: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "mlc", version, about = "Maximum labelled clique solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve one instance and print a report.
    Solve(SolveArgs),
    /// Check a claimed clique against an instance and budget.
    Verify(VerifyArgs),
    /// Average size, cost and run times over seeded label samples.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
struct LabelArgs {
    /// Number of random labels.
    #[arg(long = "labels", value_name = "K", conflicts_with = "label_file")]
    num_labels: Option<usize>,
    /// Seed for random labels.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Label file with `l u v k` lines.
    #[arg(long, value_name = "PATH")]
    label_file: Option<PathBuf>,
}

impl LabelArgs {
    fn source(&self) -> Result<LabelSource, String> {
        match (&self.label_file, self.num_labels) {
            (Some(path), _) => Ok(LabelSource::File(path.clone())),
            (None, Some(k)) => Ok(LabelSource::Random {
                num_labels: k,
                seed: self.seed,
            }),
            (None, None) => Err("one of --labels or --label-file is required".into()),
        }
    }
}

#[derive(Debug, Args)]
struct BudgetArgs {
    /// Maximum number of distinct labels.
    #[arg(long, conflicts_with = "budget_pct")]
    budget: Option<u32>,
    /// Budget as a percentage of the label count, rounded half away from zero.
    #[arg(long, value_name = "P")]
    budget_pct: Option<u32>,
}

impl BudgetArgs {
    fn spec(&self) -> Result<BudgetSpec, String> {
        match (self.budget, self.budget_pct) {
            (Some(b), _) => Ok(BudgetSpec::Absolute(b)),
            (None, Some(p)) => Ok(BudgetSpec::Percent(p)),
            (None, None) => Err("one of --budget or --budget-pct is required".into()),
        }
    }
}

#[derive(Debug, Args)]
struct SolveArgs {
    /// DIMACS graph file.
    graph: PathBuf,
    #[command(flatten)]
    labels: LabelArgs,
    #[command(flatten)]
    budget: BudgetArgs,
    /// Worker threads; 1 selects the sequential solver. Defaults to the
    /// available hardware parallelism.
    #[arg(long)]
    threads: Option<usize>,
    /// Print a JSON object instead of key/value lines.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    graph: PathBuf,
    #[command(flatten)]
    labels: LabelArgs,
    #[command(flatten)]
    budget: BudgetArgs,
    /// Claimed clique, 1-based, comma separated.
    #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
    witness: Vec<usize>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// DIMACS graph files.
    #[arg(required = true)]
    graphs: Vec<PathBuf>,
    /// Label counts to try, comma separated.
    #[arg(long = "labels", value_name = "K", value_delimiter = ',', conflicts_with = "label_file")]
    num_labels: Vec<usize>,
    /// Fixed labels instead of random ones (single graph only).
    #[arg(long, value_name = "PATH")]
    label_file: Option<PathBuf>,
    /// Budget percentages, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [25, 50, 75])]
    budget_pct: Vec<u32>,
    #[arg(long, default_value_t = 100)]
    samples: u64,
    /// Sample `i` uses seed `seed + i`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads for the parallel column.
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    json: bool,
}

/// One solved instance, as printed by `solve`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub num_labels: usize,
    pub budget: u32,
    pub size: usize,
    pub cost: u32,
    /// 1-based.
    pub witness: Vec<usize>,
    /// 1-based.
    pub witness_labels: Vec<u8>,
    pub nodes_pass1: u64,
    pub nodes_pass2: u64,
    pub elapsed_seconds: f64,
    pub mode: &'static str,
    pub workers: usize,
    pub steals: u64,
    pub seed: Option<u64>,
}

impl RunReport {
    pub fn new(
        instance: &str,
        g: &LabelledGraph,
        budget: u32,
        seed: Option<u64>,
        s: &Solution,
        mode: &'static str,
    ) -> Self {
        RunReport {
            instance: instance.to_string(),
            n: g.n(),
            m: g.graph().m(),
            num_labels: g.num_labels(),
            budget,
            size: s.size,
            cost: s.cost,
            witness: s.clique.iter().map(|v| v + 1).collect(),
            witness_labels: s.labels.iter().map(|l| l + 1).collect(),
            nodes_pass1: s.stats.nodes_pass1,
            nodes_pass2: s.stats.nodes_pass2,
            elapsed_seconds: s.stats.elapsed,
            mode,
            workers: s.stats.workers,
            steals: s.stats.steals,
            seed,
        }
    }

    /// `key: value` lines in a fixed order.
    pub fn to_lines(&self) -> String {
        let join = |xs: &[usize]| xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        let labels: Vec<usize> = self.witness_labels.iter().map(|&l| l as usize).collect();
        let mut out = String::new();
        let mut kv = |k: &str, v: String| out.push_str(&format!("{k}: {v}\n"));
        kv("instance", self.instance.clone());
        kv("n", self.n.to_string());
        kv("m", self.m.to_string());
        kv("num_labels", self.num_labels.to_string());
        kv("budget", self.budget.to_string());
        kv("size", self.size.to_string());
        kv("cost", self.cost.to_string());
        kv("witness", join(&self.witness));
        kv("witness_labels", join(&labels));
        kv("nodes_pass1", self.nodes_pass1.to_string());
        kv("nodes_pass2", self.nodes_pass2.to_string());
        kv("elapsed_seconds", format!("{:.6}", self.elapsed_seconds));
        kv("mode", self.mode.to_string());
        kv("workers", self.workers.to_string());
        kv("steals", self.steals.to_string());
        kv(
            "seed",
            self.seed.map_or_else(|| "none".to_string(), |s| s.to_string()),
        );
        out
    }
}

/// Mean of one (instance, label count, budget percentage) cell of `bench`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub instance: String,
    pub num_labels: usize,
    pub budget_pct: Option<u32>,
    pub budget: u32,
    pub samples: u64,
    pub mean_size: f64,
    pub mean_cost: f64,
    pub mean_seq_seconds: f64,
    pub mean_par_seconds: f64,
    pub workers: usize,
}

impl BenchRow {
    pub const HEADER: &'static str =
        "instance\tlabels\tpct\tbudget\tsamples\tsize\tcost\tt_seq\tt_par\tworkers";

    pub fn to_line(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{:.2}\t{:.2}\t{:.4}\t{:.4}\t{}",
            self.instance,
            self.num_labels,
            self.budget_pct.map_or_else(|| "-".to_string(), |p| p.to_string()),
            self.budget,
            self.samples,
            self.mean_size,
            self.mean_cost,
            self.mean_seq_seconds,
            self.mean_par_seconds,
            self.workers
        )
    }
}

/// Why a witness fails.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WitnessError {
    #[error("vertex {vertex} outside 1..={n}")]
    OutOfRange { vertex: usize, n: usize },
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("cost {cost} exceeds budget {budget}")]
    OverBudget { cost: u32, budget: u32 },
}

/// Checks a 1-based witness; returns its cost.
pub fn check_witness(g: &LabelledGraph, witness: &[usize], budget: u32) -> Result<u32, WitnessError> {
    let n = g.n();
    if let Some(&v) = witness.iter().find(|&&v| v == 0 || v > n) {
        return Err(WitnessError::OutOfRange { vertex: v, n });
    }
    let zero: Vec<usize> = witness.iter().map(|v| v - 1).collect();
    if let Some((u, v)) = g.graph().non_adjacent_pair(&zero) {
        return Err(WitnessError::NotAdjacent(u + 1, v + 1));
    }
    let (_, cost) = g.clique_cost(&zero).expect("pairwise adjacent");
    if cost > budget {
        return Err(WitnessError::OverBudget { cost, budget });
    }
    Ok(cost)
}

fn default_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Runs the sequential solver for one thread, the parallel one otherwise.
pub fn solve_with(g: &LabelledGraph, budget: u32, threads: usize) -> Result<(Solution, &'static str), String> {
    if threads == 1 {
        solve(g, budget).map(|s| (s, "sequential")).map_err(|e| e.to_string())
    } else {
        solve_parallel(g, budget, threads)
            .map(|s| (s, "parallel"))
            .map_err(|e| e.to_string())
    }
}

struct Failure {
    code: i32,
    message: String,
    usage: bool,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
            usage: true,
        }
    }

    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
            usage: false,
        }
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Io { .. } => Failure::usage(e.to_string()),
            LoadError::Parse { .. } => Failure::new(EXIT_PARSE, e.to_string()),
            LoadError::Graph(_) | LoadError::Budget(_) => Failure::new(EXIT_USAGE, e.to_string()),
        }
    }
}

/// Entry point shared by the binary and the tests.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let result = match &cli.command {
        Command::Solve(args) => run_solve(args, out, err),
        Command::Verify(args) => run_verify(args, out),
        Command::Bench(args) => run_bench(args, out, err),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            if f.usage {
                let _ = writeln!(err, "{}", Cli::command().render_usage());
            }
            f.code
        }
    }
}

fn load(graph: &std::path::Path, labels: &LabelArgs, budget: &BudgetArgs, err: &mut dyn Write) -> Result<io::Instance, Failure> {
    let spec = io::InstanceSpec {
        graph: graph.to_path_buf(),
        labels: labels.source().map_err(Failure::usage)?,
        budget: budget.spec().map_err(Failure::usage)?,
    };
    let instance = spec.load()?;
    for w in &instance.warnings {
        let _ = writeln!(err, "warning: {}: {w}", graph.display());
    }
    Ok(instance)
}

fn run_solve(args: &SolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let instance = load(&args.graph, &args.labels, &args.budget, err)?;
    let threads = args.threads.unwrap_or_else(default_threads);
    if threads == 0 {
        return Err(Failure::usage("--threads must be at least 1"));
    }
    let (solution, mode) =
        solve_with(&instance.graph, instance.budget, threads).map_err(Failure::usage)?;
    let report = RunReport::new(
        &instance.name,
        &instance.graph,
        instance.budget,
        instance.seed,
        &solution,
        mode,
    );
    if let Err(e) = check_witness(&instance.graph, &report.witness, instance.budget) {
        return Err(Failure::new(EXIT_VALIDATION, format!("solver witness failed re-check: {e}")));
    }
    if report.cost != solution.labels.cost() {
        return Err(Failure::new(EXIT_VALIDATION, "solver cost disagrees with its label set"));
    }
    let text = if args.json {
        serde_json::to_string_pretty(&report).expect("report serialises") + "\n"
    } else {
        report.to_lines()
    };
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
    Ok(EXIT_OK)
}

fn run_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut sink = std::io::sink();
    let instance = load(&args.graph, &args.labels, &args.budget, &mut sink)?;
    match check_witness(&instance.graph, &args.witness, instance.budget) {
        Ok(cost) => {
            let _ = write!(
                out,
                "valid: true\nsize: {}\ncost: {cost}\nbudget: {}\n",
                args.witness.len(),
                instance.budget
            );
            Ok(EXIT_OK)
        }
        Err(e) => {
            let _ = writeln!(out, "valid: false");
            Err(Failure::new(EXIT_INVALID_WITNESS, format!("invalid witness: {e}")))
        }
    }
}

/// Cells for one graph: (label count or file, budget pct) pairs.
fn bench_graph(
    args: &BenchArgs,
    path: &std::path::Path,
    graph: &Graph,
    threads: usize,
) -> Result<Vec<BenchRow>, Failure> {
    let name = io::instance_name(path);
    let mut rows = Vec::new();
    let fixed = match &args.label_file {
        Some(file) => Some(io::attach_labels(graph, &LabelSource::File(file.clone()))?),
        None => None,
    };
    let label_counts: Vec<usize> = match &fixed {
        Some(g) => vec![g.num_labels()],
        None => args.num_labels.clone(),
    };
    for &k in &label_counts {
        for &pct in &args.budget_pct {
            let budget = io::resolve_budget(BudgetSpec::Percent(pct), k).map_err(|e| Failure::usage(e.to_string()))?;
            let (mut size, mut cost) = (0u64, 0u64);
            let (mut t_seq, mut t_par) = (Duration::ZERO, Duration::ZERO);
            for sample in 0..args.samples {
                let labelled = match &fixed {
                    Some(g) => g.clone(),
                    None => io::random_labels(graph, k, args.seed.wrapping_add(sample))
                        .map_err(|e| Failure::usage(e.to_string()))?,
                };
                let seq = solve(&labelled, budget).map_err(|e| Failure::usage(e.to_string()))?;
                let par = solve_parallel(&labelled, budget, threads).map_err(|e| Failure::usage(e.to_string()))?;
                for s in [&seq, &par] {
                    let witness: Vec<usize> = s.clique.iter().map(|v| v + 1).collect();
                    if let Err(e) = check_witness(&labelled, &witness, budget) {
                        return Err(Failure::new(EXIT_VALIDATION, format!("{name} sample {sample}: {e}")));
                    }
                }
                if (seq.size, seq.cost) != (par.size, par.cost) {
                    return Err(Failure::new(
                        EXIT_VALIDATION,
                        format!(
                            "{name} sample {sample}: sequential ({}, {}) and parallel ({}, {}) disagree",
                            seq.size, seq.cost, par.size, par.cost
                        ),
                    ));
                }
                size += seq.size as u64;
                cost += u64::from(seq.cost);
                t_seq += Duration::from_secs_f64(seq.stats.elapsed);
                t_par += Duration::from_secs_f64(par.stats.elapsed);
            }
            let samples = args.samples.max(1) as f64;
            rows.push(BenchRow {
                instance: name.clone(),
                num_labels: k,
                budget_pct: Some(pct),
                budget,
                samples: args.samples,
                mean_size: size as f64 / samples,
                mean_cost: cost as f64 / samples,
                mean_seq_seconds: t_seq.as_secs_f64() / samples,
                mean_par_seconds: t_par.as_secs_f64() / samples,
                workers: threads,
            });
        }
    }
    Ok(rows)
}

fn run_bench(args: &BenchArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    if args.label_file.is_none() && args.num_labels.is_empty() {
        return Err(Failure::usage("one of --labels or --label-file is required"));
    }
    if args.label_file.is_some() && args.graphs.len() > 1 {
        return Err(Failure::usage("--label-file applies to a single graph"));
    }
    let threads = args.threads.unwrap_or_else(default_threads);
    if threads == 0 {
        return Err(Failure::usage("--threads must be at least 1"));
    }
    let mut rows = Vec::new();
    if !args.json {
        let _ = writeln!(out, "{}", BenchRow::HEADER);
    }
    for path in &args.graphs {
        let dimacs = io::load_dimacs(path)?;
        for w in &dimacs.warnings {
            let _ = writeln!(err, "warning: {}: {w}", path.display());
        }
        for row in bench_graph(args, path, &dimacs.graph, threads)? {
            if !args.json {
                let _ = writeln!(out, "{}", row.to_line());
            }
            rows.push(row);
        }
    }
    if args.json {
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&rows).expect("rows serialise"));
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn witness_checks() {
        let g = fixtures::seven();
        assert_eq!(check_witness(&g, &[4, 5, 6, 7], 3), Ok(2));
        assert_eq!(
            check_witness(&g, &[1, 2, 3, 4, 5], 3),
            Err(WitnessError::OverBudget { cost: 4, budget: 3 })
        );
        assert_eq!(check_witness(&g, &[1, 6], 3), Err(WitnessError::NotAdjacent(1, 6)));
        assert_eq!(check_witness(&g, &[8], 3), Err(WitnessError::OutOfRange { vertex: 8, n: 7 }));
        assert_eq!(check_witness(&g, &[2, 2], 3), Err(WitnessError::NotAdjacent(2, 2)));
        assert_eq!(check_witness(&g, &[], 1), Ok(0));
    }

    #[test]
    fn report_lines_have_stable_keys() {
        let g = fixtures::seven();
        let s = solve(&g, 3).unwrap();
        let text = RunReport::new("seven", &g, 3, None, &s, "sequential").to_lines();
        let keys: Vec<_> = text.lines().map(|l| l.split(':').next().unwrap()).collect();
        assert_eq!(
            keys,
            [
                "instance", "n", "m", "num_labels", "budget", "size", "cost", "witness",
                "witness_labels", "nodes_pass1", "nodes_pass2", "elapsed_seconds", "mode",
                "workers", "steals", "seed"
            ]
        );
        assert!(text.contains("witness: 4 5 6 7\n"));
        assert!(text.contains("witness_labels: 2 3\n"));
    }
}
