//! `spacing`: generate, solve, benchmark, check and reduce.
//!
//! Exit codes: 0 sat or ok, 1 unsat or failed check, 2 timeout, 64 usage,
//! 65 bad input data.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use spacing::bench::{full_grid, run_bench, BenchConfig};
use spacing::checks::{self, CheckConfig, Suite};
use spacing::rhythm::models::patterns_to_sequence;
use spacing::rhythm::{decode, generate_extended, Model, ModelKind, RhythmInstance};
use spacing::sat::{extract_model, parse_dimacs, reduce, ReducedInstance, ReductionKind};
use spacing::{Heuristic, Limits, Value, Verdict};

const EXIT_UNSAT: u8 = 1;
const EXIT_TIMEOUT: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;

#[derive(Parser)]
#[command(name = "spacing", version, about = "Spacing constraints, rhythm models and SAT-derived instances")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random rhythm instance.
    Gen(GenArgs),
    /// Solve a rhythm or reduced instance.
    Solve(SolveArgs),
    /// Run the benchmark grid and report per-cell statistics.
    Bench(BenchArgs),
    /// Run propagator-versus-oracle suites.
    Check(CheckArgs),
    /// Compile a DIMACS formula into a Spacing instance.
    Reduce(ReduceArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum HeuristicArg {
    /// Lowest-index variable, dummy value last.
    Static,
    /// Smallest domain first, dummy value last.
    FirstFail,
}

impl From<HeuristicArg> for Heuristic {
    fn from(h: HeuristicArg) -> Self {
        match h {
            HeuristicArg::Static => Heuristic::STATIC,
            HeuristicArg::FirstFail => Heuristic::default(),
        }
    }
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=8))]
    h: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    p1: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    kh: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Fraction of (position, onset) pairs to remove.
    #[arg(long, default_value_t = 0.0)]
    fraction: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    /// Rhythm instance or reduced instance (JSON).
    instance: PathBuf,
    #[arg(long, default_value = "sr", value_parser = parse_model)]
    model: ModelKind,
    /// Enumerate every solution instead of stopping at the first.
    #[arg(long)]
    all: bool,
    /// Seconds before giving up.
    #[arg(long)]
    timeout: Option<f64>,
    #[arg(long, value_enum, default_value = "first-fail")]
    heuristic: HeuristicArg,
    /// Solutions printed at most.
    #[arg(long, default_value_t = 10)]
    show: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Grid cell `h,p1,kh`; repeat for several. Defaults to the 27-cell grid.
    #[arg(long = "cell", value_parser = parse_cell)]
    cells: Vec<(usize, usize, usize)>,
    #[arg(long, default_value_t = 10)]
    instances: usize,
    /// Seconds per solve.
    #[arg(long, default_value_t = 10.0)]
    timeout: f64,
    /// Models to run, comma separated.
    #[arg(long = "model", value_delimiter = ',', default_value = "sm,sb,sr", value_parser = parse_model)]
    models: Vec<ModelKind>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.0)]
    fraction: f64,
    #[arg(long, value_enum, default_value = "static")]
    heuristic: HeuristicArg,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Emit one row per solve instead of per-cell summaries (CSV only).
    #[arg(long)]
    records: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// Suite to run; repeat for several. Defaults to all but monotonicity.
    #[arg(long = "suite", value_parser = parse_suite)]
    suites: Vec<Suite>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest variable count in the reductions corpus.
    #[arg(long, default_value_t = 3)]
    max_v: usize,
    /// Seconds per solve (reductions and monotonicity).
    #[arg(long)]
    timeout: Option<f64>,
    /// Instances per grid cell for monotonicity.
    #[arg(long, default_value_t = 10)]
    instances: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct ReduceArgs {
    /// DIMACS CNF file.
    input: PathBuf,
    #[arg(long, value_parser = parse_kind)]
    kind: ReductionKind,
    /// Instance output; the mapping goes next to it as `<stem>.mapping.json`.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_model(s: &str) -> Result<ModelKind, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_kind(s: &str) -> Result<ReductionKind, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_cell(s: &str) -> Result<(usize, usize, usize), String> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|x| x.trim().parse().map_err(|_| format!("bad cell `{s}`")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [h, p1, kh] => Ok((h, p1, kh)),
        _ => Err(format!("cell `{s}` needs three numbers h,p1,kh")),
    }
}

fn seconds(s: f64) -> anyhow::Result<Duration> {
    Duration::try_from_secs_f64(s)
        .ok()
        .filter(|d| !d.is_zero())
        .ok_or_else(|| anyhow!("timeout must be a positive number of seconds"))
}

enum Failure {
    Usage(anyhow::Error),
    Data(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Data(e)
    }
}

type Outcome = Result<u8, Failure>;

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn cmd_gen(a: GenArgs) -> Outcome {
    if !(0.0..1.0).contains(&a.fraction) {
        return Err(Failure::Usage(anyhow!("--fraction must lie in [0, 1)")));
    }
    let inst = generate_extended(a.h as usize, a.p1 as usize, a.kh as usize, a.seed, a.fraction)
        .map_err(|e| Failure::Usage(e.into()))?;
    let json = inst.to_json() + "\n";
    let mut summary = format!("n = {}, {} removed pairs\n", inst.n, inst.removed.len());
    for (l, v) in inst.voices.iter().enumerate() {
        summary += &format!("voice {}: p = {}, k = {}, m = {}\n", l + 1, v.p, v.k, v.m);
    }
    match &a.out {
        Some(path) => {
            emit(Some(path), &json)?;
            print!("{summary}");
        }
        None => {
            print!("{json}");
            eprint!("{summary}");
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct SolveReport {
    status: &'static str,
    model: String,
    solution_count: u64,
    solutions: Vec<Vec<Value>>,
    backtracks: u64,
    nodes: u64,
    time_s: f64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    models: Vec<Vec<i32>>,
}

fn status_of(v: Verdict) -> (&'static str, u8) {
    match v {
        Verdict::Sat => ("sat", 0),
        Verdict::Unsat => ("unsat", EXIT_UNSAT),
        Verdict::Unknown => ("timeout", EXIT_TIMEOUT),
    }
}

fn cmd_solve(a: SolveArgs) -> Outcome {
    let text = read(&a.instance)?;
    let mut limits = if a.all { Limits::default() } else { Limits::first_solution() };
    limits.keep_solutions = a.show;
    if let Some(t) = a.timeout {
        limits.timeout = Some(seconds(t).map_err(Failure::Usage)?);
    }
    let value: serde_json::Value = serde_json::from_str(&text).context("instance is not JSON")?;
    let (report, lines) = if value.get("voices").is_some() {
        let inst = RhythmInstance::from_json(&text).map_err(anyhow::Error::from)?;
        let out = Model::build(&inst, a.model).solve(a.heuristic.into(), &limits);
        let (status, _) = status_of(out.verdict());
        let mut lines = Vec::new();
        for (i, sol) in out.solutions.iter().enumerate() {
            let patterns = decode(sol, &inst, a.model).map_err(anyhow::Error::from)?;
            let seq = if a.model == ModelKind::Sb { sol.clone() } else { patterns_to_sequence(&patterns, &inst) };
            lines.push(format!("solution {}: {}", i + 1, join(&seq)));
            for (l, p) in patterns.iter().enumerate() {
                let beats: Vec<String> = p.iter().map(|(b, d)| format!("{b}:{d}")).collect();
                lines.push(format!("  voice {}: {}", l + 1, beats.join(" ")));
            }
        }
        let report = SolveReport {
            status,
            model: a.model.to_string(),
            solution_count: out.solution_count,
            solutions: out.solutions,
            backtracks: out.backtracks,
            nodes: out.nodes,
            time_s: out.wall_time,
            models: Vec::new(),
        };
        (report, lines)
    } else {
        let inst: ReducedInstance = serde_json::from_str(&text).context("neither a rhythm nor a reduced instance")?;
        let out = inst.solve(&limits);
        let (status, _) = status_of(out.verdict());
        let mut lines = Vec::new();
        let mut models = Vec::new();
        for (i, sol) in out.solutions.iter().enumerate() {
            let labels: Vec<&str> = sol.iter().map(|&v| inst.label_of(v).unwrap_or("0")).collect();
            lines.push(format!("support {}: {}", i + 1, labels.join(" ")));
            let m = extract_model(sol, &inst).map_err(anyhow::Error::from)?;
            lines.push(format!("  model: {}", join(&m)));
            models.push(m);
        }
        let report = SolveReport {
            status,
            model: inst.kind.to_string(),
            solution_count: out.solution_count,
            solutions: out.solutions,
            backtracks: out.backtracks,
            nodes: out.nodes,
            time_s: out.wall_time,
            models,
        };
        (report, lines)
    };
    let code = match report.status {
        "sat" => 0,
        "unsat" => EXIT_UNSAT,
        _ => EXIT_TIMEOUT,
    };
    let body = match a.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        _ => {
            let mut s = format!("{}: {}\n", report.model, report.status);
            for l in lines {
                s += &l;
                s.push('\n');
            }
            s += &format!(
                "solutions {}, backtracks {}, nodes {}, time {:.3}s\n",
                report.solution_count, report.backtracks, report.nodes, report.time_s
            );
            s
        }
    };
    emit(a.out.as_deref(), &body)?;
    Ok(code)
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn cmd_bench(a: BenchArgs) -> Outcome {
    if a.instances == 0 {
        return Err(Failure::Usage(anyhow!("--instances must be positive")));
    }
    let cfg = BenchConfig {
        grid: if a.cells.is_empty() { full_grid() } else { a.cells },
        instances: a.instances,
        timeout: seconds(a.timeout).map_err(Failure::Usage)?,
        models: a.models,
        seed: a.seed,
        fraction: a.fraction,
        heuristic: a.heuristic.into(),
        threads: a.threads.max(1),
    };
    let report = run_bench(&cfg).map_err(|e| Failure::Usage(e.into()))?;
    let body = match (a.format, a.records) {
        (Format::Json, _) => report.to_json() + "\n",
        (_, true) => report.records_csv(),
        _ => report.cells_csv(),
    };
    emit(a.out.as_deref(), &body)?;
    Ok(0)
}

fn cmd_check(a: CheckArgs) -> Outcome {
    let mut cfg = CheckConfig {
        seed: a.seed,
        trials: a.trials,
        max_v: a.max_v,
        bench_instances: a.instances,
        ..CheckConfig::default()
    };
    if let Some(t) = a.timeout {
        let d = seconds(t).map_err(Failure::Usage)?;
        cfg.reduction_timeout = d;
        cfg.bench_timeout = d;
    }
    let suites = if a.suites.is_empty() {
        Suite::ALL.into_iter().filter(|&s| s != Suite::Monotonicity).collect()
    } else {
        a.suites
    };
    let reports: Vec<_> = suites.into_iter().map(|s| checks::run(s, &cfg)).collect();
    match a.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&reports).expect("reports serialize")),
        _ => reports.iter().for_each(|r| println!("{r}")),
    }
    Ok(if reports.iter().all(|r| r.passed()) { 0 } else { 1 })
}

fn mapping_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.mapping.json"))
}

fn cmd_reduce(a: ReduceArgs) -> Outcome {
    let cnf = parse_dimacs(&read(&a.input)?).with_context(|| format!("parsing {}", a.input.display()))?;
    let inst = reduce(&cnf, a.kind).context("reduction rejected the formula")?;
    let json = inst.to_json() + "\n";
    match &a.out {
        Some(path) => {
            emit(Some(path), &json)?;
            let map = mapping_path(path);
            emit(Some(&map), &(inst.mapping_json() + "\n"))?;
            println!(
                "{}: n = {}, {} values; mapping in {}",
                inst.kind,
                inst.n,
                inst.mapping.len(),
                map.display()
            );
        }
        None => print!("{json}"),
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Check(a) => cmd_check(a),
        Command::Reduce(a) => cmd_reduce(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Data(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_DATA)
        }
    }
}
