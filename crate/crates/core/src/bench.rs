//! Benchmark matrix over generated rhythm instances.

use std::fmt::Write as _;
use std::time::Duration;

use rayon::prelude::*;
use serde::Serialize;

use crate::rhythm::{generate_extended, GenerateError, Model, ModelKind, RhythmInstance};
use crate::search::{Heuristic, Limits, Verdict};

pub const CSV_HEADER: &str = "h,p1,kh,model,instances,solved,mean_time_s,mean_backtracks";
pub const RECORD_HEADER: &str = "h,p1,kh,index,seed,model,status,time_s,backtracks,nodes";

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub grid: Vec<(usize, usize, usize)>,
    pub instances: usize,
    pub timeout: Duration,
    pub models: Vec<ModelKind>,
    pub seed: u64,
    pub fraction: f64,
    pub heuristic: Heuristic,
    pub threads: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            grid: full_grid(),
            instances: 10,
            timeout: Duration::from_secs(10),
            models: vec![ModelKind::Sm, ModelKind::Sb, ModelKind::Sr],
            seed: 0,
            fraction: 0.0,
            heuristic: Heuristic::default(),
            threads: 1,
        }
    }
}

/// All 27 combinations of h in {3,4,5}, p1 in {12,18,24}, kh in {2,3,4}.
pub fn full_grid() -> Vec<(usize, usize, usize)> {
    let mut g = Vec::new();
    for h in [3, 4, 5] {
        for p1 in [12, 18, 24] {
            for kh in [2, 3, 4] {
                g.push((h, p1, kh));
            }
        }
    }
    g
}

/// Seed of the `index`-th instance of a grid cell.
pub fn instance_seed(base: u64, h: usize, p1: usize, kh: usize, index: usize) -> u64 {
    let mut z = base
        ^ ((h as u64) << 48)
        ^ ((p1 as u64) << 32)
        ^ ((kh as u64) << 16)
        ^ index as u64;
    // splitmix64 finalizer
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Sat,
    Unsat,
    Timeout,
}

#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub h: usize,
    pub p1: usize,
    pub kh: usize,
    pub index: usize,
    pub seed: u64,
    pub model: ModelKind,
    pub status: Status,
    pub time_s: f64,
    pub backtracks: u64,
    pub nodes: u64,
}

impl Record {
    pub fn solved(&self) -> bool {
        self.status != Status::Timeout
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CellSummary {
    pub h: usize,
    pub p1: usize,
    pub kh: usize,
    pub model: ModelKind,
    pub instances: usize,
    pub solved: usize,
    pub mean_time_s: Option<f64>,
    pub mean_backtracks: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub cells: Vec<CellSummary>,
    pub records: Vec<Record>,
}

/// Solves `inst` for its first solution under one model.
pub fn solve_one(inst: &RhythmInstance, model: ModelKind, heuristic: Heuristic, timeout: Duration) -> (Status, f64, u64, u64) {
    let limits = Limits::first_solution().with_timeout(timeout);
    let out = Model::build(inst, model).solve(heuristic, &limits);
    let status = match out.verdict() {
        Verdict::Sat => Status::Sat,
        Verdict::Unsat => Status::Unsat,
        Verdict::Unknown => Status::Timeout,
    };
    (status, out.wall_time, out.backtracks, out.nodes)
}

pub fn run_bench(cfg: &BenchConfig) -> Result<BenchReport, GenerateError> {
    let mut jobs = Vec::new();
    for &(h, p1, kh) in &cfg.grid {
        for index in 0..cfg.instances {
            let seed = instance_seed(cfg.seed, h, p1, kh, index);
            let inst = generate_extended(h, p1, kh, seed, cfg.fraction)?;
            for &model in &cfg.models {
                jobs.push((h, p1, kh, index, seed, model, inst.clone()));
            }
        }
    }
    let run = |(h, p1, kh, index, seed, model, inst): &(usize, usize, usize, usize, u64, ModelKind, RhythmInstance)| {
        let (status, time_s, backtracks, nodes) = solve_one(inst, *model, cfg.heuristic, cfg.timeout);
        Record {
            h: *h,
            p1: *p1,
            kh: *kh,
            index: *index,
            seed: *seed,
            model: *model,
            status,
            time_s,
            backtracks,
            nodes,
        }
    };
    let records: Vec<Record> = if cfg.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
            .expect("thread pool");
        pool.install(|| jobs.par_iter().map(run).collect())
    } else {
        jobs.iter().map(run).collect()
    };
    Ok(BenchReport {
        cells: summarize(cfg, &records),
        records,
    })
}

fn summarize(cfg: &BenchConfig, records: &[Record]) -> Vec<CellSummary> {
    let mut cells = Vec::new();
    for &(h, p1, kh) in &cfg.grid {
        for &model in &cfg.models {
            let rs: Vec<&Record> = records
                .iter()
                .filter(|r| (r.h, r.p1, r.kh, r.model) == (h, p1, kh, model))
                .collect();
            let solved: Vec<&&Record> = rs.iter().filter(|r| r.solved()).collect();
            let mean = |f: &dyn Fn(&Record) -> f64| {
                (!solved.is_empty()).then(|| solved.iter().map(|r| f(r)).sum::<f64>() / solved.len() as f64)
            };
            cells.push(CellSummary {
                h,
                p1,
                kh,
                model,
                instances: rs.len(),
                solved: solved.len(),
                mean_time_s: mean(&|r| r.time_s),
                mean_backtracks: mean(&|r| r.backtracks as f64),
            });
        }
    }
    cells
}

fn opt(x: Option<f64>, digits: usize) -> String {
    x.map(|v| format!("{v:.digits$}")).unwrap_or_default()
}

impl BenchReport {
    pub fn cells_csv(&self) -> String {
        let mut s = String::from(CSV_HEADER);
        s.push('\n');
        for c in &self.cells {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{}",
                c.h,
                c.p1,
                c.kh,
                c.model,
                c.instances,
                c.solved,
                opt(c.mean_time_s, 3),
                opt(c.mean_backtracks, 1)
            );
        }
        s
    }

    pub fn records_csv(&self) -> String {
        let mut s = String::from(RECORD_HEADER);
        s.push('\n');
        for r in &self.records {
            let status = match r.status {
                Status::Sat => "sat",
                Status::Unsat => "unsat",
                Status::Timeout => "timeout",
            };
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{:.3},{},{}",
                r.h, r.p1, r.kh, r.index, r.seed, r.model, status, r.time_s, r.backtracks, r.nodes
            );
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Instances solved by both models where `a` needed more backtracks than `b`.
    pub fn backtrack_violations(&self, a: ModelKind, b: ModelKind) -> Vec<(&Record, &Record)> {
        let mut out = Vec::new();
        for ra in self.records.iter().filter(|r| r.model == a && r.solved()) {
            if let Some(rb) = self
                .records
                .iter()
                .find(|r| r.model == b && r.solved() && (r.h, r.p1, r.kh, r.index) == (ra.h, ra.p1, ra.kh, ra.index))
            {
                if ra.backtracks > rb.backtracks {
                    out.push((ra, rb));
                }
            }
        }
        out
    }

    pub fn cell(&self, h: usize, p1: usize, kh: usize, model: ModelKind) -> Option<&CellSummary> {
        self.cells
            .iter()
            .find(|c| (c.h, c.p1, c.kh, c.model) == (h, p1, kh, model))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_has_27_cells() {
        assert_eq!(full_grid().len(), 27);
    }

    #[test]
    fn empty_model_list() {
        let cfg = BenchConfig {
            grid: vec![(3, 12, 2)],
            instances: 1,
            models: vec![],
            ..BenchConfig::default()
        };
        let r = run_bench(&cfg).unwrap();
        assert_eq!(r.cells_csv(), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn seeds_differ_per_instance() {
        assert_ne!(instance_seed(0, 3, 12, 2, 0), instance_seed(0, 3, 12, 2, 1));
    }
}
