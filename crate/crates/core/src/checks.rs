//! Propagator-versus-oracle suites and the worked fixtures.
//!
//! Every suite returns a [`CheckReport`]; the CLI `check` subcommand and
//! the acceptance tests both run them from here. Referees are always the
//! naive checkers of [`crate::oracle`] or [`crate::sat::brute_sat`].

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::bench::{instance_seed, solve_one, Record, Status};
use crate::domain::{Domain, Value, DUMMY};
use crate::engine::{Engine, Propagator};
use crate::oracle::{
    check_spacing, check_spacing1, check_spacing_f, check_spacing_sb, count_spacing1_conjunction, dc_oracle,
    spacing1_conjunction_dc, DcOutcome, DEFAULT_CAP,
};
use crate::params::{SbParams, Spacing1Params, SpacingParams};
use crate::propagators::bounded::{BoundedSpacing, DEFAULT_MAX_VALUES};
use crate::propagators::intervoice::{intervoice_counts, Intervoice};
use crate::propagators::spacing1::{build_value_graph, fold, Spacing1, ValueNode};
use crate::propagators::spacing_sb::SpacingSb;
use crate::rhythm::{generate_extended, Model, ModelKind, RhythmInstance, Voice};
use crate::rng::SeededRng;
use crate::sat::{brute_sat, extract_model, reduce, Cnf, ReductionKind};
use crate::search::{Heuristic, Limits};
use crate::store::Store;

/// Largest domain product handed to the brute-force oracle in random suites.
const PRODUCT_BUDGET: u128 = 60_000;

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: &'static str,
    pub trials: usize,
    pub failures: usize,
    pub counterexample: Option<String>,
    #[serde(serialize_with = "secs")]
    pub elapsed: Duration,
    pub notes: Vec<String>,
}

fn secs<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl CheckReport {
    fn new(name: &'static str) -> Self {
        CheckReport {
            name,
            trials: 0,
            failures: 0,
            counterexample: None,
            elapsed: Duration::ZERO,
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.trials > 0
    }

    fn trial(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.trials += 1;
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(describe());
            }
        }
    }

    fn finish(mut self, start: Instant) -> Self {
        self.elapsed = start.elapsed();
        self
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {}/{} trials ok in {:.2}s",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.trials - self.failures,
            self.trials,
            self.elapsed.as_secs_f64()
        )?;
        for n in &self.notes {
            write!(f, "; {n}")?;
        }
        if let Some(c) = &self.counterexample {
            write!(f, "\n  first counterexample: {c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    WorkedExample,
    IntervoiceExample,
    Strictness,
    Spacing1,
    Sb,
    Intervoice,
    Bounded,
    Reductions,
    Monotonicity,
    SbCount,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::WorkedExample,
        Suite::IntervoiceExample,
        Suite::Strictness,
        Suite::Spacing1,
        Suite::Sb,
        Suite::Intervoice,
        Suite::Bounded,
        Suite::Reductions,
        Suite::Monotonicity,
        Suite::SbCount,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::WorkedExample => "worked-example",
            Suite::IntervoiceExample => "intervoice-example",
            Suite::Strictness => "strictness",
            Suite::Spacing1 => "spacing1",
            Suite::Sb => "sb",
            Suite::Intervoice => "intervoice",
            Suite::Bounded => "bounded",
            Suite::Reductions => "reductions",
            Suite::Monotonicity => "monotonicity",
            Suite::SbCount => "sb-count",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error)]
#[error("unknown suite `{0}`")]
pub struct UnknownSuite(String);

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone)]
pub struct CheckConfig {
    pub seed: u64,
    /// Overrides the per-suite trial count of the random suites.
    pub trials: Option<usize>,
    /// Largest variable count in the reductions corpus.
    pub max_v: usize,
    pub reduction_timeout: Duration,
    pub bench_grid: Vec<(usize, usize, usize)>,
    pub bench_instances: usize,
    pub bench_timeout: Duration,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            seed: 0,
            trials: None,
            max_v: 3,
            reduction_timeout: Duration::from_secs(60),
            bench_grid: crate::bench::full_grid(),
            bench_instances: 10,
            bench_timeout: Duration::from_secs(10),
        }
    }
}

pub fn run(suite: Suite, cfg: &CheckConfig) -> CheckReport {
    let trials = |default: usize| cfg.trials.unwrap_or(default);
    match suite {
        Suite::WorkedExample => worked_example(),
        Suite::IntervoiceExample => intervoice_example(),
        Suite::Strictness => strictness(),
        Suite::Spacing1 => spacing1_suite(trials(1000), cfg.seed),
        Suite::Sb => sb_suite(trials(1000), cfg.seed),
        Suite::Intervoice => intervoice_suite(trials(500), cfg.seed),
        Suite::Bounded => bounded_suite(cfg.seed),
        Suite::Reductions => reductions_suite(cfg.max_v, trials(50), cfg.seed, cfg.reduction_timeout),
        Suite::Monotonicity => monotonicity(cfg, &|_| {}),
        Suite::SbCount => sb_count(trials(200), cfg.seed),
    }
}

/// Root fixpoint of `props` over `domains`, or `None` on failure.
pub fn fixpoint(domains: &[Vec<Value>], props: Vec<Box<dyn Propagator>>) -> Option<Vec<Vec<Value>>> {
    let doms: Vec<Domain> = domains
        .iter()
        .map(|d| Domain::new(d.iter().copied()))
        .collect::<Result<_, _>>()
        .ok()?;
    let mut store = Store::new(doms);
    let mut engine = Engine::with_propagators(domains.len(), props);
    engine.propagate_all(&mut store).ok()?;
    Some(store.domains().iter().map(Domain::values).collect())
}

fn as_option(o: DcOutcome) -> Option<Vec<Vec<Value>>> {
    match o {
        DcOutcome::Pruned(d) => Some(d),
        DcOutcome::Failed => None,
    }
}

fn store_of(domains: &[Vec<Value>]) -> Store {
    Store::new(
        domains
            .iter()
            .map(|d| Domain::new(d.iter().copied()).expect("nonempty fixture domain"))
            .collect(),
    )
}

// ---------------------------------------------------------------------------
// Fixtures

const A: Value = 1;
const B: Value = 2;
const C: Value = 3;
const O: Value = 4;

fn worked_domains() -> Vec<Vec<Value>> {
    vec![
        vec![A, B, O],
        vec![A, B, C, O],
        vec![A, B, C, O],
        vec![A, B],
        vec![B, C, O],
        vec![A, B, C, O],
        vec![A, B, C],
        vec![C],
        vec![A, B, C, O],
        vec![B, C, O],
        vec![A, B, C, O],
        vec![A, C, O],
        vec![A, B, C, O],
        vec![A, B, C, O],
        vec![B, C, O],
    ]
}

/// Spacing1({a,b,c}, 5, 3) over fifteen printed domains.
pub fn worked_example() -> CheckReport {
    let start = Instant::now();
    let mut r = CheckReport::new("worked-example");
    let params = Spacing1Params::new(vec![A, B, C], 5, 3, 15).expect("valid");
    let domains = worked_domains();
    let vars: Vec<usize> = (0..15).collect();
    let store = store_of(&domains);

    let folded = fold(&store, &vars, &params).map(|f| f.iter().map(|s| s.iter().collect::<Vec<_>>()).collect::<Vec<_>>());
    let want_fold = vec![vec![0, 1, 2], vec![1, 3], vec![3], vec![1, 2], vec![0, 2, 3]];
    r.trial(folded.as_ref().ok() == Some(&want_fold), || format!("folded {folded:?}"));

    let edges = folded.ok().and_then(|_| {
        let f = fold(&store, &vars, &params).ok()?;
        build_value_graph(&f, &params.s).ok().map(|g| g.labeled_edges())
    });
    let mut want_edges = Vec::new();
    for (node, cols) in [
        (ValueNode::Value(A), vec![1, 2, 4]),
        (ValueNode::Value(B), vec![1, 4, 5]),
        (ValueNode::Value(C), vec![2, 3, 5]),
        (ValueNode::Dummy(1), vec![1, 5]),
        (ValueNode::Dummy(2), vec![1, 5]),
    ] {
        want_edges.extend(cols.into_iter().map(|c| (node, c)));
    }
    want_edges.sort();
    r.trial(edges.as_ref() == Some(&want_edges), || format!("edges {edges:?}"));

    let fix = fixpoint(&domains, vec![Box::new(Spacing1::new(params.clone(), vars))]);
    let period = [O, A, C, B, O];
    let want: Vec<Vec<Value>> = (0..15).map(|i| vec![period[i % 5]]).collect();
    r.trial(fix.as_ref() == Some(&want), || format!("fixpoint {fix:?}"));

    let oracle = as_option(spacing1_conjunction_dc(&domains, std::slice::from_ref(&params)));
    r.trial(oracle == fix, || format!("oracle {oracle:?} vs engine {fix:?}"));
    r.finish(start)
}

fn intervoice_instance() -> RhythmInstance {
    RhythmInstance::new(vec![Voice { p: 5, k: 4, m: 2 }, Voice { p: 7, k: 3, m: 2 }], 21).expect("valid")
}

/// Two voices over 21 positions with `a` fixed at position 1.
pub fn intervoice_example() -> CheckReport {
    let start = Instant::now();
    let mut r = CheckReport::new("intervoice-example");
    let inst = intervoice_instance().with_fixed(1, A);

    let sm = Model::build(&inst, ModelKind::Sm).root_fixpoint();
    if let Some(sm) = &sm {
        let store = store_of(sm);
        let vars: Vec<usize> = (0..inst.n).collect();
        let (u2, b) = intervoice_counts(&store, &vars, &inst.voice_params(0), &inst.voice_params(1));
        r.trial(u2 == 3 && b[3] == 2 && b[2] == 1, || format!("u2 {u2}, b {b:?}"));
    } else {
        r.trial(false, || "SM root failed".into());
    }

    let sr = Model::build(&inst, ModelKind::Sr).root_fixpoint();
    let b_positions: Option<Vec<usize>> = sr
        .as_ref()
        .map(|d| (1..=inst.n).filter(|&x| d[x - 1].contains(&B)).collect());
    r.trial(b_positions == Some(vec![3, 8, 13, 18]), || format!("b survives at {b_positions:?}"));

    let all = Model::build(&inst, ModelKind::Sr).solve(Heuristic::STATIC, &Limits::default());
    r.trial(all.exhausted && all.solution_count == 2, || {
        format!("{} solutions, exhausted {}", all.solution_count, all.exhausted)
    });
    let all_sm = Model::build(&inst, ModelKind::Sm).solve(Heuristic::STATIC, &Limits::default());
    r.trial(all_sm.solution_count == 2, || format!("SM finds {} solutions", all_sm.solution_count));

    let bad = Model::build(&inst.with_fixed(4, B), ModelKind::Sr).root_fixpoint();
    r.trial(bad.is_none(), || format!("a at 1 with b at 4 survives: {bad:?}"));
    r.finish(start)
}

/// SM fails at the root where OM keeps every domain.
pub fn strictness() -> CheckReport {
    let start = Instant::now();
    let mut r = CheckReport::new("strictness");
    let mut inst =
        RhythmInstance::new(vec![Voice { p: 2, k: 2, m: 2 }, Voice { p: 3, k: 2, m: 1 }], 6).expect("valid");
    inst.removed = vec![(1, 3), (1, DUMMY)];

    let sm_root = Model::build(&inst, ModelKind::Sm).root_fixpoint();
    r.trial(sm_root.is_none(), || format!("SM root {sm_root:?}"));
    let out = Model::build(&inst, ModelKind::Sm).solve(Heuristic::STATIC, &Limits::first_solution());
    r.trial(out.solution_count == 0 && out.exhausted && out.backtracks == 0, || {
        format!("SM search: {} solutions, {} backtracks", out.solution_count, out.backtracks)
    });
    let om = Model::build(&inst, ModelKind::Om);
    let initial = om.domains.clone();
    let om_root = om.root_fixpoint();
    let want = vec![vec![1, 2], vec![1, 2], vec![2, 3]];
    r.trial(om_root.as_ref() == Some(&want) && initial == want, || {
        format!("OM initial {initial:?}, root {om_root:?}")
    });
    r.finish(start)
}

// ---------------------------------------------------------------------------
// Random domains around a planted sequence

/// Domains containing `planted[i]` plus random extra values of `universe`,
/// trimmed until the product fits the oracle budget.
fn widen(rng: &mut SeededRng, planted: &[Value], universe: &[Value]) -> Vec<Vec<Value>> {
    let mut doms: Vec<Vec<Value>> = planted
        .iter()
        .map(|&v| {
            let mut d: Vec<Value> = universe.iter().copied().filter(|&u| u == v || rng.chance(1, 2)).collect();
            d.sort_unstable();
            d
        })
        .collect();
    trim(rng, &mut doms, Some(planted));
    doms
}

fn random_domains(rng: &mut SeededRng, n: usize, universe: &[Value]) -> Vec<Vec<Value>> {
    let mut doms: Vec<Vec<Value>> = (0..n)
        .map(|_| loop {
            let d: Vec<Value> = universe.iter().copied().filter(|_| rng.chance(1, 2)).collect();
            if !d.is_empty() {
                break d;
            }
        })
        .collect();
    trim(rng, &mut doms, None);
    doms
}

fn trim(rng: &mut SeededRng, doms: &mut [Vec<Value>], keep: Option<&[Value]>) {
    let product = |d: &[Vec<Value>]| d.iter().map(|x| x.len() as u128).product::<u128>();
    while product(doms) > PRODUCT_BUDGET {
        let i = rng.below(doms.len());
        if doms[i].len() < 2 {
            continue;
        }
        let j = rng.below(doms[i].len());
        if keep.is_some_and(|k| k[i] == doms[i][j]) {
            continue;
        }
        doms[i].remove(j);
    }
}

fn pick_from(rng: &mut SeededRng, items: &[Value]) -> Value {
    items[rng.below(items.len())]
}

const UNIVERSE: [Value; 5] = [0, 1, 2, 3, 4];

fn compare(r: &mut CheckReport, domains: &[Vec<Value>], label: &str, engine: Option<Vec<Vec<Value>>>, oracle: DcOutcome) {
    let oracle = as_option(oracle);
    let ok = engine == oracle;
    r.trial(ok, || format!("{label} domains {domains:?}: engine {engine:?}, oracle {oracle:?}"));
}

/// Spacing1 fixpoints against the brute-force DC oracle.
pub fn spacing1_suite(trials: usize, seed: u64) -> CheckReport {
    let start = Instant::now();
    let mut r = CheckReport::new("spacing1");
    let mut rng = SeededRng::new(seed ^ 0x5101);
    for _ in 0..trials {
        let p = rng.range(1, 4) as usize;
        let k = rng.range(1, 3) as usize;
        let n = rng.range((p * k) as i64, 12) as usize;
        let size = rng.range(0, p.min(4) as i64) as usize;
        let s = rng.sample(&[1, 2, 3, 4], size);
        let params = Spacing1Params::new(s.clone(), p, k, n).expect("valid");
        let others: Vec<Value> = UNIVERSE.iter().copied().filter(|v| !s.contains(v)).collect();
        let domains = if rng.chance(4, 5) {
            let mut offsets: Vec<usize> = (0..p).collect();
            rng.shuffle(&mut offsets);
            let mut seq: Vec<Value> = (0..n).map(|_| pick_from(&mut rng, &others)).collect();
            for (&d, &off) in s.iter().zip(&offsets) {
                for j in 0..k {
                    seq[j * p + off] = d;
                }
            }
            widen(&mut rng, &seq, &UNIVERSE)
        } else {
            random_domains(&mut rng, n, &UNIVERSE)
        };
        let engine = fixpoint(&domains, vec![Box::new(Spacing1::new(params.clone(), (0..n).collect()))]);
        let oracle = dc_oracle(&domains, |x| check_spacing1(x, &params), DEFAULT_CAP).expect("within budget");
        compare(&mut r, &domains, &format!("{params:?}"), engine, oracle);
    }
    r.finish(start)
}

/// Spacing_SB fixpoints against the brute-force DC oracle.
pub fn sb_suite(trials: usize, seed: u64) -> CheckReport {
    let start = Instant::now();
    let mut r = CheckReport::new("sb");
    let mut rng = SeededRng::new(seed ^ 0x5b5b);
    for _ in 0..trials {
        let p = rng.range(1, 4) as usize;
        let k = rng.range(1, 3) as usize;
        let n = rng.range((p * k) as i64, 12) as usize;
        let m = rng.range(0, p as i64) as usize;
        let d = rng.range(1, 4) as Value;
        let params = SbParams::new(d, m, p, k, n).expect("valid");
        let others: Vec<Value> = UNIVERSE.iter().copied().filter(|&v| v != d).collect();
        let domains = if rng.chance(4, 5) {
            let offsets = rng.sample(&(0..p).collect::<Vec<_>>(), m);
            let mut seq: Vec<Value> = (0..n).map(|_| pick_from(&mut rng, &others)).collect();
            for off in offsets {
                for j in 0..k {
                    seq[j * p + off] = d;
                }
            }
            widen(&mut rng, &seq, &UNIVERSE)
        } else {
            random_domains(&mut rng, n, &UNIVERSE)
        };
        let engine = fixpoint(&domains, vec![Box::new(SpacingSb::new(params.clone(), (0..n).collect()))]);
        let oracle = dc_oracle(&domains, |x| check_spacing_sb(x, &params), DEFAULT_CAP).expect("within budget");
        compare(&mut r, &domains, &format!("{params:?}"), engine, oracle);
    }
    r.finish(start)
}

fn contains_all(outer: &[Vec<Value>], inner: &[Vec<Value>]) -> bool {
    outer.iter().zip(inner).all(|(o, i)| i.iter().all(|v| o.contains(v)))
}

fn size(d: &[Vec<Value>]) -> usize {
    d.iter().map(Vec::len).sum()
}

/// Soundness of the intervoice pruning: nothing it removes may belong to a
/// solution of the two-voice conjunction.
pub fn intervoice_suite(trials: usize, seed: u64) -> CheckReport {
    let start = Instant::now();
    let mut r = CheckReport::new("intervoice");
    let mut rng = SeededRng::new(seed ^ 0x1a7e);
    let (mut extra, mut fired) = (0usize, 0usize);
    for _ in 0..trials {
        let n = rng.range(4, 20) as usize;
        let mut ids = vec![1, 2, 3, 4];
        rng.shuffle(&mut ids);
        let m1 = rng.range(1, 2) as usize;
        let m2 = rng.range(1, 2) as usize;
        let (s1, s2) = (ids[..m1].to_vec(), ids[m1..m1 + m2].to_vec());
        let voice = |s: Vec<Value>, rng: &mut SeededRng| {
            let p = rng.range(s.len() as i64, (n / 2).max(s.len()) as i64) as usize;
            let k = rng.range(1, (n / p).clamp(1, 4) as i64) as usize;
            Spacing1Params::new(s, p, k, n).expect("valid")
        };
        let v1 = voice(s1, &mut rng);
        let v2 = voice(s2, &mut rng);
        let max: Value = 4;
        let universe: Vec<Value> = (0..=max).collect();
        // Dense domains thinned by random removals; the conjunction need
        // not be satisfiable.
        let domains: Vec<Vec<Value>> = (0..n)
            .map(|_| {
                let d: Vec<Value> = universe.iter().copied().filter(|&v| v == 0 || !rng.chance(1, 4)).collect();
                d
            })
            .collect();
        let voices = [v1.clone(), v2.clone()];
        let vars: Vec<usize> = (0..n).collect();
        let conj = spacing1_conjunction_dc(&domains, &voices);

        let alone = fixpoint(
            &domains,
            vec![
                Box::new(Intervoice::new(v1.clone(), v2.clone(), vars.clone())),
                Box::new(Intervoice::new(v2.clone(), v1.clone(), vars.clone())),
            ],
        );
        let sm = fixpoint(
            &domains,
            voices.iter().map(|v| Box::new(Spacing1::new(v.clone(), vars.clone())) as Box<dyn Propagator>).collect(),
        );
        let mut props: Vec<Box<dyn Propagator>> =
            voices.iter().map(|v| Box::new(Spacing1::new(v.clone(), vars.clone())) as Box<dyn Propagator>).collect();
        props.push(Box::new(Intervoice::new(v1.clone(), v2.clone(), vars.clone())));
        props.push(Box::new(Intervoice::new(v2.clone(), v1.clone(), vars.clone())));
        let sr = fixpoint(&domains, props);

        if alone.as_ref().is_none_or(|a| size(a) < size(&domains)) {
            fired += 1;
        }
        match (&sm, &sr) {
            (Some(a), Some(b)) => extra += size(a) - size(b),
            (Some(a), None) => extra += size(a),
            _ => {}
        }
        let sound = match &conj {
            DcOutcome::Failed => true,
            DcOutcome::Pruned(c) => {
                alone.as_ref().is_some_and(|a| contains_all(a, c)) && sr.as_ref().is_some_and(|s| contains_all(s, c))
            }
        };
        r.trial(sound, || {
            format!("{v1:?} {v2:?} domains {domains:?}: conjunction {conj:?}, intervoice {alone:?}, SR {sr:?}")
        });
    }
    r.notes.push(format!("intervoice pruned in {fired} trials"));
    r.notes.push(format!("{extra} values pruned beyond the SM fixpoint"));
    r.finish(start)
}

/// Bounded-S automaton against the DC oracle over an exhaustive parameter
/// sweep with random domains.
pub fn bounded_suite(seed: u64) -> CheckReport {
    let start = Instant::now();
    let mut r = CheckReport::new("bounded");
    let mut rng = SeededRng::new(seed ^ 0xb0b0);
    let universe: Vec<Value> = vec![0, 1, 2];
    for n in 1..=8usize {
        for s in [vec![1], vec![1, 2]] {
            for k in 1..=3usize {
                let bounds: Vec<(usize, usize)> = if k == 1 {
                    vec![(1, 1)]
                } else {
                    (1..n.max(2)).flat_map(|a| (a..n.max(2)).map(move |b| (a, b))).collect()
                };
                for (a, b) in bounds {
                    let params = SpacingParams::uniform(s.clone(), a, b, k, n).expect("valid");
                    for (forced, full) in [(false, false), (true, false), (false, true), (true, true)] {
                        let domains = if full {
                            vec![universe.clone(); n]
                        } else {
                            random_domains(&mut rng, n, &universe)
                        };
                        let prop = BoundedSpacing::new(params.clone(), forced, (0..n).collect(), DEFAULT_MAX_VALUES)
                            .expect("small value set");
                        let engine = fixpoint(&domains, vec![Box::new(prop)]);
                        let oracle = if forced {
                            dc_oracle(&domains, |x| check_spacing_f(x, &params), DEFAULT_CAP)
                        } else {
                            dc_oracle(&domains, |x| check_spacing(x, &params), DEFAULT_CAP)
                        }
                        .expect("within budget");
                        compare(&mut r, &domains, &format!("{params:?} forced {forced}"), engine, oracle);
                    }
                }
            }
        }
    }
    r.finish(start)
}

/// All formulas over `v` variables with `c` clauses of one or two literals,
/// clause order significant.
pub fn exhaustive_cnfs(v: usize, c: usize) -> Vec<Cnf> {
    let lits: Vec<i32> = (1..=v as i32).flat_map(|x| [x, -x]).collect();
    let mut clauses: Vec<Vec<i32>> = lits.iter().map(|&l| vec![l]).collect();
    for i in 0..lits.len() {
        for j in i + 1..lits.len() {
            clauses.push(vec![lits[i], lits[j]]);
        }
    }
    let mut out = vec![Vec::new()];
    for _ in 0..c {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Vec<i32>>| {
                clauses.iter().map(move |cl| {
                    let mut x = prefix.clone();
                    x.push(cl.clone());
                    x
                })
            })
            .collect();
    }
    out.into_iter().map(|cls| Cnf { v, clauses: cls }).collect()
}

pub fn random_cnf(rng: &mut SeededRng, max_v: usize, max_c: usize) -> Cnf {
    let v = rng.range(1, max_v as i64) as usize;
    let c = rng.range(1, max_c as i64) as usize;
    let clauses = (0..c)
        .map(|_| {
            let width = rng.range(1, v.min(3) as i64) as usize;
            let vars = rng.sample(&(1..=v as i32).collect::<Vec<_>>(), width);
            vars.into_iter().map(|x| if rng.chance(1, 2) { x } else { -x }).collect()
        })
        .collect();
    Cnf { v, clauses }
}

fn reduction_applies(kind: ReductionKind, cnf: &Cnf) -> bool {
    match kind {
        ReductionKind::SpacingH => cnf.v <= 2 && (2..=3).contains(&cnf.c()),
        _ => true,
    }
}

/// Support existence of every reduction against brute-force satisfiability.
pub fn reductions_suite(max_v: usize, samples: usize, seed: u64, timeout: Duration) -> CheckReport {
    let start = Instant::now();
    let mut r = CheckReport::new("reductions");
    let mut corpus = Vec::new();
    for v in 1..=max_v.min(2) {
        for c in 1..=2 {
            corpus.extend(exhaustive_cnfs(v, c));
        }
    }
    let mut rng = SeededRng::new(seed ^ 0x5a7);
    corpus.extend((0..samples).map(|_| random_cnf(&mut rng, max_v, 4)));
    let mut timeouts = 0;
    for cnf in &corpus {
        let sat = brute_sat(cnf).expect("small formula");
        for kind in ReductionKind::ALL {
            if !reduction_applies(kind, cnf) {
                continue;
            }
            let inst = match reduce(cnf, kind) {
                Ok(i) => i,
                Err(e) => {
                    r.trial(false, || format!("{kind} on {cnf:?}: {e}"));
                    continue;
                }
            };
            match inst.find_support(Some(timeout)) {
                Err(spent) => {
                    timeouts += 1;
                    r.trial(false, || format!("{kind} on {cnf:?}: no answer within {spent:?}"));
                }
                Ok(None) => r.trial(!sat, || format!("{kind} on satisfiable {cnf:?}: no support")),
                Ok(Some(seq)) => {
                    let model = extract_model(&seq, &inst);
                    r.trial(sat && model.is_ok(), || {
                        format!("{kind} on {cnf:?} (sat {sat}): support {seq:?}, extracted {model:?}")
                    });
                }
            }
        }
    }
    r.notes.push(format!("{} formulas", corpus.len()));
    if timeouts > 0 {
        r.notes.push(format!("{timeouts} timeouts"));
    }
    r.finish(start)
}

/// Benchmark grid run under the static heuristic. SB and SM run on every
/// basic instance; SR only where SM finished, since a pair with SM
/// unsolved enters neither comparison.
pub fn monotonicity(cfg: &CheckConfig, progress: &dyn Fn(&Record)) -> CheckReport {
    let start = Instant::now();
    let mut r = CheckReport::new("monotonicity");
    let (mut bt_sm, mut bt_sr, mut both) = (0u64, 0u64, 0usize);
    let mut cells_sb_ahead = 0;
    for &(h, p1, kh) in &cfg.bench_grid {
        let (mut solved_sb, mut solved_sm) = (0, 0);
        for index in 0..cfg.bench_instances {
            let seed = instance_seed(cfg.seed, h, p1, kh, index);
            let inst = match generate_extended(h, p1, kh, seed, 0.0) {
                Ok(i) => i,
                Err(e) => {
                    r.trial(false, || format!("({h},{p1},{kh}) #{index}: {e}"));
                    continue;
                }
            };
            let record = |model: ModelKind| {
                let (status, time_s, backtracks, nodes) = solve_one(&inst, model, Heuristic::STATIC, cfg.bench_timeout);
                let rec = Record {
                    h,
                    p1,
                    kh,
                    index,
                    seed,
                    model,
                    status,
                    time_s,
                    backtracks,
                    nodes,
                };
                progress(&rec);
                rec
            };
            let sb = record(ModelKind::Sb);
            let sm = record(ModelKind::Sm);
            solved_sb += sb.solved() as usize;
            solved_sm += sm.solved() as usize;
            if sm.solved() {
                let sr = record(ModelKind::Sr);
                if sr.solved() {
                    both += 1;
                    bt_sm += sm.backtracks;
                    bt_sr += sr.backtracks;
                    r.trial(sr.backtracks <= sm.backtracks, || {
                        format!(
                            "({h},{p1},{kh}) #{index}: SR {} backtracks > SM {}",
                            sr.backtracks, sm.backtracks
                        )
                    });
                    let agree = sr.status == sm.status;
                    r.trial(agree, || format!("({h},{p1},{kh}) #{index}: SR {:?} vs SM {:?}", sr.status, sm.status));
                }
                if sm.status == Status::Unsat && sb.status == Status::Sat {
                    r.trial(false, || format!("({h},{p1},{kh}) #{index}: SB sat, SM unsat"));
                }
            }
        }
        cells_sb_ahead += (solved_sb > solved_sm) as usize;
        r.trial(solved_sb >= solved_sm, || {
            format!("({h},{p1},{kh}): SB solved {solved_sb} < SM solved {solved_sm}")
        });
    }
    r.notes.push(format!("{both} instances solved by SM and SR"));
    if bt_sr > 0 {
        r.notes.push(format!(
            "total backtracks SM {bt_sm}, SR {bt_sr} (ratio {:.1})",
            bt_sm as f64 / bt_sr as f64
        ));
    } else {
        r.notes.push(format!("total backtracks SM {bt_sm}, SR 0"));
    }
    r.notes.push(format!("SB solved more than SM in {cells_sb_ahead} cells"));
    r.finish(start)
}

fn factorial(m: usize) -> u128 {
    (1..=m as u128).product()
}

fn count(inst: &RhythmInstance, kind: ModelKind) -> (u64, bool) {
    let limits = Limits {
        keep_solutions: 0,
        ..Limits::default()
    };
    let out = Model::build(inst, kind).solve(Heuristic::default(), &limits);
    (out.solution_count, out.exhausted)
}

/// Solution counts of SB and SM on small instances without removals.
pub fn sb_count(trials: usize, seed: u64) -> CheckReport {
    let start = Instant::now();
    let mut r = CheckReport::new("sb-count");
    let mut rng = SeededRng::new(seed ^ 0xc0c0);
    let mut nonzero = 0;
    for _ in 0..trials {
        let h = rng.range(1, 3) as usize;
        let voices: Vec<Voice> = (0..h)
            .map(|_| {
                let p = rng.range(1, 4) as usize;
                let k = rng.range(1, 2) as usize;
                let m = rng.range(0, p.min(3) as i64) as usize;
                Voice { p, k, m }
            })
            .collect();
        let longest = voices.iter().map(|v| v.p * v.k).max().unwrap_or(1);
        let n = longest + rng.below(3);
        let inst = RhythmInstance::new(voices, n).expect("valid");
        let (sm, sm_done) = count(&inst, ModelKind::Sm);
        let (sb, sb_done) = count(&inst, ModelKind::Sb);
        let perms: u128 = inst.voices.iter().map(|v| factorial(v.m)).product();
        let direct = count_spacing1_conjunction(&inst.sequence_domains(), &inst.all_voice_params());
        nonzero += (sm > 0) as usize;
        r.trial(
            sm_done && sb_done && sm as u128 == direct && sb as u128 * perms == sm as u128,
            || format!("{inst:?}: SM {sm}, SB {sb}, permutations {perms}, enumerated {direct}"),
        );
    }
    r.notes.push(format!("{nonzero} satisfiable instances"));
    r.finish(start)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_pass() {
        for report in [worked_example(), intervoice_example(), strictness()] {
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn small_random_suites_pass() {
        for report in [spacing1_suite(60, 1), sb_suite(60, 1), intervoice_suite(40, 1), sb_count(30, 1)] {
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.as_str().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn exhaustive_corpus_size() {
        assert_eq!(exhaustive_cnfs(1, 1).len(), 3);
        assert_eq!(exhaustive_cnfs(2, 2).len(), 100);
    }

    #[test]
    fn failing_trial_keeps_first_counterexample() {
        let mut r = CheckReport::new("x");
        r.trial(true, || unreachable!());
        r.trial(false, || "first".into());
        r.trial(false, || "second".into());
        assert!(!r.passed());
        assert_eq!((r.trials, r.failures), (3, 2));
        assert_eq!(r.counterexample.as_deref(), Some("first"));
    }
}
