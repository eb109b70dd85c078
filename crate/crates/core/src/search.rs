//! Depth-first search with binary branching.

use std::time::{Duration, Instant};

use crate::domain::{Value, DUMMY};
use crate::engine::Engine;
use crate::store::{Mark, Store};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VarOrder {
    /// Smallest domain first, lowest index on ties.
    #[default]
    FirstFail,
    /// Lowest-index unfixed variable.
    Lexicographic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ValueOrder {
    /// Ascending ids with the dummy value tried last.
    #[default]
    DummyLast,
    Ascending,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Heuristic {
    pub var: VarOrder,
    pub value: ValueOrder,
}

impl Heuristic {
    /// Branching that ignores domain sizes. Under this order, adding a sound
    /// monotone propagator can only shrink the explored tree.
    pub const STATIC: Heuristic = Heuristic {
        var: VarOrder::Lexicographic,
        value: ValueOrder::DummyLast,
    };

    fn select(&self, store: &Store) -> Option<(usize, Value)> {
        let var = match self.var {
            VarOrder::FirstFail => {
                let mut best: Option<(usize, usize)> = None;
                for (i, d) in store.domains().iter().enumerate() {
                    let s = d.size();
                    if s > 1 && best.is_none_or(|(_, bs)| s < bs) {
                        best = Some((i, s));
                        if s == 2 {
                            break;
                        }
                    }
                }
                best?.0
            }
            VarOrder::Lexicographic => store.domains().iter().position(|d| d.size() > 1)?,
        };
        let dom = store.domain(var);
        let val = match self.value {
            ValueOrder::Ascending => dom.min()?,
            ValueOrder::DummyLast => dom.iter().find(|&v| v != DUMMY).or(dom.min())?,
        };
        Some((var, val))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_solutions: Option<u64>,
    pub timeout: Option<Duration>,
    /// Upper bound on the number of solutions kept in the outcome; the
    /// count is always exact.
    pub keep_solutions: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_solutions: None,
            timeout: None,
            keep_solutions: usize::MAX,
        }
    }
}

impl Limits {
    pub fn first_solution() -> Self {
        Limits {
            max_solutions: Some(1),
            ..Limits::default()
        }
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.timeout = Some(timeout);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Sat,
    Unsat,
    Unknown,
}

#[derive(Debug, Clone, Default)]
pub struct SearchOutcome {
    pub solutions: Vec<Vec<Value>>,
    pub solution_count: u64,
    pub backtracks: u64,
    pub nodes: u64,
    pub wall_time: f64,
    pub timed_out: bool,
    /// True if the whole tree was explored.
    pub exhausted: bool,
}

impl SearchOutcome {
    pub fn verdict(&self) -> Verdict {
        if self.solution_count > 0 {
            Verdict::Sat
        } else if self.exhausted {
            Verdict::Unsat
        } else {
            Verdict::Unknown
        }
    }
}

struct Frame {
    mark: Mark,
    var: usize,
    val: Value,
    right: bool,
}

pub type SolutionFilter<'a> = &'a dyn Fn(&[Value]) -> bool;

/// Explores the search tree rooted at the current store. The store is
/// restored to its initial state before returning.
pub fn search(store: &mut Store, engine: &mut Engine, heuristic: Heuristic, limits: &Limits) -> SearchOutcome {
    search_filtered(store, engine, heuristic, limits, None)
}

/// As [`search`], with complete assignments additionally screened by
/// `filter`; rejected leaves count as dead ends.
pub fn search_filtered(
    store: &mut Store,
    engine: &mut Engine,
    heuristic: Heuristic,
    limits: &Limits,
    filter: Option<SolutionFilter<'_>>,
) -> SearchOutcome {
    let start = Instant::now();
    let deadline = limits.timeout.map(|t| start + t);
    let mut out = SearchOutcome::default();
    let root = store.checkpoint();
    let mut stack: Vec<Frame> = Vec::new();

    out.nodes = 1;
    let mut consistent = engine.propagate_all(store).is_ok();
    let mut ticks: u32 = 0;

    'outer: loop {
        ticks = ticks.wrapping_add(1);
        if ticks % 64 == 0 && deadline.is_some_and(|d| Instant::now() >= d) {
            out.timed_out = true;
            break;
        }
        if consistent {
            match heuristic.select(store) {
                None => {
                    let sol = store.assignment().expect("all variables fixed");
                    if filter.is_none_or(|f| f(&sol)) {
                        out.solution_count += 1;
                        if out.solutions.len() < limits.keep_solutions {
                            out.solutions.push(sol);
                        }
                        if limits.max_solutions.is_some_and(|m| out.solution_count >= m) {
                            break;
                        }
                    } else if !stack.is_empty() {
                        out.backtracks += 1;
                    }
                }
                Some((var, val)) => {
                    let mark = store.checkpoint();
                    stack.push(Frame {
                        mark,
                        var,
                        val,
                        right: false,
                    });
                    out.nodes += 1;
                    consistent = store.assign(var, val).is_ok() && engine.propagate(store).is_ok();
                    if !consistent {
                        out.backtracks += 1;
                    }
                    continue;
                }
            }
        }
        // Backtrack to the deepest open right branch.
        loop {
            let Some(frame) = stack.last_mut() else {
                out.exhausted = true;
                break 'outer;
            };
            store.rollback(frame.mark).expect("live mark");
            if frame.right {
                stack.pop();
                continue;
            }
            frame.right = true;
            frame.mark = store.checkpoint();
            out.nodes += 1;
            consistent = store.remove(frame.var, frame.val).is_ok() && engine.propagate(store).is_ok();
            if consistent {
                break;
            }
            out.backtracks += 1;
        }
    }

    store.rollback(root).expect("root mark");
    out.wall_time = start.elapsed().as_secs_f64();
    out
}
