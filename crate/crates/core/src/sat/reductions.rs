//! SAT encoded as support existence for Spacing variants.
//!
//! Literal ids: `p_x` is `x` and `¬p_x` is `v + x`. The two-voice encoding
//! adds primed literals (block 1) and one indexed copy per clause (blocks
//! `2..=c+1`), each block holding `2v` consecutive ids.

use std::collections::BTreeSet;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::domain::{Domain, Value, DUMMY};
use crate::engine::{Engine, Propagator};
use crate::oracle::{check_spacing, check_spacing_f, check_spacing_h};
use crate::params::{Spacing1Params, SpacingParams};
use crate::propagators::{BoundedSpacing, Spacing1};
use crate::sat::cnf::Cnf;
use crate::search::{search_filtered, Heuristic, Limits, SearchOutcome};
use crate::store::Store;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionKind {
    Spacing,
    SpacingF,
    SpacingFNoMax,
    SpacingH,
}

impl ReductionKind {
    pub const ALL: [ReductionKind; 4] = [
        ReductionKind::Spacing,
        ReductionKind::SpacingF,
        ReductionKind::SpacingFNoMax,
        ReductionKind::SpacingH,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ReductionKind::Spacing => "spacing",
            ReductionKind::SpacingF => "spacingf",
            ReductionKind::SpacingFNoMax => "spacingf-nomax",
            ReductionKind::SpacingH => "spacingh",
        }
    }
}

impl std::fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ReductionKind {
    type Err = ReductionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ReductionKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| ReductionError::UnknownKind(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "constraint", rename_all = "kebab-case")]
pub enum ReducedSpec {
    /// General Spacing; `forced` requires every value of S to occur.
    Spacing { params: SpacingParams, forced: bool },
    /// Conjunction of one-voice constraints.
    SpacingH { voices: Vec<Spacing1Params> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mapping {
    pub value: Value,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedInstance {
    pub kind: ReductionKind,
    pub cnf: Cnf,
    pub n: usize,
    pub domains: Vec<Vec<Value>>,
    pub spec: ReducedSpec,
    pub mapping: Vec<Mapping>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("unknown reduction `{0}`")]
    UnknownKind(String),
    #[error("invalid formula: {0}")]
    Cnf(#[from] crate::sat::cnf::CnfError),
    #[error("a formula with a single clause is trivially satisfiable; the two-voice layout needs c >= 2")]
    SingleClause,
    #[error("the construction needs at least one clause")]
    NoClauses,
    #[error("the construction needs at least one variable")]
    NoVariables,
    #[error("support has {got} positions, expected {expected}")]
    Length { expected: usize, got: usize },
    #[error("support violates the construction at position {0}")]
    Layout(usize),
    #[error("extracted literals {0:?} are not a model")]
    NotAModel(Vec<i32>),
}

fn lit_index(v: usize, lit: i32) -> Value {
    let x = lit.unsigned_abs();
    if lit > 0 {
        x
    } else {
        v as Value + x
    }
}

fn lit_of_index(v: usize, id: Value) -> i32 {
    if id as usize <= v {
        id as i32
    } else {
        -((id as usize - v) as i32)
    }
}

fn all_literals(v: usize) -> Vec<i32> {
    (1..=v as i32).chain((1..=v as i32).map(|x| -x)).collect()
}

fn label(lit: i32, suffix: &str) -> String {
    if lit > 0 {
        format!("x{lit}{suffix}")
    } else {
        format!("-x{}{suffix}", -lit)
    }
}

fn literal_mapping(v: usize) -> Vec<Mapping> {
    all_literals(v)
        .into_iter()
        .map(|l| Mapping {
            value: lit_index(v, l),
            label: label(l, ""),
        })
        .collect()
}

fn clause_ids(v: usize, clause: &[i32]) -> BTreeSet<Value> {
    clause.iter().map(|&l| lit_index(v, l)).collect()
}

fn sorted(sets: Vec<BTreeSet<Value>>) -> Vec<Vec<Value>> {
    sets.into_iter().map(|s| s.into_iter().collect()).collect()
}

/// Rows of `v + 1` cells: variable columns then the clause column; the last
/// row has no clause cell.
pub fn reduce_spacing(cnf: &Cnf) -> Result<ReducedInstance, ReductionError> {
    cnf.validate()?;
    let (v, c) = (cnf.v, cnf.c());
    let n = v * c + v + c;
    let mut domains: Vec<BTreeSet<Value>> = Vec::with_capacity(n);
    for j in 0..=c {
        for x in 1..=v as i32 {
            domains.push([lit_index(v, x), lit_index(v, -x)].into());
        }
        if j < c {
            domains.push(clause_ids(v, &cnf.clauses[j]));
        }
    }
    let s = all_literals(v).into_iter().map(|l| lit_index(v, l)).collect();
    let params = SpacingParams::uniform(s, 1, v + 1, c + 1, n).expect("valid by construction");
    Ok(ReducedInstance {
        kind: ReductionKind::Spacing,
        cnf: cnf.clone(),
        n,
        domains: sorted(domains),
        spec: ReducedSpec::Spacing { params, forced: false },
        mapping: literal_mapping(v),
    })
}

/// Positive part, a row of dummies, then a negative part of `c + 1` rows;
/// clause column cells below the clauses hold only the dummy.
pub fn reduce_spacing_f(cnf: &Cnf) -> Result<ReducedInstance, ReductionError> {
    cnf.validate()?;
    let (v, c) = (cnf.v, cnf.c());
    let width = v + 1;
    let rows = 2 * c + 3;
    let mut domains: Vec<BTreeSet<Value>> = Vec::with_capacity(rows * width);
    for j in 1..=rows {
        for x in 1..=v as i32 {
            if j == c + 2 {
                domains.push([DUMMY].into());
            } else {
                domains.push([lit_index(v, x), lit_index(v, -x)].into());
            }
        }
        if j <= c {
            domains.push(clause_ids(v, &cnf.clauses[j - 1]));
        } else {
            domains.push([DUMMY].into());
        }
    }
    let n = domains.len();
    let s = all_literals(v).into_iter().map(|l| lit_index(v, l)).collect();
    let params = SpacingParams::uniform(s, 1, v + 1, c + 1, n).expect("valid by construction");
    Ok(ReducedInstance {
        kind: ReductionKind::SpacingF,
        cnf: cnf.clone(),
        n,
        domains: sorted(domains),
        spec: ReducedSpec::Spacing { params, forced: true },
        mapping: literal_mapping(v),
    })
}

/// `c` rows of `7v + 1` cells: clause cell, satisfied-literal cells,
/// padding, unsatisfied-literal cells, padding.
pub fn reduce_spacing_f_nomax(cnf: &Cnf) -> Result<ReducedInstance, ReductionError> {
    cnf.validate()?;
    let (v, c) = (cnf.v, cnf.c());
    if c == 0 {
        return Err(ReductionError::NoClauses);
    }
    let width = 7 * v + 1;
    let n = width * c;
    let mut domains = Vec::with_capacity(n);
    for j in 0..c {
        domains.push(clause_ids(v, &cnf.clauses[j]));
        for l in all_literals(v) {
            domains.push([lit_index(v, l), DUMMY].into());
        }
        for _ in 0..2 * v {
            domains.push([DUMMY].into());
        }
        for x in 1..=v as i32 {
            domains.push([lit_index(v, x), lit_index(v, -x)].into());
        }
        for _ in 0..2 * v {
            domains.push([DUMMY].into());
        }
    }
    let s = all_literals(v).into_iter().map(|l| lit_index(v, l)).collect();
    let params = SpacingParams::uniform(s, 5 * v + 1, n, c, n).expect("valid by construction");
    Ok(ReducedInstance {
        kind: ReductionKind::SpacingFNoMax,
        cnf: cnf.clone(),
        n,
        domains: sorted(domains),
        spec: ReducedSpec::Spacing { params, forced: true },
        mapping: literal_mapping(v),
    })
}

/// Ids of the two-voice encoding.
#[derive(Debug, Clone, Copy)]
struct HIds {
    v: usize,
}

impl HIds {
    fn block(&self, b: usize, lit: i32) -> Value {
        (b * 2 * self.v) as Value + lit_index(self.v, lit)
    }
    fn plain(&self, lit: i32) -> Value {
        self.block(0, lit)
    }
    fn primed(&self, lit: i32) -> Value {
        self.block(1, lit)
    }
    /// Copy for clause `i` (1-based).
    fn indexed(&self, i: usize, lit: i32) -> Value {
        self.block(1 + i, lit)
    }
}

pub fn reduce_spacing_h(cnf: &Cnf) -> Result<ReducedInstance, ReductionError> {
    cnf.validate()?;
    let (v, c) = (cnf.v, cnf.c());
    match c {
        0 => return Err(ReductionError::NoClauses),
        1 => return Err(ReductionError::SingleClause),
        _ => {}
    }
    if v == 0 {
        return Err(ReductionError::NoVariables);
    }
    let ids = HIds { v };
    let p1 = c + 6 * c * v;
    let p2 = p1 + 2 * v;
    let n = p2 * c;
    let lits = all_literals(v);
    let mut doms: Vec<BTreeSet<Value>> = vec![BTreeSet::new(); n];

    // Voice 1, one row per period of p1.
    for j in 1..=c {
        let mut cell = |i: usize, vals: &mut dyn Iterator<Item = Value>| doms[(j - 1) * p1 + i - 1].extend(vals);
        for i in 1..=c {
            if i == j {
                cell(i, &mut cnf.clauses[j - 1].iter().map(|&l| ids.indexed(i, l)));
            } else {
                cell(i, &mut lits.iter().map(|&l| ids.indexed(i, l)));
            }
        }
        for i in 1..=c {
            for y in 0..2 {
                for x in 1..=v {
                    let lit = if y == 0 { x as i32 } else { -(x as i32) };
                    let col = (i - 1) * 2 * v + v * y + x;
                    cell(c + col, &mut std::iter::once(ids.indexed(i, lit)));
                    cell(c + 2 * c * v + col, &mut std::iter::once(ids.indexed(i, lit)));
                }
            }
        }
        let base = c + 4 * c * v;
        for x in 1..=v {
            let xi = x as i32;
            cell(base + x, &mut std::iter::once(ids.primed(xi)));
            cell(base + v + x, &mut std::iter::once(ids.primed(-xi)));
            cell(base + 2 * c * v - 2 * v + x, &mut std::iter::once(ids.primed(-xi)));
            cell(base + 2 * c * v - v + x, &mut std::iter::once(ids.primed(xi)));
        }
        for x in 1..=2 * c * v - 4 * v {
            cell(base + 2 * v + x, &mut std::iter::once(DUMMY));
        }
    }
    // Voice 2, one row per period of p2.
    let mut s2_pos = vec![false; n];
    for j in 1..=c {
        for x in 1..=v {
            let xi = x as i32;
            for (col, lit) in [
                (c + x, xi),
                (c + v + x, -xi),
                (c + 4 * c * v + x, xi),
                (c + 4 * c * v + v + x, -xi),
            ] {
                let pos = (j - 1) * p2 + col;
                doms[pos - 1].insert(ids.plain(lit));
                s2_pos[pos - 1] = true;
            }
        }
    }
    // Dummy fill.
    for (idx, dom) in doms.iter_mut().enumerate() {
        let pos = idx + 1;
        let clause_cell = pos <= c * p1 && (pos - 1) % p1 < c;
        if !clause_cell && !s2_pos[idx] {
            dom.insert(DUMMY);
        }
    }

    let s2: Vec<Value> = lits.iter().map(|&l| ids.plain(l)).collect();
    let mut s1: Vec<Value> = lits.iter().map(|&l| ids.primed(l)).collect();
    for i in 1..=c {
        s1.extend(lits.iter().map(|&l| ids.indexed(i, l)));
    }
    let mut mapping = literal_mapping(v);
    mapping.extend(lits.iter().map(|&l| Mapping {
        value: ids.primed(l),
        label: label(l, "'"),
    }));
    for i in 1..=c {
        mapping.extend(lits.iter().map(|&l| Mapping {
            value: ids.indexed(i, l),
            label: label(l, &format!("^{i}")),
        }));
    }
    let voices = vec![
        Spacing1Params::new(s1, p1, c, n).expect("valid by construction"),
        Spacing1Params::new(s2, p2, c, n).expect("valid by construction"),
    ];
    Ok(ReducedInstance {
        kind: ReductionKind::SpacingH,
        cnf: cnf.clone(),
        n,
        domains: sorted(doms),
        spec: ReducedSpec::SpacingH { voices },
        mapping,
    })
}

pub fn reduce(cnf: &Cnf, kind: ReductionKind) -> Result<ReducedInstance, ReductionError> {
    match kind {
        ReductionKind::Spacing => reduce_spacing(cnf),
        ReductionKind::SpacingF => reduce_spacing_f(cnf),
        ReductionKind::SpacingFNoMax => reduce_spacing_f_nomax(cnf),
        ReductionKind::SpacingH => reduce_spacing_h(cnf),
    }
}

impl ReducedInstance {
    /// Direct semantics check of a complete assignment.
    pub fn check(&self, seq: &[Value]) -> bool {
        if seq.len() != self.n || seq.iter().zip(&self.domains).any(|(x, d)| !d.contains(x)) {
            return false;
        }
        match &self.spec {
            ReducedSpec::Spacing { params, forced: false } => check_spacing(seq, params),
            ReducedSpec::Spacing { params, forced: true } => check_spacing_f(seq, params),
            ReducedSpec::SpacingH { voices } => check_spacing_h(seq, voices),
        }
    }

    fn propagators(&self) -> Vec<Box<dyn Propagator>> {
        let vars: Vec<usize> = (0..self.n).collect();
        match &self.spec {
            ReducedSpec::Spacing { params, forced } => params
                .s
                .iter()
                .map(|&d| {
                    let single = SpacingParams {
                        s: vec![d],
                        ..params.clone()
                    };
                    Box::new(BoundedSpacing::new(single, *forced, vars.clone(), 1).expect("one value"))
                        as Box<dyn Propagator>
                })
                .collect(),
            ReducedSpec::SpacingH { voices } => voices
                .iter()
                .map(|p| Box::new(Spacing1::new(p.clone(), vars.clone())) as Box<dyn Propagator>)
                .collect(),
        }
    }

    /// Searches for supports. Per-value automata (or per-voice Spacing1)
    /// prune; the semantics checker screens every leaf.
    pub fn solve(&self, limits: &Limits) -> SearchOutcome {
        let domains: Vec<Domain> = self
            .domains
            .iter()
            .map(|d| Domain::new(d.iter().copied()).expect("construction domains are non-empty"))
            .collect();
        let mut store = Store::new(domains);
        let mut engine = Engine::with_propagators(self.n, self.propagators());
        let filter = |seq: &[Value]| self.check(seq);
        search_filtered(&mut store, &mut engine, Heuristic::default(), limits, Some(&filter))
    }

    /// First support, if any, within `timeout`. `Err` on timeout.
    pub fn find_support(&self, timeout: Option<Duration>) -> Result<Option<Vec<Value>>, Duration> {
        let mut limits = Limits::first_solution();
        limits.timeout = timeout;
        let out = self.solve(&limits);
        if out.timed_out && out.solution_count == 0 {
            return Err(timeout.unwrap_or_default());
        }
        Ok(out.solutions.into_iter().next())
    }

    pub fn label_of(&self, value: Value) -> Option<&str> {
        self.mapping.iter().find(|m| m.value == value).map(|m| m.label.as_str())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reduced instance serializes")
    }

    pub fn mapping_json(&self) -> String {
        serde_json::to_string_pretty(&self.mapping).expect("mapping serializes")
    }
}

/// Reads the model encoded in a support and clause-checks it.
pub fn extract_model(support: &[Value], inst: &ReducedInstance) -> Result<Vec<i32>, ReductionError> {
    if support.len() != inst.n {
        return Err(ReductionError::Length {
            expected: inst.n,
            got: support.len(),
        });
    }
    let cnf = &inst.cnf;
    let v = cnf.v;
    let mut lits: Vec<i32> = match inst.kind {
        ReductionKind::Spacing | ReductionKind::SpacingF => support[..v]
            .iter()
            .enumerate()
            .map(|(i, &id)| {
                let lit = lit_of_index(v, id);
                if id == DUMMY || lit.unsigned_abs() as usize != i + 1 {
                    Err(ReductionError::Layout(i + 1))
                } else {
                    Ok(lit)
                }
            })
            .collect::<Result<_, _>>()?,
        ReductionKind::SpacingFNoMax => {
            // The negative part of the first row holds one literal per
            // variable whose complement is true. The clause cell takes
            // precedence: with a single row nothing else ties it down.
            let clause = lit_of_index(v, support[0]);
            if support[0] == DUMMY || support[0] as usize > 2 * v {
                return Err(ReductionError::Layout(1));
            }
            (1..=v)
                .map(|i| {
                    let cell = 4 * v + i;
                    let id = support[cell];
                    let lit = lit_of_index(v, id);
                    if id == DUMMY || lit.unsigned_abs() as usize != i {
                        Err(ReductionError::Layout(cell + 1))
                    } else if clause.unsigned_abs() as usize == i {
                        Ok(clause)
                    } else {
                        Ok(-lit)
                    }
                })
                .collect::<Result<_, _>>()?
        }
        ReductionKind::SpacingH => {
            let c = cnf.c();
            support[c..c + 2 * c * v]
                .iter()
                .filter(|&&id| id != DUMMY && id as usize <= 2 * v)
                .map(|&id| lit_of_index(v, id))
                .collect()
        }
    };
    lits.sort_by_key(|l| (l.unsigned_abs(), *l < 0));
    lits.dedup();
    if !cnf.is_model(&lits) {
        return Err(ReductionError::NotAModel(lits));
    }
    Ok(lits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sat::cnf::brute_model;

    fn phi() -> Cnf {
        Cnf::new(3, vec![vec![-1, 2, 3], vec![-2, 3], vec![-1, -2], vec![1, 2]]).unwrap()
    }

    // p q r ¬p ¬q ¬r
    const P: Value = 1;
    const Q: Value = 2;
    const R: Value = 3;
    const NP: Value = 4;
    const NQ: Value = 5;
    const NR: Value = 6;

    #[test]
    fn spacing_table() {
        let inst = reduce_spacing(&phi()).unwrap();
        assert_eq!(inst.n, 19);
        let ReducedSpec::Spacing { params, forced } = &inst.spec else { panic!() };
        assert!(!forced);
        assert_eq!(params.a, vec![1; 4]);
        assert_eq!(params.b, vec![4; 4]);
        let vars = [vec![P, NP], vec![Q, NQ], vec![R, NR]];
        let clauses = [vec![Q, R, NP], vec![R, NQ], vec![NP, NQ], vec![P, Q]];
        for j in 0..5 {
            for i in 0..3 {
                assert_eq!(inst.domains[j * 4 + i], vars[i]);
            }
            if j < 4 {
                assert_eq!(inst.domains[j * 4 + 3], clauses[j]);
            }
        }
        let single = reduce_spacing(&Cnf::new(1, vec![vec![1]]).unwrap()).unwrap();
        assert_eq!(single.n, 3);
    }

    #[test]
    fn spacing_f_table() {
        let inst = reduce_spacing_f(&phi()).unwrap();
        assert_eq!(inst.n, 44);
        for i in 20..24 {
            assert_eq!(inst.domains[i], vec![DUMMY], "row 6 cell {i}");
        }
        assert_eq!(inst.domains[19], vec![DUMMY]);
        assert_eq!(inst.domains[43], vec![DUMMY]);
        assert_eq!(inst.domains[24], vec![P, NP]);
        assert_eq!(reduce_spacing_f(&Cnf::new(1, vec![vec![1]]).unwrap()).unwrap().n, 10);
    }

    #[test]
    fn spacing_f_nomax_table() {
        let inst = reduce_spacing_f_nomax(&phi()).unwrap();
        assert_eq!(inst.n, 88);
        let ReducedSpec::Spacing { params, forced } = &inst.spec else { panic!() };
        assert!(forced);
        assert_eq!(params.a, vec![16; 3]);
        assert_eq!(params.b, vec![88; 3]);
        let row: Vec<Vec<Value>> = inst.domains[..22].to_vec();
        assert_eq!(row[0], vec![Q, R, NP]);
        assert_eq!(row[1], vec![DUMMY, P]);
        assert_eq!(row[6], vec![DUMMY, NR]);
        assert!(row[7..13].iter().all(|d| d == &vec![DUMMY]));
        assert_eq!(row[13], vec![P, NP]);
        assert_eq!(row[15], vec![R, NR]);
        assert!(row[16..22].iter().all(|d| d == &vec![DUMMY]));
        let small = reduce_spacing_f_nomax(&Cnf::new(1, vec![vec![1], vec![-1]]).unwrap()).unwrap();
        assert_eq!(small.n, 16);
    }

    #[test]
    fn spacing_h_dimensions() {
        let inst = reduce_spacing_h(&phi()).unwrap();
        let ReducedSpec::SpacingH { voices } = &inst.spec else { panic!() };
        assert_eq!((voices[0].p, voices[1].p, inst.n), (76, 82, 328));
        assert_eq!(voices[0].s.len(), 30);
        assert_eq!(voices[1].s.len(), 6);
        let small = reduce_spacing_h(&Cnf::new(1, vec![vec![1], vec![-1]]).unwrap()).unwrap();
        let ReducedSpec::SpacingH { voices } = &small.spec else { panic!() };
        assert_eq!((voices[0].p, voices[1].p, small.n), (14, 16, 32));
        assert_eq!(
            reduce_spacing_h(&Cnf::new(1, vec![vec![1]]).unwrap()),
            Err(ReductionError::SingleClause)
        );
    }

    #[test]
    fn spacing_h_first_rows() {
        let inst = reduce_spacing_h(&phi()).unwrap();
        let id = |s: &str| inst.mapping.iter().find(|m| m.label == s).unwrap().value;
        let set = |labels: &[&str]| {
            let mut v: Vec<Value> = labels.iter().map(|l| if *l == "0" { DUMMY } else { id(l) }).collect();
            v.sort_unstable();
            v
        };
        let d = &inst.domains;
        assert_eq!(d[0], set(&["-x1^1", "x2^1", "x3^1"]));
        assert_eq!(d[1], set(&["x1^2", "x2^2", "x3^2", "-x1^2", "-x2^2", "-x3^2"]));
        assert_eq!(d[4], set(&["x1^1", "x1"]));
        assert_eq!(d[9], set(&["-x3^1", "-x3"]));
        assert_eq!(d[10], set(&["x1^2", "0"]));
        assert_eq!(d[52], set(&["x1'", "x1"]));
        // Row 2 of voice 1.
        assert_eq!(d[76 + 1], set(&["-x2^2", "x3^2"]));
        assert_eq!(d[76 + 4], set(&["x1^1", "0"]));
        assert_eq!(d[76 + 52], set(&["x1'", "0"]));
        assert_eq!(d[327], vec![DUMMY]);
    }

    #[test]
    fn hand_built_support() {
        let cnf = phi();
        let inst = reduce_spacing(&cnf).unwrap();
        let model = [-1, 2, 3];
        let mut seq = Vec::new();
        for j in 0..5 {
            seq.extend(model.iter().map(|&l| lit_index(3, l)));
            if j < 4 {
                let l = cnf.clauses[j].iter().find(|l| model.contains(l)).unwrap();
                seq.push(lit_index(3, *l));
            }
        }
        assert!(inst.check(&seq));
        assert_eq!(extract_model(&seq, &inst).unwrap(), vec![-1, 2, 3]);
    }

    #[test]
    fn solver_agrees_on_running_example() {
        let cnf = phi();
        assert!(brute_model(&cnf).unwrap().is_some());
        for kind in [ReductionKind::Spacing, ReductionKind::SpacingF, ReductionKind::SpacingFNoMax] {
            let inst = reduce(&cnf, kind).unwrap();
            let sup = inst.find_support(None).unwrap().expect("support exists");
            assert!(inst.check(&sup));
            assert!(cnf.is_model(&extract_model(&sup, &inst).unwrap()), "{kind}");
        }
    }

    #[test]
    fn unsat_has_no_support() {
        let cnf = Cnf::new(1, vec![vec![1], vec![-1]]).unwrap();
        for kind in ReductionKind::ALL {
            let inst = reduce(&cnf, kind).unwrap();
            assert_eq!(inst.find_support(None).unwrap(), None, "{kind}");
        }
    }

    #[test]
    fn json_round_trip() {
        let inst = reduce_spacing_f(&phi()).unwrap();
        let back: ReducedInstance = serde_json::from_str(&inst.to_json()).unwrap();
        assert_eq!(back, inst);
        assert_eq!("spacingf-nomax".parse::<ReductionKind>().unwrap(), ReductionKind::SpacingFNoMax);
    }

    #[test]
    fn single_row_nomax_reads_clause_cell() {
        let inst = reduce_spacing_f_nomax(&Cnf::new(1, vec![vec![1]]).unwrap()).unwrap();
        // Both literals sit in the positive part; only the clause cell decides.
        let seq = [1, 1, 2, 0, 0, 1, 0, 0];
        assert!(inst.check(&seq));
        assert_eq!(extract_model(&seq, &inst).unwrap(), vec![1]);
    }
}
