//! Domain-consistent Spacing for small value sets via a layered automaton.
//!
//! Each value of S is tracked by its occurrence count `t` (capped at `k`)
//! and the distance since its last occurrence. The joint state over all
//! values is unfolded over the `n` positions; a value survives at position
//! `x` iff it labels an edge of some accepting path.

use std::collections::HashMap;

use thiserror::Error;

use crate::domain::Value;
use crate::engine::Propagator;
use crate::params::SpacingParams;
use crate::store::{Failure, PropResult, Store};

pub const DEFAULT_MAX_VALUES: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundedError {
    #[error("{got} values exceed the automaton limit of {cap}")]
    TooManyValues { got: usize, cap: usize },
}

/// Transition table for a single value.
#[derive(Debug, Clone)]
struct Tracker {
    k: usize,
    a: Vec<usize>,
    b: Vec<usize>,
    // base[t] = first code of occurrence count t, for 1 <= t < k.
    base: Vec<usize>,
    done: usize,
}

impl Tracker {
    fn new(params: &SpacingParams) -> Self {
        let mut base = vec![0; params.k];
        let mut next = 1;
        for t in 1..params.k {
            base[t] = next;
            next += params.b[t - 1];
        }
        Tracker {
            k: params.k,
            a: params.a.clone(),
            b: params.b.clone(),
            base,
            done: next,
        }
    }

    fn codes(&self) -> usize {
        self.done + 1
    }

    fn decode(&self, code: usize) -> (usize, usize) {
        if code == 0 {
            return (0, 0);
        }
        if code == self.done {
            return (self.k, 0);
        }
        let t = (1..self.k).rev().find(|&t| self.base[t] <= code).expect("valid code");
        (t, code - self.base[t])
    }

    fn after_occurrence(&self, t: usize) -> usize {
        if t >= self.k {
            self.done
        } else {
            self.base[t]
        }
    }

    fn step(&self, code: usize, occurs: bool) -> Option<usize> {
        let (t, gap) = self.decode(code);
        if t == 0 {
            return Some(if occurs { self.after_occurrence(1) } else { 0 });
        }
        if t == self.k {
            return Some(code);
        }
        let dist = gap + 1;
        let (a, b) = (self.a[t - 1], self.b[t - 1]);
        if occurs {
            (a <= dist && dist <= b).then(|| self.after_occurrence(t + 1))
        } else {
            (dist < b).then(|| self.base[t] + dist)
        }
    }

    fn accepting(&self, code: usize, forced: bool) -> bool {
        code == self.done || (!forced && code == 0)
    }
}

/// Layered transition graph over the current domains.
#[derive(Debug, Clone)]
pub struct LayeredGraph {
    /// `edges[x]` lists `(from, symbol, to)` state indices between layers
    /// `x` and `x + 1`; symbol `s.len()` stands for any value outside S.
    edges: Vec<Vec<(usize, usize, usize)>>,
    layer_sizes: Vec<usize>,
    accepting_last: Vec<bool>,
    n_symbols: usize,
}

impl LayeredGraph {
    pub fn build(params: &SpacingParams, forced: bool, domains: &[&[Value]]) -> Self {
        let tracker = Tracker::new(params);
        let radix = tracker.codes() as u64;
        let m = params.s.len();
        let other = m;
        let encode = |codes: &[usize]| codes.iter().rev().fold(0u64, |acc, &c| acc * radix + c as u64);
        let decode = |mut key: u64| {
            (0..m)
                .map(|_| {
                    let c = (key % radix) as usize;
                    key /= radix;
                    c
                })
                .collect::<Vec<usize>>()
        };

        let mut layer: Vec<u64> = vec![encode(&vec![0; m])];
        let mut edges = Vec::with_capacity(domains.len());
        let mut layer_sizes = vec![1];
        for dom in domains {
            let mut symbols: Vec<usize> = (0..m).filter(|&i| dom.contains(&params.s[i])).collect();
            if dom.iter().any(|v| !params.s.contains(v)) {
                symbols.push(other);
            }
            let mut next: Vec<u64> = Vec::new();
            let mut index: HashMap<u64, usize> = HashMap::new();
            let mut layer_edges = Vec::new();
            for (from, &key) in layer.iter().enumerate() {
                let codes = decode(key);
                for &sym in &symbols {
                    let stepped: Option<Vec<usize>> =
                        codes.iter().enumerate().map(|(i, &c)| tracker.step(c, i == sym)).collect();
                    if let Some(nc) = stepped {
                        let nk = encode(&nc);
                        let to = *index.entry(nk).or_insert_with(|| {
                            next.push(nk);
                            next.len() - 1
                        });
                        layer_edges.push((from, sym, to));
                    }
                }
            }
            edges.push(layer_edges);
            layer_sizes.push(next.len());
            layer = next;
        }
        let accepting_last = layer
            .iter()
            .map(|&key| decode(key).iter().all(|&c| tracker.accepting(c, forced)))
            .collect();
        LayeredGraph {
            edges,
            layer_sizes,
            accepting_last,
            n_symbols: m + 1,
        }
    }

    pub fn state_count(&self) -> usize {
        self.layer_sizes.iter().sum()
    }

    /// For each position, which symbols label an edge on an accepting path.
    /// `None` if no accepting path exists.
    pub fn supported_symbols(&self) -> Option<Vec<Vec<bool>>> {
        let n = self.edges.len();
        let mut alive: Vec<bool> = self.accepting_last.clone();
        let mut out = vec![vec![false; self.n_symbols]; n];
        for x in (0..n).rev() {
            let mut prev = vec![false; self.layer_sizes[x]];
            for &(from, _, to) in &self.edges[x] {
                if alive[to] {
                    prev[from] = true;
                }
            }
            // Every state in a layer is forward-reachable by construction.
            for &(from, sym, to) in &self.edges[x] {
                if alive[to] && prev[from] {
                    out[x][sym] = true;
                }
            }
            alive = prev;
        }
        alive.first().copied().unwrap_or(false).then_some(out)
    }

    pub fn accepts(&self) -> bool {
        self.supported_symbols().is_some()
    }
}

pub struct BoundedSpacing {
    params: SpacingParams,
    forced: bool,
    vars: Vec<usize>,
}

impl BoundedSpacing {
    /// `forced` additionally requires every value of S to occur.
    pub fn new(params: SpacingParams, forced: bool, vars: Vec<usize>, cap: usize) -> Result<Self, BoundedError> {
        assert_eq!(vars.len(), params.n, "one variable per sequence position");
        if params.s.len() > cap {
            return Err(BoundedError::TooManyValues {
                got: params.s.len(),
                cap,
            });
        }
        Ok(BoundedSpacing { params, forced, vars })
    }
}

impl Propagator for BoundedSpacing {
    fn name(&self) -> &'static str {
        "bounded-spacing"
    }

    fn variables(&self) -> Vec<usize> {
        self.vars.clone()
    }

    fn idempotent(&self) -> bool {
        true
    }

    fn propagate(&mut self, store: &mut Store) -> PropResult {
        let doms: Vec<Vec<Value>> = self.vars.iter().map(|&x| store.domain(x).values()).collect();
        let refs: Vec<&[Value]> = doms.iter().map(Vec::as_slice).collect();
        let graph = LayeredGraph::build(&self.params, self.forced, &refs);
        let support = graph.supported_symbols().ok_or(Failure)?;
        let s = &self.params.s;
        for (pos, &x) in self.vars.iter().enumerate() {
            let ok = &support[pos];
            store.retain(x, |v| match s.iter().position(|&d| d == v) {
                Some(i) => ok[i],
                None => ok[s.len()],
            })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Domain;

    fn run(raw: &[Vec<Value>], params: SpacingParams, forced: bool) -> PropResult<Vec<Vec<Value>>> {
        let mut s = Store::new(raw.iter().map(|d| Domain::new(d.iter().copied()).unwrap()).collect());
        BoundedSpacing::new(params, forced, (0..raw.len()).collect(), DEFAULT_MAX_VALUES)
            .unwrap()
            .propagate(&mut s)?;
        Ok(s.domains().iter().map(Domain::values).collect())
    }

    fn fixed(seq: &[Value]) -> Vec<&[Value]> {
        seq.chunks(1).collect()
    }

    #[test]
    fn zero_or_two_occurrences() {
        let p = SpacingParams::uniform(vec![1], 1, 4, 2, 4).unwrap();
        for (seq, ok) in [([0, 0, 0, 0], true), ([1, 0, 0, 0], false), ([1, 0, 1, 0], true), ([1, 1, 1, 1], true)] {
            assert_eq!(LayeredGraph::build(&p, false, &fixed(&seq)).accepts(), ok, "{seq:?}");
        }
    }

    #[test]
    fn playlist() {
        let n = 360;
        let p = SpacingParams::uniform(vec![1], 30, 90, 4, n).unwrap();
        let mut seq = vec![0; n];
        for x in [1, 40, 80, 120] {
            seq[x - 1] = 1;
        }
        assert!(LayeredGraph::build(&p, false, &fixed(&seq)).accepts());
        let mut bad = vec![0; n];
        for x in [1, 20] {
            bad[x - 1] = 1;
        }
        assert!(!LayeredGraph::build(&p, false, &fixed(&bad)).accepts());
    }

    #[test]
    fn no_value_of_s_present() {
        let raw = vec![vec![5, 6]; 4];
        let p = SpacingParams::uniform(vec![1], 2, 2, 3, 4).unwrap();
        assert_eq!(run(&raw, p, false).unwrap(), raw);
    }

    #[test]
    fn too_short_fails() {
        let mut raw = vec![vec![0, 1]; 4];
        raw[0] = vec![1];
        let p = SpacingParams::uniform(vec![1], 2, 2, 3, 4).unwrap();
        assert_eq!(run(&raw, p, false), Err(Failure));
    }

    #[test]
    fn forced_requires_occurrence() {
        let raw = vec![vec![0, 1]; 2];
        let p = SpacingParams::uniform(vec![1], 1, 1, 2, 2).unwrap();
        assert_eq!(run(&raw, p, true).unwrap(), vec![vec![1], vec![1]]);
    }

    #[test]
    fn cap_enforced() {
        let p = SpacingParams::uniform(vec![1, 2, 3, 4], 1, 1, 2, 4).unwrap();
        assert!(BoundedSpacing::new(p, false, (0..4).collect(), 3).is_err());
    }
}
