//! Domain-consistent Spacing1 filtering.
//!
//! The sequence is first channeled (values outside S collapse to the
//! dummy), then folded into one set per period offset. A support is then
//! exactly a perfect matching between S plus `p - |S|` dummy copies and the
//! `p` offsets, so Régin filtering on that value graph yields DC.

use crate::bitset::BitSet;
use crate::domain::{Domain, Value, DUMMY};
use crate::engine::Propagator;
use crate::params::Spacing1Params;
use crate::propagators::matching::{maximum_matching, regin_filter, BipartiteGraph, Matching};
use crate::store::{Failure, PropResult, Store};

/// Left-hand node of the value graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ValueNode {
    Value(Value),
    /// The j-th copy of the dummy value, 1-based.
    Dummy(usize),
}

/// Channeled domain: `(D ∩ S) ∪ {0 if D ⊄ S}`.
pub fn channel(domain: &Domain, s: &BitSet) -> BitSet {
    let mut out = domain.bits().clone();
    out.intersect_with(s);
    if domain.bits().has_outside(s) {
        out.insert(DUMMY as usize);
    }
    out
}

/// Folded sets `P_1..P_p`, each the intersection of the channeled domains
/// at the `k` aligned positions.
pub fn fold(store: &Store, vars: &[usize], params: &Spacing1Params) -> PropResult<Vec<BitSet>> {
    let s = set_of(&params.s);
    let mut folded = Vec::with_capacity(params.p);
    for i in 0..params.p {
        let mut acc = channel(store.domain(vars[i]), &s);
        for j in 1..params.k {
            acc.intersect_with(&channel(store.domain(vars[j * params.p + i]), &s));
        }
        if acc.is_empty() {
            return Err(Failure);
        }
        folded.push(acc);
    }
    Ok(folded)
}

fn set_of(s: &[Value]) -> BitSet {
    BitSet::from_iter_with_capacity(64, s.iter().map(|&d| d as usize))
}

/// Value graph over the folded sets. Positions are 1-based in
/// [`ValueGraph::labeled_edges`].
#[derive(Debug, Clone)]
pub struct ValueGraph {
    pub graph: BipartiteGraph,
    pub nodes: Vec<ValueNode>,
}

impl ValueGraph {
    pub fn labeled_edges(&self) -> Vec<(ValueNode, usize)> {
        let mut e: Vec<_> = self.graph.edges().map(|(u, i)| (self.nodes[u], i + 1)).collect();
        e.sort();
        e
    }
}

pub fn build_value_graph(folded: &[BitSet], s: &[Value]) -> PropResult<ValueGraph> {
    let p = folded.len();
    if s.len() > p {
        return Err(Failure);
    }
    let mut nodes: Vec<ValueNode> = s.iter().map(|&d| ValueNode::Value(d)).collect();
    nodes.extend((1..=p - s.len()).map(ValueNode::Dummy));
    let mut graph = BipartiteGraph::new(p, p);
    for (u, node) in nodes.iter().enumerate() {
        let v = match node {
            ValueNode::Value(d) => *d,
            ValueNode::Dummy(_) => DUMMY,
        };
        for (i, set) in folded.iter().enumerate() {
            if set.contains(v as usize) {
                graph.add_edge(u, i);
            }
        }
    }
    Ok(ValueGraph { graph, nodes })
}

pub struct Spacing1 {
    params: Spacing1Params,
    vars: Vec<usize>,
    s: BitSet,
    matching: Option<Matching>,
}

impl Spacing1 {
    /// `vars[i]` is the store index of `X_{i+1}`.
    pub fn new(params: Spacing1Params, vars: Vec<usize>) -> Self {
        assert_eq!(vars.len(), params.n, "one variable per sequence position");
        let s = set_of(&params.s);
        Spacing1 {
            params,
            vars,
            s,
            matching: None,
        }
    }

    pub fn params(&self) -> &Spacing1Params {
        &self.params
    }

    /// Restricts every aligned position of offset `i` to the channeled set `keep`.
    fn restrict(&self, store: &mut Store, i: usize, keep: &BitSet) -> PropResult {
        let allow_other = keep.contains(DUMMY as usize);
        for j in 0..self.params.k {
            let x = self.vars[j * self.params.p + i];
            let s = &self.s;
            store.retain(x, |v| if s.contains(v as usize) { keep.contains(v as usize) } else { allow_other })?;
        }
        Ok(())
    }
}

impl Propagator for Spacing1 {
    fn name(&self) -> &'static str {
        "spacing1"
    }

    fn variables(&self) -> Vec<usize> {
        self.vars.clone()
    }

    fn idempotent(&self) -> bool {
        true
    }

    fn propagate(&mut self, store: &mut Store) -> PropResult {
        let Spacing1Params { p, k, n, .. } = self.params;
        for x in k * p..n {
            store.remove_all(self.vars[x], &self.s)?;
        }
        let mut folded = fold(store, &self.vars, &self.params)?;
        let vg = build_value_graph(&folded, &self.params.s)?;
        let m = maximum_matching(&vg.graph, self.matching.as_ref());
        if !m.covers_left() {
            return Err(Failure);
        }
        let n_s = self.params.s.len();
        let mut dummy_dead: Vec<usize> = vec![0; p];
        for (u, i) in regin_filter(&vg.graph, &m) {
            match vg.nodes[u] {
                ValueNode::Value(d) => {
                    folded[i].remove(d as usize);
                }
                ValueNode::Dummy(_) => dummy_dead[i] += 1,
            }
        }
        // Dummy copies are interchangeable, so either all of their edges to
        // an offset survive or none do.
        for (i, dead) in dummy_dead.iter().enumerate() {
            if *dead > 0 || (n_s == p && folded[i].contains(DUMMY as usize)) {
                folded[i].remove(DUMMY as usize);
            }
        }
        for (i, keep) in folded.iter().enumerate() {
            self.restrict(store, i, keep)?;
        }
        self.matching = Some(m);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{check_spacing1, dc_oracle, DcOutcome, DEFAULT_CAP};

    fn doms(v: &[&[Value]]) -> Vec<Domain> {
        v.iter().map(|d| Domain::new(d.iter().copied()).unwrap()).collect()
    }

    #[test]
    fn empty_set_is_free() {
        let params = Spacing1Params::new(vec![], 2, 2, 5).unwrap();
        let row: &[Value] = &[1, 2];
        let mut store = Store::new(doms(&[row; 5]));
        Spacing1::new(params, (0..5).collect()).propagate(&mut store).unwrap();
        assert!(store.domains().iter().all(|d| d.size() == 2));
    }

    #[test]
    fn tail_cleared() {
        // n=6, p=2, k=2, S={a}: a cannot appear at X5, X6.
        let a = 1;
        let params = Spacing1Params::new(vec![a], 2, 2, 6).unwrap();
        let raw: Vec<Vec<Value>> = vec![vec![a, 0]; 6];
        let mut store = Store::new(doms(&raw.iter().map(Vec::as_slice).collect::<Vec<_>>()));
        Spacing1::new(params.clone(), (0..6).collect()).propagate(&mut store).unwrap();
        let DcOutcome::Pruned(expect) = dc_oracle(&raw, |x| check_spacing1(x, &params), DEFAULT_CAP).unwrap() else {
            panic!("satisfiable");
        };
        let got: Vec<Vec<Value>> = store.domains().iter().map(Domain::values).collect();
        assert_eq!(got, expect);
        assert_eq!(got[4], vec![0]);
    }

    #[test]
    fn too_many_values_fail() {
        let params = Spacing1Params::new(vec![1, 2, 3], 2, 1, 2).unwrap();
        let mut store = Store::new(doms(&[&[1, 2, 3], &[1, 2, 3]]));
        assert_eq!(Spacing1::new(params, vec![0, 1]).propagate(&mut store), Err(Failure));
    }

    #[test]
    fn disjoint_alignment_fails() {
        let params = Spacing1Params::new(vec![1, 2], 1, 2, 2).unwrap();
        let mut store = Store::new(doms(&[&[1], &[2]]));
        let mut prop = Spacing1::new(params.clone(), vec![0, 1]);
        assert_eq!(fold(&store, &[0, 1], &params), Err(Failure));
        assert_eq!(prop.propagate(&mut store), Err(Failure));
    }

    #[test]
    fn k_one_fold_is_channel() {
        let params = Spacing1Params::new(vec![1, 2], 3, 1, 3).unwrap();
        let store = Store::new(doms(&[&[1, 5], &[2], &[7, 8]]));
        let f = fold(&store, &[0, 1, 2], &params).unwrap();
        let sets: Vec<Vec<usize>> = f.iter().map(|b| b.iter().collect()).collect();
        assert_eq!(sets, vec![vec![0, 1], vec![2], vec![0]]);
    }
}
