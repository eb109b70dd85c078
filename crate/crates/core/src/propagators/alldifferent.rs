use crate::engine::Propagator;
use crate::propagators::matching::{maximum_matching, regin_filter, BipartiteGraph, Matching};
use crate::store::{Failure, PropResult, Store};

/// Domain-consistent AllDifferent over a list of variables.
pub struct AllDifferent {
    vars: Vec<usize>,
    matching: Option<Matching>,
}

impl AllDifferent {
    pub fn new(vars: Vec<usize>) -> Self {
        AllDifferent { vars, matching: None }
    }
}

impl Propagator for AllDifferent {
    fn name(&self) -> &'static str {
        "alldifferent"
    }

    fn variables(&self) -> Vec<usize> {
        self.vars.clone()
    }

    fn idempotent(&self) -> bool {
        true
    }

    fn propagate(&mut self, store: &mut Store) -> PropResult {
        let n_values = self
            .vars
            .iter()
            .filter_map(|&x| store.domain(x).bits().iter().last())
            .max()
            .map_or(0, |m| m + 1);
        let mut g = BipartiteGraph::new(self.vars.len(), n_values);
        for (u, &x) in self.vars.iter().enumerate() {
            for v in store.domain(x).iter() {
                g.add_edge(u, v as usize);
            }
        }
        let m = maximum_matching(&g, self.matching.as_ref());
        if !m.covers_left() {
            return Err(Failure);
        }
        for (u, v) in regin_filter(&g, &m) {
            store.remove(self.vars[u], v as u32)?;
        }
        self.matching = Some(m);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{Domain, Value};

    fn run(doms: &[&[Value]]) -> Result<Vec<Vec<Value>>, Failure> {
        let mut s = Store::new(doms.iter().map(|d| Domain::new(d.iter().copied()).unwrap()).collect());
        AllDifferent::new((0..doms.len()).collect()).propagate(&mut s)?;
        Ok(s.domains().iter().map(|d| d.values()).collect())
    }

    #[test]
    fn forced_value() {
        assert_eq!(run(&[&[1], &[1, 2]]), Ok(vec![vec![1], vec![2]]));
    }

    #[test]
    fn pigeonhole_fails() {
        assert_eq!(run(&[&[1, 2], &[1, 2], &[1, 2]]), Err(Failure));
    }

    #[test]
    fn hall_set_prunes_outside() {
        assert_eq!(
            run(&[&[1, 2], &[1, 2], &[1, 2, 3]]),
            Ok(vec![vec![1, 2], vec![1, 2], vec![3]])
        );
    }
}
