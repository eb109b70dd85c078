//! Spacing_SB by counting.
//!
//! Offset `i` of the period can hold `d` iff every aligned position still
//! allows `d`, and must hold `d` iff additionally some aligned position is
//! already fixed to `d`. With `u` possible and `v` forced offsets the
//! constraint fails iff `u < m` or `v > m`; it is forced to the possible
//! offsets when `u = m` and to the forced ones when `v = m`.

use crate::engine::Propagator;
use crate::params::SbParams;
use crate::store::{Failure, PropResult, Store};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Offset {
    Excluded,
    Open,
    Forced,
}

/// Classifies each offset `1..=p`; fails if some offset is both excluded and
/// forced.
pub fn classify(store: &Store, vars: &[usize], params: &SbParams) -> PropResult<Vec<Offset>> {
    let SbParams { d, p, k, .. } = *params;
    (0..p)
        .map(|i| {
            let mut possible = true;
            let mut fixed = false;
            for j in 0..k {
                let dom = store.domain(vars[j * p + i]);
                possible &= dom.contains(d);
                fixed |= dom.value() == Some(d);
            }
            match (possible, fixed) {
                (true, true) => Ok(Offset::Forced),
                (true, false) => Ok(Offset::Open),
                (false, false) => Ok(Offset::Excluded),
                (false, true) => Err(Failure),
            }
        })
        .collect()
}

pub struct SpacingSb {
    params: SbParams,
    vars: Vec<usize>,
}

impl SpacingSb {
    pub fn new(params: SbParams, vars: Vec<usize>) -> Self {
        assert_eq!(vars.len(), params.n, "one variable per sequence position");
        SpacingSb { params, vars }
    }

    fn set_offset(&self, store: &mut Store, i: usize, has_d: bool) -> PropResult {
        let SbParams { d, p, k, .. } = self.params;
        for j in 0..k {
            let x = self.vars[j * p + i];
            if has_d {
                store.assign(x, d)?;
            } else {
                store.remove(x, d)?;
            }
        }
        Ok(())
    }
}

impl Propagator for SpacingSb {
    fn name(&self) -> &'static str {
        "spacing-sb"
    }

    fn variables(&self) -> Vec<usize> {
        self.vars.clone()
    }

    fn idempotent(&self) -> bool {
        true
    }

    fn propagate(&mut self, store: &mut Store) -> PropResult {
        let SbParams { d, m, p, k, n } = self.params;
        for x in k * p..n {
            store.remove(self.vars[x], d)?;
        }
        let offsets = classify(store, &self.vars, &self.params)?;
        let u = offsets.iter().filter(|&&o| o != Offset::Excluded).count();
        let v = offsets.iter().filter(|&&o| o == Offset::Forced).count();
        if u < m || v > m {
            return Err(Failure);
        }
        for (i, &o) in offsets.iter().enumerate() {
            let target = match o {
                Offset::Excluded => Some(false),
                Offset::Forced => Some(true),
                Offset::Open if u == m => Some(true),
                Offset::Open if v == m => Some(false),
                Offset::Open => None,
            };
            if let Some(has_d) = target {
                self.set_offset(store, i, has_d)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{Domain, Value};

    fn run(raw: &[Vec<Value>], params: SbParams) -> PropResult<Vec<Vec<Value>>> {
        let mut s = Store::new(raw.iter().map(|d| Domain::new(d.iter().copied()).unwrap()).collect());
        SpacingSb::new(params, (0..raw.len()).collect()).propagate(&mut s)?;
        Ok(s.domains().iter().map(Domain::values).collect())
    }

    #[test]
    fn forced_offset_spreads() {
        // p=3, k=2, m=1, d forced at offset 2.
        let mut raw = vec![vec![0, 1]; 6];
        raw[1] = vec![1];
        let got = run(&raw, SbParams::new(1, 1, 3, 2, 6).unwrap()).unwrap();
        assert_eq!(got, vec![vec![0], vec![1], vec![0], vec![0], vec![1], vec![0]]);
    }

    #[test]
    fn zero_occurrences() {
        let raw = vec![vec![0, 1]; 4];
        let got = run(&raw, SbParams::new(1, 0, 2, 2, 4).unwrap()).unwrap();
        assert!(got.iter().all(|d| d == &vec![0]));
    }

    #[test]
    fn full_period() {
        let raw = vec![vec![0, 1]; 4];
        let got = run(&raw, SbParams::new(1, 2, 2, 2, 4).unwrap()).unwrap();
        assert!(got.iter().all(|d| d == &vec![1]));
    }

    #[test]
    fn too_few_places_fail() {
        let raw = vec![vec![0, 1], vec![0], vec![0, 1], vec![0]];
        assert_eq!(run(&raw, SbParams::new(1, 2, 2, 2, 4).unwrap()), Err(Failure));
    }
}
