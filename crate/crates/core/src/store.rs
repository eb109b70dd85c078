//! Variable store with a chronological trail of value removals.

use thiserror::Error;

use crate::bitset::BitSet;
use crate::domain::{Domain, Value};

/// Raised when an operation would leave some domain empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Error)]
#[error("domain wipe-out")]
pub struct Failure;

pub type PropResult<T = ()> = Result<T, Failure>;

/// Outcome of a successful domain mutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Change {
    Removed,
    NoChange,
}

impl Change {
    pub fn changed(self) -> bool {
        self == Change::Removed
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum StoreError {
    #[error("checkpoint mark was already consumed")]
    StaleMark,
}

/// Handle returned by [`Store::checkpoint`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mark {
    level: usize,
    trail_len: usize,
}

#[derive(Debug, Clone)]
pub struct Store {
    domains: Vec<Domain>,
    trail: Vec<(u32, Value)>,
    marks: Vec<usize>,
    changed: Vec<usize>,
    is_changed: Vec<bool>,
}

impl Store {
    pub fn new(domains: Vec<Domain>) -> Self {
        let n = domains.len();
        Store {
            domains,
            trail: Vec::new(),
            marks: Vec::new(),
            changed: Vec::new(),
            is_changed: vec![false; n],
        }
    }

    pub fn len(&self) -> usize {
        self.domains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domains.is_empty()
    }

    #[inline]
    pub fn domain(&self, var: usize) -> &Domain {
        &self.domains[var]
    }

    pub fn domains(&self) -> &[Domain] {
        &self.domains
    }

    #[inline]
    pub fn contains(&self, var: usize, v: Value) -> bool {
        self.domains[var].contains(v)
    }

    #[inline]
    pub fn is_fixed(&self, var: usize) -> bool {
        self.domains[var].is_fixed()
    }

    pub fn all_fixed(&self) -> bool {
        self.domains.iter().all(Domain::is_fixed)
    }

    /// Complete assignment, if every variable is fixed.
    pub fn assignment(&self) -> Option<Vec<Value>> {
        self.domains.iter().map(Domain::value).collect()
    }

    /// Current search depth (number of live checkpoints).
    pub fn depth(&self) -> usize {
        self.marks.len()
    }

    #[inline]
    fn touch(&mut self, var: usize) {
        if !self.is_changed[var] {
            self.is_changed[var] = true;
            self.changed.push(var);
        }
    }

    #[inline]
    fn remove_unchecked(&mut self, var: usize, v: Value) {
        self.domains[var].raw_remove(v);
        self.trail.push((var as u32, v));
        self.touch(var);
    }

    /// Removes `v` from the domain of `var`. Removing the last value fails
    /// without mutating anything.
    pub fn remove(&mut self, var: usize, v: Value) -> PropResult<Change> {
        let d = &self.domains[var];
        if !d.contains(v) {
            return Ok(Change::NoChange);
        }
        if d.size() == 1 {
            return Err(Failure);
        }
        self.remove_unchecked(var, v);
        Ok(Change::Removed)
    }

    /// Reduces the domain of `var` to `{v}`.
    pub fn assign(&mut self, var: usize, v: Value) -> PropResult<Change> {
        let d = &self.domains[var];
        if !d.contains(v) {
            return Err(Failure);
        }
        if d.size() == 1 {
            return Ok(Change::NoChange);
        }
        let others: Vec<Value> = d.iter().filter(|&w| w != v).collect();
        for w in others {
            self.remove_unchecked(var, w);
        }
        Ok(Change::Removed)
    }

    /// Keeps only the values of `var` accepted by `keep`.
    pub fn retain<F: FnMut(Value) -> bool>(&mut self, var: usize, mut keep: F) -> PropResult<Change> {
        let mut drop = Vec::new();
        let mut kept = 0;
        for v in self.domains[var].iter() {
            if keep(v) {
                kept += 1;
            } else {
                drop.push(v);
            }
        }
        if kept == 0 {
            return Err(Failure);
        }
        if drop.is_empty() {
            return Ok(Change::NoChange);
        }
        for v in drop {
            self.remove_unchecked(var, v);
        }
        Ok(Change::Removed)
    }

    /// Removes every value of `set` from `var`.
    pub fn remove_all(&mut self, var: usize, set: &BitSet) -> PropResult<Change> {
        if !self.domains[var].bits().intersects(set) {
            return Ok(Change::NoChange);
        }
        self.retain(var, |v| !set.contains(v as usize))
    }

    pub fn checkpoint(&mut self) -> Mark {
        self.marks.push(self.trail.len());
        Mark {
            level: self.marks.len(),
            trail_len: self.trail.len(),
        }
    }

    /// Restores every domain to its state at `mark`. Marks nested inside
    /// `mark` are discarded; rolling back a consumed mark is an error.
    pub fn rollback(&mut self, mark: Mark) -> Result<(), StoreError> {
        if mark.level == 0
            || mark.level > self.marks.len()
            || self.marks[mark.level - 1] != mark.trail_len
        {
            return Err(StoreError::StaleMark);
        }
        for (var, v) in self.trail.drain(mark.trail_len..).rev() {
            self.domains[var as usize].raw_insert(v);
        }
        self.marks.truncate(mark.level - 1);
        self.clear_changes();
        Ok(())
    }

    /// Variables modified since the last call, in first-change order.
    pub fn take_changes(&mut self) -> Vec<usize> {
        for &v in &self.changed {
            self.is_changed[v] = false;
        }
        std::mem::take(&mut self.changed)
    }

    pub fn clear_changes(&mut self) {
        for &v in &self.changed {
            self.is_changed[v] = false;
        }
        self.changed.clear();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn store(doms: &[&[Value]]) -> Store {
        Store::new(doms.iter().map(|d| Domain::new(d.iter().copied()).unwrap()).collect())
    }

    #[test]
    fn remove_events() {
        let mut s = store(&[&[1, 2]]);
        assert_eq!(s.remove(0, 2), Ok(Change::Removed));
        assert_eq!(s.domain(0).values(), vec![1]);
        assert_eq!(s.remove(0, 3), Ok(Change::NoChange));
        assert_eq!(s.remove(0, 1), Err(Failure));
        assert_eq!(s.domain(0).values(), vec![1]);
    }

    #[test]
    fn assign_events() {
        let mut s = store(&[&[1, 2, 3], &[1, 2], &[1]]);
        assert_eq!(s.assign(0, 1), Ok(Change::Removed));
        assert_eq!(s.domain(0).values(), vec![1]);
        assert_eq!(s.assign(1, 4), Err(Failure));
        assert_eq!(s.assign(2, 1), Ok(Change::NoChange));
    }

    #[test]
    fn checkpoint_rollback() {
        let mut s = store(&[&[1, 2], &[1, 2, 3]]);
        let before = s.domains().to_vec();
        let m = s.checkpoint();
        s.remove(0, 2).unwrap();
        s.rollback(m).unwrap();
        assert_eq!(s.domains(), &before[..]);

        let m = s.checkpoint();
        s.rollback(m).unwrap();
        assert_eq!(s.domains(), &before[..]);
        assert_eq!(s.rollback(m), Err(StoreError::StaleMark));
    }

    #[test]
    fn nested_marks_lifo() {
        let mut s = store(&[&[1, 2, 3]]);
        let outer = s.checkpoint();
        s.remove(0, 1).unwrap();
        let mid = s.domains().to_vec();
        let inner = s.checkpoint();
        s.remove(0, 2).unwrap();
        assert_eq!(s.depth(), 2);
        s.rollback(inner).unwrap();
        assert_eq!(s.domains(), &mid[..]);
        s.rollback(outer).unwrap();
        assert_eq!(s.domain(0).values(), vec![1, 2, 3]);
        assert_eq!(s.depth(), 0);
    }

    #[test]
    fn rollback_outer_discards_inner() {
        let mut s = store(&[&[1, 2, 3]]);
        let outer = s.checkpoint();
        let inner = s.checkpoint();
        s.remove(0, 3).unwrap();
        s.rollback(outer).unwrap();
        assert_eq!(s.rollback(inner), Err(StoreError::StaleMark));
        assert_eq!(s.domain(0).size(), 3);
    }
}
