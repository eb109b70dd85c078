//! Propagation queue and fixpoint loop.

use std::collections::VecDeque;

use crate::store::{Failure, PropResult, Store};

/// Scheduling class. Low-priority propagators only run once every
/// high-priority propagator has reached its fixpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Priority {
    High,
    Low,
}

/// A filtering algorithm attached to a set of variables.
///
/// Implementations must be sound: a value taking part in a solution of the
/// propagator's own constraint (given the current domains) is never removed.
pub trait Propagator: Send {
    fn name(&self) -> &'static str;

    /// Variables whose changes should wake this propagator.
    fn variables(&self) -> Vec<usize>;

    fn priority(&self) -> Priority {
        Priority::High
    }

    /// True if one call always reaches the propagator's own fixpoint, so
    /// its own removals need not re-schedule it.
    fn idempotent(&self) -> bool {
        false
    }

    fn propagate(&mut self, store: &mut Store) -> PropResult;
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EngineStats {
    pub propagations: u64,
    pub failures: u64,
}

pub struct Engine {
    props: Vec<Box<dyn Propagator>>,
    watchers: Vec<Vec<usize>>,
    high: VecDeque<usize>,
    low: VecDeque<usize>,
    queued: Vec<bool>,
    stats: EngineStats,
}

impl Engine {
    pub fn new(n_vars: usize) -> Self {
        Engine {
            props: Vec::new(),
            watchers: vec![Vec::new(); n_vars],
            high: VecDeque::new(),
            low: VecDeque::new(),
            queued: Vec::new(),
            stats: EngineStats::default(),
        }
    }

    pub fn with_propagators(n_vars: usize, props: Vec<Box<dyn Propagator>>) -> Self {
        let mut engine = Engine::new(n_vars);
        for p in props {
            engine.add(p);
        }
        engine
    }

    pub fn add(&mut self, prop: Box<dyn Propagator>) -> usize {
        let id = self.props.len();
        for v in prop.variables() {
            if !self.watchers[v].contains(&id) {
                self.watchers[v].push(id);
            }
        }
        self.props.push(prop);
        self.queued.push(false);
        id
    }

    pub fn len(&self) -> usize {
        self.props.len()
    }

    pub fn is_empty(&self) -> bool {
        self.props.is_empty()
    }

    pub fn stats(&self) -> EngineStats {
        self.stats
    }

    pub fn propagator_names(&self) -> Vec<&'static str> {
        self.props.iter().map(|p| p.name()).collect()
    }

    fn enqueue(&mut self, id: usize) {
        if !self.queued[id] {
            self.queued[id] = true;
            match self.props[id].priority() {
                Priority::High => self.high.push_back(id),
                Priority::Low => self.low.push_back(id),
            }
        }
    }

    fn clear_queues(&mut self) {
        self.high.clear();
        self.low.clear();
        self.queued.iter_mut().for_each(|q| *q = false);
    }

    fn schedule_changes(&mut self, store: &mut Store, skip: Option<usize>) {
        for var in store.take_changes() {
            for i in 0..self.watchers[var].len() {
                let id = self.watchers[var][i];
                if Some(id) != skip {
                    self.enqueue(id);
                }
            }
        }
    }

    /// Runs every propagator, then iterates to a fixpoint.
    pub fn propagate_all(&mut self, store: &mut Store) -> PropResult {
        store.clear_changes();
        for id in 0..self.props.len() {
            self.enqueue(id);
        }
        self.run(store)
    }

    /// Schedules the watchers of variables changed since the last call and
    /// iterates to a fixpoint.
    pub fn propagate(&mut self, store: &mut Store) -> PropResult {
        self.schedule_changes(store, None);
        self.run(store)
    }

    fn run(&mut self, store: &mut Store) -> PropResult {
        loop {
            let id = match self.high.pop_front().or_else(|| self.low.pop_front()) {
                Some(id) => id,
                None => return Ok(()),
            };
            self.queued[id] = false;
            self.stats.propagations += 1;
            if self.props[id].propagate(store).is_err() {
                self.stats.failures += 1;
                self.clear_queues();
                store.clear_changes();
                return Err(Failure);
            }
            let skip = self.props[id].idempotent().then_some(id);
            self.schedule_changes(store, skip);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Domain;
    use crate::propagators::NeqOffset;

    #[test]
    fn no_propagators_is_consistent() {
        let mut store = Store::new(vec![Domain::new([1, 2]).unwrap()]);
        let mut engine = Engine::new(1);
        assert_eq!(engine.propagate_all(&mut store), Ok(()));
        assert_eq!(store.domain(0).values(), vec![1, 2]);
    }

    #[test]
    fn neq_chain_reaches_fixpoint() {
        // x = 1, x != y, y != z over {1,2}: y = 2, z = 1.
        let mut store = Store::new(vec![
            Domain::new([1]).unwrap(),
            Domain::new([1, 2]).unwrap(),
            Domain::new([1, 2]).unwrap(),
        ]);
        let mut engine = Engine::with_propagators(
            3,
            vec![Box::new(NeqOffset::new(0, 0, 1, 0)), Box::new(NeqOffset::new(1, 0, 2, 0))],
        );
        engine.propagate_all(&mut store).unwrap();
        assert_eq!(store.domain(1).values(), vec![2]);
        assert_eq!(store.domain(2).values(), vec![1]);
        // Fixpoint is stable.
        let before = store.domains().to_vec();
        engine.propagate_all(&mut store).unwrap();
        assert_eq!(store.domains(), &before[..]);
    }
}
