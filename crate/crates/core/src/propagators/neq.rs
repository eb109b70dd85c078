use crate::domain::Value;
use crate::engine::Propagator;
use crate::store::{PropResult, Store};

/// `x + cx != y + cy` over non-negative values.
#[derive(Debug, Clone)]
pub struct NeqOffset {
    x: usize,
    cx: i64,
    y: usize,
    cy: i64,
}

impl NeqOffset {
    pub fn new(x: usize, cx: i64, y: usize, cy: i64) -> Self {
        NeqOffset { x, cx, y, cy }
    }

    fn prune(store: &mut Store, from: usize, shifted: i64) -> PropResult {
        if let Ok(v) = Value::try_from(shifted) {
            store.remove(from, v)?;
        }
        Ok(())
    }
}

impl Propagator for NeqOffset {
    fn name(&self) -> &'static str {
        "neq-offset"
    }

    fn variables(&self) -> Vec<usize> {
        vec![self.x, self.y]
    }

    fn idempotent(&self) -> bool {
        true
    }

    fn propagate(&mut self, store: &mut Store) -> PropResult {
        if let Some(vx) = store.domain(self.x).value() {
            Self::prune(store, self.y, vx as i64 + self.cx - self.cy)?;
        }
        if let Some(vy) = store.domain(self.y).value() {
            Self::prune(store, self.x, vy as i64 + self.cy - self.cx)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Domain;
    use crate::store::Failure;

    fn run(dx: &[Value], cx: i64, dy: &[Value], cy: i64) -> Result<Vec<Vec<Value>>, Failure> {
        let mut s = Store::new(vec![
            Domain::new(dx.iter().copied()).unwrap(),
            Domain::new(dy.iter().copied()).unwrap(),
        ]);
        NeqOffset::new(0, cx, 1, cy).propagate(&mut s)?;
        Ok(s.domains().iter().map(|d| d.values()).collect())
    }

    #[test]
    fn singleton_side_prunes_other() {
        assert_eq!(run(&[3], 0, &[1, 5], 2), Ok(vec![vec![3], vec![5]]));
    }

    #[test]
    fn both_open_no_change() {
        assert_eq!(run(&[1, 2], 0, &[1, 2], 0), Ok(vec![vec![1, 2], vec![1, 2]]));
    }

    #[test]
    fn violated_fails() {
        assert_eq!(run(&[3], 0, &[1], 2), Err(Failure));
    }

    #[test]
    fn negative_shift_ignored() {
        assert_eq!(run(&[1], 0, &[0, 1], 5), Ok(vec![vec![1], vec![0, 1]]));
    }
}
