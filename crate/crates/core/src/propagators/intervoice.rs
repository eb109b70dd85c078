//! Incomplete pruning between two voices with disjoint value sets.
//!
//! Placing a voice-1 onset at offset `i` occupies `i`, `i + p1`, ... and so
//! blocks every voice-2 offset those positions fall on. If fewer than
//! `|S2|` free voice-2 offsets would remain, offset `i` cannot hold any
//! voice-1 onset.

use crate::domain::Value;
use crate::engine::{Priority, Propagator};
use crate::params::Spacing1Params;
use crate::store::{PropResult, Store};

/// Whether offset `x` (0-based) of `voice` can still receive some onset of
/// the voice, judged on the folded domains.
fn free_offsets(store: &Store, vars: &[usize], voice: &Spacing1Params) -> Vec<bool> {
    (0..voice.p)
        .map(|x| {
            voice
                .s
                .iter()
                .any(|&d| (0..voice.k).all(|j| store.contains(vars[j * voice.p + x], d)))
        })
        .collect()
}

/// Returns `u2`, the number of free voice-2 offsets, and `b[i-1]`, the
/// number of distinct free voice-2 offsets blocked by a voice-1 onset at
/// offset `i`, for `i` in `1..=p1`.
pub fn intervoice_counts(
    store: &Store,
    vars: &[usize],
    v1: &Spacing1Params,
    v2: &Spacing1Params,
) -> (usize, Vec<usize>) {
    let free = free_offsets(store, vars, v2);
    let u2 = free.iter().filter(|&&f| f).count();
    let horizon = v2.k * v2.p;
    let mut seen = vec![usize::MAX; v2.p];
    let b = (1..=v1.p)
        .map(|i| {
            let mut count = 0;
            for j in 0..v1.k {
                let pos = i + j * v1.p;
                if pos > horizon {
                    break;
                }
                let x = (pos - 1) % v2.p;
                if free[x] && seen[x] != i {
                    seen[x] = i;
                    count += 1;
                }
            }
            count
        })
        .collect();
    (u2, b)
}

pub struct Intervoice {
    v1: Spacing1Params,
    v2: Spacing1Params,
    vars: Vec<usize>,
}

impl Intervoice {
    /// Prunes voice `v1` using the free offsets of voice `v2`.
    pub fn new(v1: Spacing1Params, v2: Spacing1Params, vars: Vec<usize>) -> Self {
        Intervoice { v1, v2, vars }
    }
}

impl Propagator for Intervoice {
    fn name(&self) -> &'static str {
        "intervoice"
    }

    fn variables(&self) -> Vec<usize> {
        self.vars.clone()
    }

    fn priority(&self) -> Priority {
        Priority::Low
    }

    fn idempotent(&self) -> bool {
        // Only voice-1 values are removed, which leaves the counts unchanged.
        true
    }

    fn propagate(&mut self, store: &mut Store) -> PropResult {
        let (u2, b) = intervoice_counts(store, &self.vars, &self.v1, &self.v2);
        let slack = u2 as i64 - self.v2.s.len() as i64;
        let s1: &[Value] = &self.v1.s;
        for (i0, &bi) in b.iter().enumerate() {
            if bi as i64 > slack {
                for j in 0..self.v1.k {
                    let x = self.vars[i0 + j * self.v1.p];
                    store.retain(x, |v| !s1.contains(&v))?;
                }
            }
        }
        Ok(())
    }
}
