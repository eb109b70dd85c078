//! Random instances of the asynchronous rhythm problem.
//!
//! Draw order on one seeded stream: periods, then the voices receiving the
//! leftover onsets, then (for extended instances) removals.
//!
//! * `p_2 = p_1 + 4 + U{-1..1}` and `p_l = 2 p_{l-2} + U{-3..3}` for `l >= 3`.
//! * `n = p_h k_h` and `k_l = floor(n / p_l)` for the other voices.
//! * About 75% of the `n` beats carry an onset. These occurrences are
//!   shared evenly between voices, leftover ones going to randomly drawn
//!   voices, and each voice gets `m_l = round(share_l / k_l)` onsets,
//!   clamped to `1..=p_l`. Occurrences a voice cannot hold move to the
//!   voices that still have room.

use thiserror::Error;

use crate::domain::Value;
use crate::rhythm::instance::{RhythmInstance, Voice};
use crate::rng::SeededRng;

pub const ONSET_DENSITY: f64 = 0.75;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("need at least one voice")]
    NoVoices,
    #[error("first period must be at least 2 beats")]
    ShortPeriod,
    #[error("last voice needs at least one repetition")]
    NoRepetitions,
    #[error("voice {0} has a non-positive period")]
    DegeneratePeriod(usize),
    #[error("voice {0} has a longer period than the sequence")]
    NoRoom(usize),
    #[error("cannot place {0} onset occurrences within the voice capacities")]
    Infeasible(usize),
    #[error("removal fraction must lie in [0, 1)")]
    BadFraction,
}

pub struct Generator {
    rng: SeededRng,
    seed: u64,
}

impl Generator {
    pub fn new(seed: u64) -> Self {
        Generator {
            rng: SeededRng::new(seed),
            seed,
        }
    }

    pub fn instance(&mut self, h: usize, p1: usize, kh: usize) -> Result<RhythmInstance, GenerateError> {
        if h == 0 {
            return Err(GenerateError::NoVoices);
        }
        if p1 < 2 {
            return Err(GenerateError::ShortPeriod);
        }
        if kh == 0 {
            return Err(GenerateError::NoRepetitions);
        }
        let mut periods: Vec<i64> = vec![p1 as i64];
        for l in 1..h {
            let p = if l == 1 {
                periods[0] + 4 + self.rng.range(-1, 1)
            } else {
                2 * periods[l - 2] + self.rng.range(-3, 3)
            };
            if p < 1 {
                return Err(GenerateError::DegeneratePeriod(l + 1));
            }
            periods.push(p);
        }
        let periods: Vec<usize> = periods.into_iter().map(|p| p as usize).collect();
        let n = periods[h - 1] * kh;
        let ks: Vec<usize> = periods.iter().map(|&p| n / p).collect();
        if let Some(l) = ks.iter().position(|&k| k == 0) {
            return Err(GenerateError::NoRoom(l + 1));
        }

        let total = (ONSET_DENSITY * n as f64).round() as usize;
        let mut share = vec![total / h; h];
        let leftover = total % h;
        let lucky = self.rng.sample(&(0..h).collect::<Vec<_>>(), leftover);
        for l in lucky {
            share[l] += 1;
        }
        let caps: Vec<usize> = periods.iter().zip(&ks).map(|(p, k)| p * k).collect();
        loop {
            let excess: usize = share.iter().zip(&caps).map(|(s, c)| s.saturating_sub(*c)).sum();
            if excess == 0 {
                break;
            }
            for (s, c) in share.iter_mut().zip(&caps) {
                *s = (*s).min(*c);
            }
            let open: Vec<usize> = (0..h).filter(|&l| share[l] < caps[l]).collect();
            if open.is_empty() {
                return Err(GenerateError::Infeasible(total));
            }
            for (i, &l) in open.iter().enumerate() {
                share[l] += excess / open.len() + usize::from(i < excess % open.len());
            }
        }
        let voices = (0..h)
            .map(|l| {
                let m = (share[l] as f64 / ks[l] as f64).round() as usize;
                Voice {
                    p: periods[l],
                    k: ks[l],
                    m: m.clamp(1, periods[l]),
                }
            })
            .collect();
        Ok(RhythmInstance {
            voices,
            n,
            removed: Vec::new(),
            seed: self.seed,
        })
    }

    /// Removes `floor(fraction * |pool|)` (position, onset) pairs, where the
    /// pool holds every onset at every position not yet removed. The rest
    /// value is never removed, so no domain can empty.
    pub fn removals(&mut self, inst: &RhythmInstance, fraction: f64) -> Result<RhythmInstance, GenerateError> {
        if !(0.0..1.0).contains(&fraction) {
            return Err(GenerateError::BadFraction);
        }
        let mut pool: Vec<(usize, Value)> = (1..=inst.n)
            .flat_map(|pos| (1..=inst.max_value()).map(move |v| (pos, v)))
            .filter(|&(pos, v)| !inst.is_removed(pos, v))
            .collect();
        let count = (fraction * pool.len() as f64).floor() as usize;
        self.rng.shuffle(&mut pool);
        let mut out = inst.clone();
        let mut left: Vec<usize> = out.sequence_domains().iter().map(Vec::len).collect();
        let mut taken = 0;
        for (pos, v) in pool {
            if taken == count {
                break;
            }
            if left[pos - 1] <= 1 {
                continue;
            }
            left[pos - 1] -= 1;
            out.removed.push((pos, v));
            taken += 1;
        }
        out.removed.sort_unstable();
        Ok(out)
    }
}

pub fn generate_instance(h: usize, p1: usize, kh: usize, seed: u64) -> Result<RhythmInstance, GenerateError> {
    Generator::new(seed).instance(h, p1, kh)
}

/// Generates an instance and removes a fraction of its onset values from
/// the same random stream.
pub fn generate_extended(
    h: usize,
    p1: usize,
    kh: usize,
    seed: u64,
    fraction: f64,
) -> Result<RhythmInstance, GenerateError> {
    let mut g = Generator::new(seed);
    let inst = g.instance(h, p1, kh)?;
    g.removals(&inst, fraction)
}

/// Removals drawn from a fresh stream seeded with `seed`.
pub fn extend_instance(inst: &RhythmInstance, fraction: f64, seed: u64) -> Result<RhythmInstance, GenerateError> {
    Generator::new(seed).removals(inst, fraction)
}
