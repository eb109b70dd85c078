//! Parameter tuples of the Spacing constraint family.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::domain::{Value, DUMMY};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("value set contains the reserved dummy value 0")]
    DummyInSet,
    #[error("value {0} listed twice")]
    Duplicate(Value),
    #[error("period must be positive")]
    ZeroPeriod,
    #[error("repetition count must be positive")]
    ZeroRepetitions,
    #[error("p*k = {pk} exceeds sequence length {n}")]
    TooLong { pk: usize, n: usize },
    #[error("expected {expected} distance bounds, got {got}")]
    BoundsLength { expected: usize, got: usize },
    #[error("distance bounds must satisfy 1 <= a_i <= b_i (index {0})")]
    BadBounds(usize),
    #[error("m = {m} exceeds period {p}")]
    TooManyOccurrences { m: usize, p: usize },
    #[error("value sets of different voices overlap on {0}")]
    Overlap(Value),
}

fn check_set(s: &[Value]) -> Result<(), ParamError> {
    let mut seen = HashSet::new();
    for &d in s {
        if d == DUMMY {
            return Err(ParamError::DummyInSet);
        }
        if !seen.insert(d) {
            return Err(ParamError::Duplicate(d));
        }
    }
    Ok(())
}

/// General Spacing: each value of `s` that occurs at all must see its
/// (i+1)-th occurrence between `a[i-1]` and `b[i-1]` positions after its
/// i-th, for i < k.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpacingParams {
    pub s: Vec<Value>,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub k: usize,
    pub n: usize,
}

impl SpacingParams {
    pub fn new(s: Vec<Value>, a: Vec<usize>, b: Vec<usize>, k: usize, n: usize) -> Result<Self, ParamError> {
        let p = SpacingParams { s, a, b, k, n };
        p.validate()?;
        Ok(p)
    }

    /// Constant distance bounds.
    pub fn uniform(s: Vec<Value>, a: usize, b: usize, k: usize, n: usize) -> Result<Self, ParamError> {
        let len = k.saturating_sub(1);
        Self::new(s, vec![a; len], vec![b; len], k, n)
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        check_set(&self.s)?;
        if self.k == 0 {
            return Err(ParamError::ZeroRepetitions);
        }
        for (len, expected) in [(self.a.len(), self.k - 1), (self.b.len(), self.k - 1)] {
            if len != expected {
                return Err(ParamError::BoundsLength { expected, got: len });
            }
        }
        for (i, (&a, &b)) in self.a.iter().zip(&self.b).enumerate() {
            if a == 0 || a > b {
                return Err(ParamError::BadBounds(i + 1));
            }
        }
        Ok(())
    }
}

/// Spacing1: every value of `s` occurs exactly `k` times, once per period
/// of length `p`, at the same offset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spacing1Params {
    pub s: Vec<Value>,
    pub p: usize,
    pub k: usize,
    pub n: usize,
}

impl Spacing1Params {
    pub fn new(s: Vec<Value>, p: usize, k: usize, n: usize) -> Result<Self, ParamError> {
        let x = Spacing1Params { s, p, k, n };
        x.validate()?;
        Ok(x)
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        check_set(&self.s)?;
        if self.p == 0 {
            return Err(ParamError::ZeroPeriod);
        }
        if self.k == 0 {
            return Err(ParamError::ZeroRepetitions);
        }
        if self.p * self.k > self.n {
            return Err(ParamError::TooLong {
                pk: self.p * self.k,
                n: self.n,
            });
        }
        Ok(())
    }
}

/// Spacing_SB: `d` occurs at exactly `m` places of the first period and the
/// pattern repeats `k` times.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SbParams {
    pub d: Value,
    pub m: usize,
    pub p: usize,
    pub k: usize,
    pub n: usize,
}

impl SbParams {
    pub fn new(d: Value, m: usize, p: usize, k: usize, n: usize) -> Result<Self, ParamError> {
        let x = SbParams { d, m, p, k, n };
        x.validate()?;
        Ok(x)
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        if self.d == DUMMY {
            return Err(ParamError::DummyInSet);
        }
        if self.p == 0 {
            return Err(ParamError::ZeroPeriod);
        }
        if self.k == 0 {
            return Err(ParamError::ZeroRepetitions);
        }
        if self.m > self.p {
            return Err(ParamError::TooManyOccurrences { m: self.m, p: self.p });
        }
        if self.p * self.k > self.n {
            return Err(ParamError::TooLong {
                pk: self.p * self.k,
                n: self.n,
            });
        }
        Ok(())
    }
}

/// Checks that the value sets of several voices are pairwise disjoint.
pub fn check_disjoint(voices: &[Spacing1Params]) -> Result<(), ParamError> {
    let mut seen = HashSet::new();
    for v in voices {
        for &d in &v.s {
            if !seen.insert(d) {
                return Err(ParamError::Overlap(d));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(Spacing1Params::new(vec![1, 2], 5, 3, 15).is_ok());
        assert_eq!(Spacing1Params::new(vec![0], 5, 3, 15), Err(ParamError::DummyInSet));
        assert_eq!(
            Spacing1Params::new(vec![1], 5, 4, 15),
            Err(ParamError::TooLong { pk: 20, n: 15 })
        );
        assert_eq!(
            SpacingParams::new(vec![1], vec![3], vec![2], 2, 9),
            Err(ParamError::BadBounds(1))
        );
        assert_eq!(
            SbParams::new(1, 4, 3, 1, 3),
            Err(ParamError::TooManyOccurrences { m: 4, p: 3 })
        );
        let v = [
            Spacing1Params::new(vec![1, 2], 2, 1, 4).unwrap(),
            Spacing1Params::new(vec![2], 2, 1, 4).unwrap(),
        ];
        assert_eq!(check_disjoint(&v), Err(ParamError::Overlap(2)));
    }
}
