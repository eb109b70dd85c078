use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::domain::{Value, DUMMY};
use crate::params::Spacing1Params;

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("instance has no voices")]
    NoVoices,
    #[error("voice {voice}: {reason}")]
    BadVoice { voice: usize, reason: String },
    #[error("removed pair ({pos}, {val}) is out of range")]
    BadRemoval { pos: usize, val: Value },
    #[error("invalid instance JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// One voice: `m` onsets on a period of `p` beats repeated `k` times.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Voice {
    pub p: usize,
    pub k: usize,
    pub m: usize,
}

/// Asynchronous rhythm instance. Voice `l` (0-based) owns the onset ids
/// following those of voice `l - 1`, starting at 1; id 0 is the rest.
/// Positions in `removed` are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhythmInstance {
    pub voices: Vec<Voice>,
    pub n: usize,
    #[serde(default)]
    pub removed: Vec<(usize, Value)>,
    #[serde(default)]
    pub seed: u64,
}

impl RhythmInstance {
    pub fn new(voices: Vec<Voice>, n: usize) -> Result<Self, InstanceError> {
        let inst = RhythmInstance {
            voices,
            n,
            removed: Vec::new(),
            seed: 0,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<(), InstanceError> {
        if self.voices.is_empty() {
            return Err(InstanceError::NoVoices);
        }
        for (l, v) in self.voices.iter().enumerate() {
            let bad = |reason: &str| InstanceError::BadVoice {
                voice: l + 1,
                reason: reason.to_string(),
            };
            if v.p == 0 || v.k == 0 {
                return Err(bad("period and repetitions must be positive"));
            }
            if v.m > v.p {
                return Err(bad("more onsets than beats in the period"));
            }
            if v.p * v.k > self.n {
                return Err(bad("p*k exceeds the sequence length"));
            }
        }
        let max = self.max_value();
        for &(pos, val) in &self.removed {
            if pos == 0 || pos > self.n || val > max {
                return Err(InstanceError::BadRemoval { pos, val });
            }
        }
        Ok(())
    }

    pub fn h(&self) -> usize {
        self.voices.len()
    }

    fn first_id(&self, l: usize) -> Value {
        1 + self.voices[..l].iter().map(|v| v.m as Value).sum::<Value>()
    }

    /// Onset ids of voice `l`.
    pub fn onsets(&self, l: usize) -> Vec<Value> {
        let first = self.first_id(l);
        (first..first + self.voices[l].m as Value).collect()
    }

    pub fn all_onsets(&self) -> Vec<Value> {
        (1..=self.max_value()).collect()
    }

    pub fn max_value(&self) -> Value {
        self.voices.iter().map(|v| v.m as Value).sum()
    }

    /// Voice owning onset `d`, if any.
    pub fn voice_of(&self, d: Value) -> Option<usize> {
        if d == DUMMY {
            return None;
        }
        let mut first = 1;
        for (l, v) in self.voices.iter().enumerate() {
            if d < first + v.m as Value {
                return Some(l);
            }
            first += v.m as Value;
        }
        None
    }

    pub fn voice_params(&self, l: usize) -> Spacing1Params {
        let v = self.voices[l];
        Spacing1Params {
            s: self.onsets(l),
            p: v.p,
            k: v.k,
            n: self.n,
        }
    }

    pub fn all_voice_params(&self) -> Vec<Spacing1Params> {
        (0..self.h()).map(|l| self.voice_params(l)).collect()
    }

    pub fn is_removed(&self, pos: usize, val: Value) -> bool {
        self.removed.contains(&(pos, val))
    }

    /// Sequence domains `X_1..X_n` over onset ids and the rest value.
    pub fn sequence_domains(&self) -> Vec<Vec<Value>> {
        let mut doms: Vec<Vec<Value>> = (0..self.n).map(|_| (0..=self.max_value()).collect()).collect();
        for &(pos, val) in &self.removed {
            doms[pos - 1].retain(|&v| v != val);
        }
        doms
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, InstanceError> {
        let inst: RhythmInstance = serde_json::from_str(text)?;
        inst.validate()?;
        Ok(inst)
    }

    /// Copy with `X_pos` restricted to `val`.
    pub fn with_fixed(&self, pos: usize, val: Value) -> Self {
        let mut out = self.clone();
        for v in 0..=self.max_value() {
            if v != val && !out.is_removed(pos, v) {
                out.removed.push((pos, v));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_voice() -> RhythmInstance {
        RhythmInstance::new(vec![Voice { p: 5, k: 4, m: 2 }, Voice { p: 7, k: 3, m: 2 }], 21).unwrap()
    }

    #[test]
    fn onset_ids() {
        let inst = two_voice();
        assert_eq!(inst.onsets(0), vec![1, 2]);
        assert_eq!(inst.onsets(1), vec![3, 4]);
        assert_eq!(inst.voice_of(3), Some(1));
        assert_eq!(inst.voice_of(0), None);
        assert_eq!(inst.voice_of(5), None);
    }

    #[test]
    fn json_round_trip() {
        let inst = two_voice().with_fixed(1, 1);
        let back = RhythmInstance::from_json(&inst.to_json()).unwrap();
        assert_eq!(back, inst);
        assert_eq!(back.sequence_domains()[0], vec![1]);
    }

    #[test]
    fn validation() {
        assert!(RhythmInstance::new(vec![], 3).is_err());
        assert!(RhythmInstance::new(vec![Voice { p: 2, k: 1, m: 3 }], 3).is_err());
        assert!(RhythmInstance::new(vec![Voice { p: 2, k: 2, m: 1 }], 3).is_err());
        let mut inst = two_voice();
        inst.removed.push((22, 1));
        assert!(inst.validate().is_err());
    }
}
