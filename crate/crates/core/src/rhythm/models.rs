//! The four constraint models of the rhythm problem.
//!
//! * OM: one variable per onset holding its beat within the period.
//! * SM: one sequence variable per beat, one Spacing1 per voice.
//! * SB: as SM, but the onsets of each voice are merged into one value.
//! * SR: SM plus inter-voice pruning for every ordered pair of voices.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::domain::{Domain, Value, DUMMY};
use crate::engine::{Engine, Propagator};
use crate::params::SbParams;
use crate::propagators::{AllDifferent, Intervoice, NeqOffset, Spacing1, SpacingSb};
use crate::rhythm::instance::RhythmInstance;
use crate::search::{search, Heuristic, Limits, SearchOutcome};
use crate::store::Store;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Om,
    Sm,
    Sb,
    Sr,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [ModelKind::Om, ModelKind::Sm, ModelKind::Sb, ModelKind::Sr];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Om => "om",
            ModelKind::Sm => "sm",
            ModelKind::Sb => "sb",
            ModelKind::Sr => "sr",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown model '{0}' (expected om, sm, sb or sr)")]
pub struct UnknownModel(String);

impl FromStr for ModelKind {
    type Err = UnknownModel;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "om" => Ok(ModelKind::Om),
            "sm" => Ok(ModelKind::Sm),
            "sb" => Ok(ModelKind::Sb),
            "sr" => Ok(ModelKind::Sr),
            _ => Err(UnknownModel(s.to_string())),
        }
    }
}

/// A built model. Initial domains may be empty when removals leave a
/// variable without values; such a model is unsatisfiable at the root.
pub struct Model {
    pub kind: ModelKind,
    pub domains: Vec<Vec<Value>>,
    pub propagators: Vec<Box<dyn Propagator>>,
    /// For OM: `(voice, onset id)` of each variable.
    pub om_layout: Vec<(usize, Value)>,
}

impl Model {
    pub fn build(inst: &RhythmInstance, kind: ModelKind) -> Model {
        match kind {
            ModelKind::Om => build_om(inst),
            ModelKind::Sm => build_sm(inst),
            ModelKind::Sb => build_sb(inst),
            ModelKind::Sr => build_sr(inst),
        }
    }

    pub fn n_vars(&self) -> usize {
        self.domains.len()
    }

    /// The store and engine, or `None` if some initial domain is empty.
    pub fn into_parts(self) -> Option<(Store, Engine)> {
        let doms: Option<Vec<Domain>> = self
            .domains
            .iter()
            .map(|d| Domain::new(d.iter().copied()).ok())
            .collect();
        let store = Store::new(doms?);
        let engine = Engine::with_propagators(self.domains.len(), self.propagators);
        Some((store, engine))
    }

    /// Domains after root propagation, or `None` on failure.
    pub fn root_fixpoint(self) -> Option<Vec<Vec<Value>>> {
        let (mut store, mut engine) = self.into_parts()?;
        engine.propagate_all(&mut store).ok()?;
        Some(store.domains().iter().map(Domain::values).collect())
    }

    pub fn solve(self, heuristic: Heuristic, limits: &Limits) -> SearchOutcome {
        match self.into_parts() {
            Some((mut store, mut engine)) => search(&mut store, &mut engine, heuristic, limits),
            None => SearchOutcome {
                nodes: 1,
                exhausted: true,
                ..SearchOutcome::default()
            },
        }
    }
}

pub fn build_om(inst: &RhythmInstance) -> Model {
    let mut domains = Vec::new();
    let mut layout = Vec::new();
    let mut var_of: Vec<Vec<usize>> = Vec::new();
    for (l, v) in inst.voices.iter().enumerate() {
        let mut ids = Vec::new();
        for d in inst.onsets(l) {
            let mut dom: Vec<Value> = (1..=v.p as Value).collect();
            for &(pos, val) in &inst.removed {
                if val == d && pos <= v.k * v.p {
                    let slot = ((pos - 1) % v.p + 1) as Value;
                    dom.retain(|&s| s != slot);
                }
            }
            ids.push(domains.len());
            domains.push(dom);
            layout.push((l, d));
        }
        var_of.push(ids);
    }
    let mut props: Vec<Box<dyn Propagator>> = Vec::new();
    for ids in &var_of {
        if ids.len() > 1 {
            props.push(Box::new(AllDifferent::new(ids.clone())));
        }
    }
    for l1 in 0..inst.h() {
        for l2 in l1 + 1..inst.h() {
            let (v1, v2) = (inst.voices[l1], inst.voices[l2]);
            // Distinct offset differences suffice: equal shifts give equal constraints.
            let mut shifts: Vec<(i64, i64)> = Vec::new();
            let mut seen = HashSet::new();
            for j1 in 0..v1.k {
                for j2 in 0..v2.k {
                    let (c1, c2) = ((j1 * v1.p) as i64, (j2 * v2.p) as i64);
                    if seen.insert(c1 - c2) {
                        shifts.push((c1, c2));
                    }
                }
            }
            for &a in &var_of[l1] {
                for &b in &var_of[l2] {
                    for &(c1, c2) in &shifts {
                        props.push(Box::new(NeqOffset::new(a, c1, b, c2)));
                    }
                }
            }
        }
    }
    Model {
        kind: ModelKind::Om,
        domains,
        propagators: props,
        om_layout: layout,
    }
}

fn spacing1_props(inst: &RhythmInstance) -> Vec<Box<dyn Propagator>> {
    let vars: Vec<usize> = (0..inst.n).collect();
    inst.all_voice_params()
        .into_iter()
        .map(|p| Box::new(Spacing1::new(p, vars.clone())) as Box<dyn Propagator>)
        .collect()
}

pub fn build_sm(inst: &RhythmInstance) -> Model {
    Model {
        kind: ModelKind::Sm,
        domains: inst.sequence_domains(),
        propagators: spacing1_props(inst),
        om_layout: Vec::new(),
    }
}

pub fn build_sr(inst: &RhythmInstance) -> Model {
    let mut props = spacing1_props(inst);
    let vars: Vec<usize> = (0..inst.n).collect();
    for l1 in 0..inst.h() {
        for l2 in 0..inst.h() {
            if l1 != l2 {
                props.push(Box::new(Intervoice::new(
                    inst.voice_params(l1),
                    inst.voice_params(l2),
                    vars.clone(),
                )));
            }
        }
    }
    Model {
        kind: ModelKind::Sr,
        domains: inst.sequence_domains(),
        propagators: props,
        om_layout: Vec::new(),
    }
}

/// SB values: voice `l` (0-based) is represented by `l + 1`. A voice value
/// is removed from a position only when every onset of the voice is.
pub fn sb_domains(inst: &RhythmInstance) -> Vec<Vec<Value>> {
    (1..=inst.n)
        .map(|pos| {
            let mut dom = Vec::new();
            if !inst.is_removed(pos, DUMMY) {
                dom.push(DUMMY);
            }
            for l in 0..inst.h() {
                let onsets = inst.onsets(l);
                if onsets.is_empty() || onsets.iter().any(|&d| !inst.is_removed(pos, d)) {
                    dom.push(l as Value + 1);
                }
            }
            dom
        })
        .collect()
}

pub fn build_sb(inst: &RhythmInstance) -> Model {
    let vars: Vec<usize> = (0..inst.n).collect();
    let props = inst
        .voices
        .iter()
        .enumerate()
        .map(|(l, v)| {
            let params = SbParams {
                d: l as Value + 1,
                m: v.m,
                p: v.p,
                k: v.k,
                n: inst.n,
            };
            Box::new(SpacingSb::new(params, vars.clone())) as Box<dyn Propagator>
        })
        .collect();
    Model {
        kind: ModelKind::Sb,
        domains: sb_domains(inst),
        propagators: props,
        om_layout: Vec::new(),
    }
}

/// OM domains implied by SM domains: beat `i` is possible for onset `d` of
/// voice `l` iff `d` is possible at position `i`, for `i <= p_l`.
pub fn map_sm_to_om(sm: &[Vec<Value>], inst: &RhythmInstance) -> Vec<Vec<Value>> {
    let mut out = Vec::new();
    for (l, v) in inst.voices.iter().enumerate() {
        for d in inst.onsets(l) {
            out.push((1..=v.p).filter(|&i| sm[i - 1].contains(&d)).map(|i| i as Value).collect());
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("expected {expected} values, got {got}")]
    Length { expected: usize, got: usize },
    #[error("value {0} is not used by this model")]
    UnknownValue(Value),
}

/// Beat pattern of one voice: `(beat, onset)` pairs within the first period.
/// For SB the onset is the voice value itself.
pub type Pattern = Vec<(usize, Value)>;

pub fn decode(assignment: &[Value], inst: &RhythmInstance, kind: ModelKind) -> Result<Vec<Pattern>, DecodeError> {
    match kind {
        ModelKind::Om => {
            let expected: usize = inst.voices.iter().map(|v| v.m).sum();
            if assignment.len() != expected {
                return Err(DecodeError::Length {
                    expected,
                    got: assignment.len(),
                });
            }
            let mut out = vec![Vec::new(); inst.h()];
            let mut idx = 0;
            for (l, pattern) in out.iter_mut().enumerate() {
                for d in inst.onsets(l) {
                    pattern.push((assignment[idx] as usize, d));
                    idx += 1;
                }
                pattern.sort_unstable();
            }
            Ok(out)
        }
        _ => {
            if assignment.len() != inst.n {
                return Err(DecodeError::Length {
                    expected: inst.n,
                    got: assignment.len(),
                });
            }
            let max = if kind == ModelKind::Sb {
                inst.h() as Value
            } else {
                inst.max_value()
            };
            if let Some(&bad) = assignment.iter().find(|&&v| v > max) {
                return Err(DecodeError::UnknownValue(bad));
            }
            Ok((0..inst.h())
                .map(|l| {
                    let p = inst.voices[l].p;
                    (1..=p)
                        .filter_map(|i| {
                            let v = assignment[i - 1];
                            let mine = if kind == ModelKind::Sb {
                                v == l as Value + 1
                            } else {
                                inst.voice_of(v) == Some(l)
                            };
                            mine.then_some((i, v))
                        })
                        .collect()
                })
                .collect())
        }
    }
}

/// Expands per-voice patterns into a full sequence (SM values).
pub fn patterns_to_sequence(patterns: &[Pattern], inst: &RhythmInstance) -> Vec<Value> {
    let mut seq = vec![DUMMY; inst.n];
    for (l, pattern) in patterns.iter().enumerate() {
        let v = inst.voices[l];
        for &(beat, d) in pattern {
            for j in 0..v.k {
                seq[beat - 1 + j * v.p] = d;
            }
        }
    }
    seq
}
