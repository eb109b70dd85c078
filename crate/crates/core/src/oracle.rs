//! Reference semantics: direct checkers for every constraint and naive
//! support enumeration. Deliberately independent of the propagators.

use thiserror::Error;

use crate::domain::{Value, DUMMY};
use crate::params::{check_disjoint, SbParams, Spacing1Params, SpacingParams};

pub const DEFAULT_CAP: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("search space of {product} assignments exceeds the cap of {cap}")]
    Oversize { product: u128, cap: u128 },
}

/// Number of occurrences of `d` in `seq`.
pub fn occ(d: Value, seq: &[Value]) -> usize {
    seq.iter().filter(|&&x| x == d).count()
}

fn positions(d: Value, seq: &[Value]) -> Vec<usize> {
    seq.iter()
        .enumerate()
        .filter(|&(_, &x)| x == d)
        .map(|(i, _)| i + 1)
        .collect()
}

pub fn check_spacing(seq: &[Value], p: &SpacingParams) -> bool {
    if seq.len() != p.n {
        return false;
    }
    p.s.iter().all(|&d| {
        let pos = positions(d, seq);
        (1..p.k).all(|i| {
            if pos.len() < i {
                return true;
            }
            match pos.get(i) {
                None => false,
                Some(&next) => {
                    let gap = next - pos[i - 1];
                    p.a[i - 1] <= gap && gap <= p.b[i - 1]
                }
            }
        })
    })
}

pub fn check_spacing_f(seq: &[Value], p: &SpacingParams) -> bool {
    check_spacing(seq, p) && p.s.iter().all(|&d| occ(d, seq) > 0)
}

pub fn check_spacing1(seq: &[Value], p: &Spacing1Params) -> bool {
    if seq.len() != p.n {
        return false;
    }
    p.s.iter().all(|&d| {
        let pos = positions(d, seq);
        pos.len() == p.k && pos[0] <= p.p && pos.iter().enumerate().all(|(j, &x)| x == pos[0] + j * p.p)
    })
}

pub fn check_spacing_sb(seq: &[Value], p: &SbParams) -> bool {
    if seq.len() != p.n {
        return false;
    }
    let is_d = |x: usize| seq[x - 1] == p.d;
    let head = (1..=p.p).filter(|&x| is_d(x)).count();
    head == p.m
        && (1..=p.k * p.p).all(|x| is_d(x) == is_d((x - 1) % p.p + 1))
        && (p.k * p.p + 1..=p.n).all(|x| !is_d(x))
}

/// Conjunction of Spacing1 over voices with pairwise disjoint value sets.
pub fn check_spacing_h(seq: &[Value], voices: &[Spacing1Params]) -> bool {
    check_disjoint(voices).is_ok() && voices.iter().all(|v| check_spacing1(seq, v))
}

fn product(domains: &[Vec<Value>]) -> u128 {
    domains
        .iter()
        .fold(1u128, |acc, d| acc.saturating_mul(d.len() as u128))
}

fn sorted(domains: &[Vec<Value>]) -> Vec<Vec<Value>> {
    domains
        .iter()
        .map(|d| {
            let mut d = d.clone();
            d.sort_unstable();
            d.dedup();
            d
        })
        .collect()
}

/// Every checker-true assignment in lexicographic order.
pub fn enumerate_supports<F>(domains: &[Vec<Value>], checker: F, cap: u128) -> Result<Vec<Vec<Value>>, OracleError>
where
    F: Fn(&[Value]) -> bool,
{
    let mut found = Vec::new();
    visit_assignments(domains, cap, |a| {
        if checker(a) {
            found.push(a.to_vec());
        }
    })?;
    Ok(found)
}

fn visit_assignments<F: FnMut(&[Value])>(domains: &[Vec<Value>], cap: u128, mut f: F) -> Result<(), OracleError> {
    let product = product(domains);
    if product > cap {
        return Err(OracleError::Oversize { product, cap });
    }
    let doms = sorted(domains);
    if doms.iter().any(Vec::is_empty) {
        return Ok(());
    }
    let n = doms.len();
    let mut idx = vec![0usize; n];
    let mut cur: Vec<Value> = doms.iter().map(|d| d[0]).collect();
    loop {
        f(&cur);
        // Odometer increment from the last position.
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < doms[i].len() {
                cur[i] = doms[i][idx[i]];
                break;
            }
            idx[i] = 0;
            cur[i] = doms[i][0];
        }
    }
}

/// Number of supports, computed by recursive generation. Serves as a second
/// path against [`enumerate_supports`].
pub fn count_supports<F>(domains: &[Vec<Value>], checker: F, cap: u128) -> Result<u64, OracleError>
where
    F: Fn(&[Value]) -> bool,
{
    let product = product(domains);
    if product > cap {
        return Err(OracleError::Oversize { product, cap });
    }
    fn rec<F: Fn(&[Value]) -> bool>(domains: &[Vec<Value>], prefix: &mut Vec<Value>, checker: &F) -> u64 {
        if prefix.len() == domains.len() {
            return u64::from(checker(prefix));
        }
        let mut total = 0;
        let mut vals = domains[prefix.len()].clone();
        vals.sort_unstable();
        vals.dedup();
        for v in vals {
            prefix.push(v);
            total += rec(domains, prefix, checker);
            prefix.pop();
        }
        total
    }
    Ok(rec(domains, &mut Vec::with_capacity(domains.len()), &checker))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DcOutcome {
    Pruned(Vec<Vec<Value>>),
    Failed,
}

/// Domain-consistent domains: a value survives iff some support uses it.
pub fn dc_oracle<F>(domains: &[Vec<Value>], checker: F, cap: u128) -> Result<DcOutcome, OracleError>
where
    F: Fn(&[Value]) -> bool,
{
    let doms = sorted(domains);
    let mut keep: Vec<Vec<bool>> = doms.iter().map(|d| vec![false; d.len()]).collect();
    let mut any = false;
    visit_assignments(&doms, cap, |a| {
        if checker(a) {
            any = true;
            for (i, v) in a.iter().enumerate() {
                let j = doms[i].binary_search(v).expect("value from domain");
                keep[i][j] = true;
            }
        }
    })?;
    if !any {
        return Ok(DcOutcome::Failed);
    }
    Ok(DcOutcome::Pruned(
        doms.iter()
            .zip(&keep)
            .map(|(d, k)| d.iter().zip(k).filter(|(_, &k)| k).map(|(&v, _)| v).collect())
            .collect(),
    ))
}

/// Calls `f` with the onset owner of every position for each way of placing
/// all voices' onsets consistently with `domains`.
fn for_each_placement(domains: &[Vec<Value>], voices: &[Spacing1Params], f: &mut dyn FnMut(&[Option<Value>])) {
    fn place(
        voice: usize,
        onset: usize,
        voices: &[Spacing1Params],
        domains: &[Vec<Value>],
        owner: &mut Vec<Option<Value>>,
        f: &mut dyn FnMut(&[Option<Value>]),
    ) {
        if voice == voices.len() {
            f(owner);
            return;
        }
        let vc = &voices[voice];
        if onset == vc.s.len() {
            place(voice + 1, 0, voices, domains, owner, f);
            return;
        }
        let d = vc.s[onset];
        for first in 1..=vc.p {
            let xs: Vec<usize> = (0..vc.k).map(|j| first + j * vc.p).collect();
            if xs.iter().all(|&x| owner[x - 1].is_none() && domains[x - 1].contains(&d)) {
                for &x in &xs {
                    owner[x - 1] = Some(d);
                }
                place(voice, onset + 1, voices, domains, owner, f);
                for &x in &xs {
                    owner[x - 1] = None;
                }
            }
        }
    }
    let mut owner = vec![None; domains.len()];
    place(0, 0, voices, domains, &mut owner, f);
}

/// Domain-consistent domains for a conjunction of Spacing1 constraints with
/// disjoint value sets, found by enumerating per-voice offset patterns
/// rather than whole assignments. Scales to longer sequences than
/// [`dc_oracle`] as long as the periods stay short.
pub fn spacing1_conjunction_dc(domains: &[Vec<Value>], voices: &[Spacing1Params]) -> DcOutcome {
    let in_some_s = |v: Value| voices.iter().any(|vc| vc.s.contains(&v));
    let mut keep: Vec<Vec<bool>> = domains.iter().map(|d| vec![false; d.len()]).collect();
    let mut any = false;

    for_each_placement(domains, voices, &mut |own| {
        // Free positions need a value outside every voice's set.
        let free_ok = own
            .iter()
            .zip(domains)
            .all(|(o, d)| o.is_some() || d.iter().any(|&v| !in_some_s(v)));
        if !free_ok {
            return;
        }
        any = true;
        for (x, o) in own.iter().enumerate() {
            for (j, &v) in domains[x].iter().enumerate() {
                let ok = match o {
                    Some(d) => v == *d,
                    None => !in_some_s(v),
                };
                if ok {
                    keep[x][j] = true;
                }
            }
        }
    });

    if !any {
        return DcOutcome::Failed;
    }
    DcOutcome::Pruned(
        domains
            .iter()
            .zip(&keep)
            .map(|(d, k)| {
                let mut v: Vec<Value> = d.iter().zip(k).filter(|(_, &k)| k).map(|(&v, _)| v).collect();
                v.sort_unstable();
                v
            })
            .collect(),
    )
}

/// Number of complete assignments satisfying a conjunction of Spacing1
/// constraints: each placement contributes the product, over its free
/// positions, of the values lying outside every voice's set.
pub fn count_spacing1_conjunction(domains: &[Vec<Value>], voices: &[Spacing1Params]) -> u128 {
    let free: Vec<u128> = domains
        .iter()
        .map(|d| {
            let mut outside: Vec<Value> = d.iter().copied().filter(|&v| voices.iter().all(|vc| !vc.s.contains(&v))).collect();
            outside.sort_unstable();
            outside.dedup();
            outside.len() as u128
        })
        .collect();
    let mut total = 0u128;
    for_each_placement(domains, voices, &mut |own| {
        total += own
            .iter()
            .zip(&free)
            .map(|(o, &f)| if o.is_some() { 1 } else { f })
            .product::<u128>();
    });
    total
}

/// Collapses values outside `s` to the dummy, as a sorted set.
pub fn channel_values(domain: &[Value], s: &[Value]) -> Vec<Value> {
    let mut out: Vec<Value> = domain.iter().copied().filter(|v| s.contains(v)).collect();
    if domain.iter().any(|v| !s.contains(v)) {
        out.push(DUMMY);
    }
    out.sort_unstable();
    out.dedup();
    out
}
