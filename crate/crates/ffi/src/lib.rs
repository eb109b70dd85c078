//! C ABI over the spacing engine.
//!
//! Objects cross the boundary as opaque handles that the caller releases
//! with the matching `*_free` function. Every fallible call returns a
//! [`SpacingStatus`]; on failure [`spacing_last_error`] describes the cause
//! until the next call on the same thread. Strings returned to the caller
//! are released with [`spacing_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Duration;

use spacing::checks::{self, CheckConfig, CheckReport, Suite};
use spacing::rhythm::{extend_instance, generate_extended, Model, ModelKind, RhythmInstance, Voice};
use spacing::sat::{extract_model, parse_dimacs, reduce, ReducedInstance, ReductionKind};
use spacing::{Heuristic, Limits, SearchOutcome, Value, Verdict};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpacingStatus {
    Ok = 0,
    Unsat = 1,
    Timeout = 2,
    NullPointer = 10,
    InvalidArgument = 11,
    Parse = 12,
    Generate = 13,
    Reduction = 14,
    BufferTooSmall = 15,
    OutOfRange = 16,
    Panic = 99,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpacingModel {
    Om = 0,
    Sm = 1,
    Sb = 2,
    Sr = 3,
}

impl From<SpacingModel> for ModelKind {
    fn from(m: SpacingModel) -> Self {
        match m {
            SpacingModel::Om => ModelKind::Om,
            SpacingModel::Sm => ModelKind::Sm,
            SpacingModel::Sb => ModelKind::Sb,
            SpacingModel::Sr => ModelKind::Sr,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpacingHeuristic {
    /// Smallest domain first.
    FirstFail = 0,
    /// Lowest index first; the order used for benchmark comparisons.
    Static = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpacingVerdict {
    Sat = 0,
    Unsat = 1,
    Unknown = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpacingReduction {
    Spacing = 0,
    SpacingF = 1,
    SpacingFNoMax = 2,
    SpacingH = 3,
}

impl From<SpacingReduction> for ReductionKind {
    fn from(r: SpacingReduction) -> Self {
        match r {
            SpacingReduction::Spacing => ReductionKind::Spacing,
            SpacingReduction::SpacingF => ReductionKind::SpacingF,
            SpacingReduction::SpacingFNoMax => ReductionKind::SpacingFNoMax,
            SpacingReduction::SpacingH => ReductionKind::SpacingH,
        }
    }
}

/// Acceptance suites, numbered like the criteria they check.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpacingSuite {
    WorkedExample = 1,
    IntervoiceExample = 2,
    Strictness = 3,
    Spacing1 = 4,
    Sb = 5,
    Intervoice = 6,
    Bounded = 7,
    Reductions = 8,
    Monotonicity = 9,
    SbCount = 10,
}

impl From<SpacingSuite> for Suite {
    fn from(s: SpacingSuite) -> Self {
        Suite::ALL[s as usize - 1]
    }
}

/// A rhythm instance.
pub struct SpacingInstance(RhythmInstance);

/// Outcome of a search.
pub struct SpacingResult {
    outcome: SearchOutcome,
}

/// A formula compiled into a Spacing instance.
pub struct SpacingReduced(ReducedInstance);

pub struct SpacingCheckReport(CheckReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: SpacingStatus, msg: impl Into<String>) -> SpacingStatus {
    set_error(msg);
    status
}

/// Runs `f`, clearing the last error first and turning panics into
/// [`SpacingStatus::Panic`].
fn guard(f: impl FnOnce() -> SpacingStatus) -> SpacingStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(SpacingStatus::Panic, msg)
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, SpacingStatus> {
    if p.is_null() {
        return Err(fail(SpacingStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(SpacingStatus::InvalidArgument, "string is not UTF-8"))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> SpacingStatus {
    if out.is_null() {
        return fail(SpacingStatus::NullPointer, "null output pointer");
    }
    *out = Box::into_raw(Box::new(value));
    SpacingStatus::Ok
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> SpacingStatus {
    if out.is_null() {
        return fail(SpacingStatus::NullPointer, "null output pointer");
    }
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            SpacingStatus::Ok
        }
        Err(_) => fail(SpacingStatus::InvalidArgument, "string contains NUL"),
    }
}

unsafe fn copy_out<T: Copy>(src: &[T], buf: *mut T, len: usize, written: *mut usize) -> SpacingStatus {
    if !written.is_null() {
        *written = src.len();
    }
    if src.len() > len {
        return fail(SpacingStatus::BufferTooSmall, format!("need {} slots, got {len}", src.len()));
    }
    if !src.is_empty() {
        if buf.is_null() {
            return fail(SpacingStatus::NullPointer, "null buffer");
        }
        ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len());
    }
    SpacingStatus::Ok
}

fn timeout_of(ms: u64) -> Option<Duration> {
    (ms > 0).then(|| Duration::from_millis(ms))
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn spacing_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub extern "C" fn spacing_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be NULL or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn spacing_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---------------------------------------------------------------------------
// Instances

/// Builds an instance from `h` voices given as parallel arrays.
///
/// # Safety
/// `p`, `k` and `m` must point to `h` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spacing_instance_new(
    n: usize,
    h: usize,
    p: *const usize,
    k: *const usize,
    m: *const usize,
    out: *mut *mut SpacingInstance,
) -> SpacingStatus {
    guard(|| {
        if h > 0 && (p.is_null() || k.is_null() || m.is_null()) {
            return fail(SpacingStatus::NullPointer, "null voice array");
        }
        let voices = (0..h)
            .map(|l| Voice {
                p: *p.add(l),
                k: *k.add(l),
                m: *m.add(l),
            })
            .collect();
        match RhythmInstance::new(voices, n) {
            Ok(inst) => put(out, SpacingInstance(inst)),
            Err(e) => fail(SpacingStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Random instance for the grid cell `(h, p1, kh)`; `fraction` of the
/// (position, onset) pairs are removed.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spacing_instance_generate(
    h: usize,
    p1: usize,
    kh: usize,
    seed: u64,
    fraction: f64,
    out: *mut *mut SpacingInstance,
) -> SpacingStatus {
    guard(|| match generate_extended(h, p1, kh, seed, fraction) {
        Ok(inst) => put(out, SpacingInstance(inst)),
        Err(e) => fail(SpacingStatus::Generate, e.to_string()),
    })
}

/// Copy of `inst` with further removals drawn from `seed`.
///
/// # Safety
/// `inst` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spacing_instance_extend(
    inst: *const SpacingInstance,
    fraction: f64,
    seed: u64,
    out: *mut *mut SpacingInstance,
) -> SpacingStatus {
    guard(|| {
        let Some(inst) = inst.as_ref() else {
            return fail(SpacingStatus::NullPointer, "null instance");
        };
        match extend_instance(&inst.0, fraction, seed) {
            Ok(x) => put(out, SpacingInstance(x)),
            Err(e) => fail(SpacingStatus::Generate, e.to_string()),
        }
    })
}

/// Removes onset `value` from 1-based position `pos`.
///
/// # Safety
/// `inst` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn spacing_instance_remove(inst: *mut SpacingInstance, pos: usize, value: u32) -> SpacingStatus {
    guard(|| {
        let Some(inst) = inst.as_mut() else {
            return fail(SpacingStatus::NullPointer, "null instance");
        };
        let mut next = inst.0.clone();
        if !next.is_removed(pos, value) {
            next.removed.push((pos, value));
        }
        match next.validate() {
            Ok(()) => {
                inst.0 = next;
                SpacingStatus::Ok
            }
            Err(e) => fail(SpacingStatus::OutOfRange, e.to_string()),
        }
    })
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spacing_instance_from_json(json: *const c_char, out: *mut *mut SpacingInstance) -> SpacingStatus {
    guard(|| {
        let text = match str_arg(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match RhythmInstance::from_json(text) {
            Ok(inst) => put(out, SpacingInstance(inst)),
            Err(e) => fail(SpacingStatus::Parse, e.to_string()),
        }
    })
}

/// # Safety
/// `inst` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spacing_instance_to_json(inst: *const SpacingInstance, out: *mut *mut c_char) -> SpacingStatus {
    guard(|| match inst.as_ref() {
        Some(inst) => put_string(out, inst.0.to_json()),
        None => fail(SpacingStatus::NullPointer, "null instance"),
    })
}

/// Sequence length, or 0 for NULL.
///
/// # Safety
/// `inst` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn spacing_instance_length(inst: *const SpacingInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.0.n)
}

/// Number of voices, or 0 for NULL.
///
/// # Safety
/// `inst` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn spacing_instance_voice_count(inst: *const SpacingInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.0.h())
}

/// Period, repetitions and onset count of voice `l` (0-based).
///
/// # Safety
/// `inst` must be a live handle; the output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn spacing_instance_voice(
    inst: *const SpacingInstance,
    l: usize,
    p: *mut usize,
    k: *mut usize,
    m: *mut usize,
) -> SpacingStatus {
    guard(|| {
        let Some(inst) = inst.as_ref() else {
            return fail(SpacingStatus::NullPointer, "null instance");
        };
        if p.is_null() || k.is_null() || m.is_null() {
            return fail(SpacingStatus::NullPointer, "null output pointer");
        }
        let Some(v) = inst.0.voices.get(l) else {
            return fail(SpacingStatus::OutOfRange, format!("voice {l} of {}", inst.0.h()));
        };
        (*p, *k, *m) = (v.p, v.k, v.m);
        SpacingStatus::Ok
    })
}

/// # Safety
/// `inst` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn spacing_instance_free(inst: *mut SpacingInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

// ---------------------------------------------------------------------------
// Search

/// Searches `inst` under `model`. With `all` every solution is counted,
/// otherwise search stops at the first; `timeout_ms = 0` means no limit.
/// At most `keep` solutions are stored in the result.
///
/// # Safety
/// `inst` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spacing_solve(
    inst: *const SpacingInstance,
    model: SpacingModel,
    heuristic: SpacingHeuristic,
    all: bool,
    keep: usize,
    timeout_ms: u64,
    out: *mut *mut SpacingResult,
) -> SpacingStatus {
    guard(|| {
        let Some(inst) = inst.as_ref() else {
            return fail(SpacingStatus::NullPointer, "null instance");
        };
        let mut limits = if all { Limits::default() } else { Limits::first_solution() };
        limits.keep_solutions = keep;
        limits.timeout = timeout_of(timeout_ms);
        let heuristic = match heuristic {
            SpacingHeuristic::FirstFail => Heuristic::default(),
            SpacingHeuristic::Static => Heuristic::STATIC,
        };
        let outcome = Model::build(&inst.0, model.into()).solve(heuristic, &limits);
        put(out, SpacingResult { outcome })
    })
}

/// # Safety
/// `res` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn spacing_result_verdict(res: *const SpacingResult) -> SpacingVerdict {
    match res.as_ref().map(|r| r.outcome.verdict()) {
        Some(Verdict::Sat) => SpacingVerdict::Sat,
        Some(Verdict::Unsat) => SpacingVerdict::Unsat,
        _ => SpacingVerdict::Unknown,
    }
}

/// # Safety
/// `res` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn spacing_result_solution_count(res: *const SpacingResult) -> u64 {
    res.as_ref().map_or(0, |r| r.outcome.solution_count)
}

/// # Safety
/// `res` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn spacing_result_backtracks(res: *const SpacingResult) -> u64 {
    res.as_ref().map_or(0, |r| r.outcome.backtracks)
}

/// # Safety
/// `res` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn spacing_result_nodes(res: *const SpacingResult) -> u64 {
    res.as_ref().map_or(0, |r| r.outcome.nodes)
}

/// Wall time in seconds.
///
/// # Safety
/// `res` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn spacing_result_seconds(res: *const SpacingResult) -> f64 {
    res.as_ref().map_or(0.0, |r| r.outcome.wall_time)
}

/// Copies stored solution `index` into `buf`. `*written` receives the
/// solution length even when the buffer is too small.
///
/// # Safety
/// `res` must be a live handle; `buf` must hold `len` values; `written`
/// may be NULL.
#[no_mangle]
pub unsafe extern "C" fn spacing_result_solution(
    res: *const SpacingResult,
    index: usize,
    buf: *mut u32,
    len: usize,
    written: *mut usize,
) -> SpacingStatus {
    guard(|| {
        let Some(res) = res.as_ref() else {
            return fail(SpacingStatus::NullPointer, "null result");
        };
        match res.outcome.solutions.get(index) {
            Some(sol) => copy_out::<Value>(sol, buf, len, written),
            None => fail(
                SpacingStatus::OutOfRange,
                format!("solution {index} of {} stored", res.outcome.solutions.len()),
            ),
        }
    })
}

/// # Safety
/// `res` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn spacing_result_free(res: *mut SpacingResult) {
    if !res.is_null() {
        drop(Box::from_raw(res));
    }
}

// ---------------------------------------------------------------------------
// Reductions

/// Compiles a DIMACS formula.
///
/// # Safety
/// `dimacs` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spacing_reduce_dimacs(
    dimacs: *const c_char,
    kind: SpacingReduction,
    out: *mut *mut SpacingReduced,
) -> SpacingStatus {
    guard(|| {
        let text = match str_arg(dimacs) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let cnf = match parse_dimacs(text) {
            Ok(c) => c,
            Err(e) => return fail(SpacingStatus::Parse, e.to_string()),
        };
        match reduce(&cnf, kind.into()) {
            Ok(r) => put(out, SpacingReduced(r)),
            Err(e) => fail(SpacingStatus::Reduction, e.to_string()),
        }
    })
}

/// # Safety
/// `red` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn spacing_reduced_length(red: *const SpacingReduced) -> usize {
    red.as_ref().map_or(0, |r| r.0.n)
}

/// # Safety
/// `red` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spacing_reduced_to_json(red: *const SpacingReduced, out: *mut *mut c_char) -> SpacingStatus {
    guard(|| match red.as_ref() {
        Some(r) => put_string(out, r.0.to_json()),
        None => fail(SpacingStatus::NullPointer, "null instance"),
    })
}

/// # Safety
/// `red` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spacing_reduced_mapping_json(red: *const SpacingReduced, out: *mut *mut c_char) -> SpacingStatus {
    guard(|| match red.as_ref() {
        Some(r) => put_string(out, r.0.mapping_json()),
        None => fail(SpacingStatus::NullPointer, "null instance"),
    })
}

/// Searches for a support and decodes it into one literal per variable.
/// Returns `Unsat` when no support exists and `Timeout` when the limit
/// ran out first.
///
/// # Safety
/// `red` must be a live handle; `buf` must hold `len` values; `written`
/// may be NULL.
#[no_mangle]
pub unsafe extern "C" fn spacing_reduced_find_model(
    red: *const SpacingReduced,
    timeout_ms: u64,
    buf: *mut i32,
    len: usize,
    written: *mut usize,
) -> SpacingStatus {
    guard(|| {
        let Some(red) = red.as_ref() else {
            return fail(SpacingStatus::NullPointer, "null instance");
        };
        match red.0.find_support(timeout_of(timeout_ms)) {
            Err(_) => fail(SpacingStatus::Timeout, "no answer within the time limit"),
            Ok(None) => SpacingStatus::Unsat,
            Ok(Some(seq)) => match extract_model(&seq, &red.0) {
                Ok(model) => copy_out(&model, buf, len, written),
                Err(e) => fail(SpacingStatus::Reduction, e.to_string()),
            },
        }
    })
}

/// # Safety
/// `red` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn spacing_reduced_free(red: *mut SpacingReduced) {
    if !red.is_null() {
        drop(Box::from_raw(red));
    }
}

// ---------------------------------------------------------------------------
// Acceptance suites

/// Runs one suite. `trials = 0` keeps the suite's default size.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spacing_check_run(
    suite: SpacingSuite,
    seed: u64,
    trials: usize,
    out: *mut *mut SpacingCheckReport,
) -> SpacingStatus {
    guard(|| {
        let cfg = CheckConfig {
            seed,
            trials: (trials > 0).then_some(trials),
            ..CheckConfig::default()
        };
        put(out, SpacingCheckReport(checks::run(suite.into(), &cfg)))
    })
}

/// # Safety
/// `rep` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn spacing_check_passed(rep: *const SpacingCheckReport) -> bool {
    rep.as_ref().is_some_and(|r| r.0.passed())
}

/// # Safety
/// `rep` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn spacing_check_trials(rep: *const SpacingCheckReport) -> usize {
    rep.as_ref().map_or(0, |r| r.0.trials)
}

/// # Safety
/// `rep` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn spacing_check_failures(rep: *const SpacingCheckReport) -> usize {
    rep.as_ref().map_or(0, |r| r.0.failures)
}

/// # Safety
/// `rep` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn spacing_check_seconds(rep: *const SpacingCheckReport) -> f64 {
    rep.as_ref().map_or(0.0, |r| r.0.elapsed.as_secs_f64())
}

/// One-line summary plus the first counterexample, if any.
///
/// # Safety
/// `rep` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spacing_check_summary(rep: *const SpacingCheckReport, out: *mut *mut c_char) -> SpacingStatus {
    guard(|| match rep.as_ref() {
        Some(r) => put_string(out, r.0.to_string()),
        None => fail(SpacingStatus::NullPointer, "null report"),
    })
}

/// # Safety
/// `rep` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn spacing_check_free(rep: *mut SpacingCheckReport) {
    if !rep.is_null() {
        drop(Box::from_raw(rep));
    }
}
