//! One PASS/FAIL line per acceptance criterion, driven through the C ABI.

use std::ffi::CStr;
use std::process::ExitCode;
use std::ptr;

use spacing_ffi::*;

const SUITES: [(SpacingSuite, Option<f64>); 10] = [
    (SpacingSuite::WorkedExample, Some(1.0)),
    (SpacingSuite::IntervoiceExample, Some(1.0)),
    (SpacingSuite::Strictness, Some(1.0)),
    (SpacingSuite::Spacing1, Some(60.0)),
    (SpacingSuite::Sb, Some(30.0)),
    (SpacingSuite::Intervoice, Some(120.0)),
    (SpacingSuite::Bounded, Some(60.0)),
    (SpacingSuite::Reductions, None),
    (SpacingSuite::Monotonicity, None),
    (SpacingSuite::SbCount, Some(60.0)),
];

fn main() -> ExitCode {
    let mut all = true;
    for (suite, budget) in SUITES {
        let mut rep = ptr::null_mut();
        let status = unsafe { spacing_check_run(suite, 0, 0, &mut rep) };
        if status != SpacingStatus::Ok {
            let err = unsafe { CStr::from_ptr(spacing_last_error()) }.to_string_lossy().into_owned();
            println!("FAIL criterion {:>2}: status {status:?}: {err}", suite as u32);
            all = false;
            continue;
        }
        let (passed, secs) = unsafe { (spacing_check_passed(rep), spacing_check_seconds(rep)) };
        let ok = passed && budget.is_none_or(|b| secs < b);
        let mut summary = ptr::null_mut();
        let text = unsafe {
            assert_eq!(spacing_check_summary(rep, &mut summary), SpacingStatus::Ok);
            let s = CStr::from_ptr(summary).to_string_lossy().into_owned();
            spacing_string_free(summary);
            spacing_check_free(rep);
            s
        };
        let budget = budget.map(|b| format!(" (limit {b}s)")).unwrap_or_default();
        let mut lines = text.lines();
        let first = lines.next().unwrap_or_default();
        // The summary starts with the core verdict; the line verdict also
        // covers the time limit.
        let detail = first.split_once(' ').map_or(first, |(_, rest)| rest);
        println!("{} criterion {:>2} {detail}{budget}", if ok { "PASS" } else { "FAIL" }, suite as u32);
        for l in lines {
            println!("  {}", l.trim_start());
        }
        all &= ok;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
