//! One PASS/FAIL line per acceptance criterion. The benchmark criterion
//! runs the full grid and takes tens of minutes on one core.

use std::process::ExitCode;
use std::time::Duration;

use spacing::checks::{self, CheckConfig, CheckReport, Suite};

struct Criterion {
    id: usize,
    title: &'static str,
    suite: Suite,
    budget: Option<Duration>,
}

const fn criterion(id: usize, title: &'static str, suite: Suite, secs: Option<u64>) -> Criterion {
    let budget = match secs {
        Some(s) => Some(Duration::from_secs(s)),
        None => None,
    };
    Criterion { id, title, suite, budget }
}

const CRITERIA: [Criterion; 10] = [
    criterion(1, "Spacing1 worked example", Suite::WorkedExample, Some(1)),
    criterion(2, "two-voice intervoice example", Suite::IntervoiceExample, Some(1)),
    criterion(3, "SM strictly stronger than OM", Suite::Strictness, Some(1)),
    criterion(4, "Spacing1 propagator equals DC oracle", Suite::Spacing1, Some(60)),
    criterion(5, "Spacing_SB propagator equals DC oracle", Suite::Sb, Some(30)),
    criterion(6, "intervoice pruning is sound", Suite::Intervoice, Some(120)),
    criterion(7, "bounded-S automaton equals DC oracle", Suite::Bounded, Some(60)),
    criterion(8, "SAT reductions round-trip", Suite::Reductions, None),
    criterion(9, "monotonicity on the benchmark grid", Suite::Monotonicity, None),
    criterion(10, "SB count times onset permutations equals SM count", Suite::SbCount, Some(60)),
];

fn line(c: &Criterion, r: &CheckReport) -> bool {
    let in_time = c.budget.is_none_or(|b| r.elapsed < b);
    let ok = r.passed() && in_time;
    let budget = c.budget.map(|b| format!(" (limit {}s)", b.as_secs())).unwrap_or_default();
    println!(
        "{} criterion {:>2} {}: {}/{} trials, {:.2}s{}{}",
        if ok { "PASS" } else { "FAIL" },
        c.id,
        c.title,
        r.trials - r.failures,
        r.trials,
        r.elapsed.as_secs_f64(),
        budget,
        r.notes.iter().map(|n| format!("; {n}")).collect::<String>()
    );
    if let Some(ce) = &r.counterexample {
        println!("    first counterexample: {ce}");
    }
    ok
}

fn main() -> ExitCode {
    let cfg = CheckConfig::default();
    let mut all = true;
    for c in &CRITERIA {
        let report = checks::run(c.suite, &cfg);
        all &= line(c, &report);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
