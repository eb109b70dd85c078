use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use spacing::rhythm::{RhythmInstance, Voice};
use spacing::sat::ReducedInstance;

const RUNNING_EXAMPLE: &str = "c (-p q r)(-q r)(-p -q)(p q)\np cnf 3 4\n-1 2 3 0\n-2 3 0\n-1 -2 0\n1 2 0\n";

fn spacing(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spacing"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn gen_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = |out: &'static str| ["gen", "--h", "3", "--p1", "12", "--kh", "2", "--seed", "1", "--out", out];
    let a = spacing(&args("a.json"), dir.path());
    assert_eq!(a.status.code(), Some(0));
    assert!(stdout(&a).contains("voice 1: p = 12"));
    assert_eq!(spacing(&args("b.json"), dir.path()).status.code(), Some(0));
    let (x, y) = (fs::read(dir.path().join("a.json")).unwrap(), fs::read(dir.path().join("b.json")).unwrap());
    assert_eq!(x, y);
    let inst = RhythmInstance::from_json(std::str::from_utf8(&x).unwrap()).unwrap();
    assert_eq!(inst.h(), 3);
    assert_eq!(inst.voices[0].p, 12);
    assert_eq!(inst.voices[2].k, 2);
}

#[test]
fn usage_errors_exit_64() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(spacing(&["gen", "--h", "0", "--p1", "12", "--kh", "2"], dir.path()).status.code(), Some(64));
    assert_eq!(spacing(&["frobnicate"], dir.path()).status.code(), Some(64));
    assert_eq!(spacing(&["solve", "x.json", "--model", "zz"], dir.path()).status.code(), Some(64));
    assert_eq!(spacing(&["--help"], dir.path()).status.code(), Some(0));
}

#[test]
fn sm_fails_strictness_fixture_without_search() {
    let dir = tempfile::tempdir().unwrap();
    let mut inst = RhythmInstance::new(vec![Voice { p: 2, k: 2, m: 2 }, Voice { p: 3, k: 2, m: 1 }], 6).unwrap();
    inst.removed = vec![(1, 0), (1, 3)];
    fs::write(dir.path().join("t.json"), inst.to_json()).unwrap();
    let o = spacing(&["solve", "t.json", "--model", "sm", "--format", "json"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "unsat");
    assert_eq!(v["backtracks"], 0);
    let om = spacing(&["solve", "t.json", "--model", "om"], dir.path());
    assert_eq!(om.status.code(), Some(1));
}

#[test]
fn sb_count_times_permutations_is_sm_count() {
    let dir = tempfile::tempdir().unwrap();
    let inst = RhythmInstance::new(vec![Voice { p: 4, k: 2, m: 2 }, Voice { p: 5, k: 1, m: 2 }], 8).unwrap();
    fs::write(dir.path().join("s.json"), inst.to_json()).unwrap();
    let count = |model: &str| {
        let o = spacing(&["solve", "s.json", "--model", model, "--all", "--format", "json"], dir.path());
        assert_eq!(o.status.code(), Some(0));
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        v["solution_count"].as_u64().unwrap()
    };
    let (sm, sb) = (count("sm"), count("sb"));
    assert!(sb > 0);
    assert_eq!(sm, sb * 2 * 2);
    assert_eq!(count("sr"), sm);
}

#[test]
fn huge_instance_times_out() {
    let dir = tempfile::tempdir().unwrap();
    let g = spacing(&["gen", "--h", "5", "--p1", "24", "--kh", "4", "--out", "big.json"], dir.path());
    assert_eq!(g.status.code(), Some(0));
    let o = spacing(&["solve", "big.json", "--model", "sm", "--timeout", "0.5"], dir.path());
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
}

#[test]
fn bench_csv_schema() {
    let dir = tempfile::tempdir().unwrap();
    let o = spacing(&["bench", "--cell", "3,12,2", "--instances", "2", "--timeout", "2"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "h,p1,kh,model,instances,solved,mean_time_s,mean_backtracks");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("3,12,2,sm,2,"));

    let empty = spacing(&["bench", "--cell", "3,12,2", "--model", ""], dir.path());
    assert_ne!(empty.status.code(), Some(0), "an empty model name is rejected");

    let rec = |out: &str| {
        let o = spacing(&["bench", "--cell", "3,12,2", "--instances", "2", "--records", "--out", out], dir.path());
        assert_eq!(o.status.code(), Some(0));
        let text = fs::read_to_string(dir.path().join(out)).unwrap();
        // Everything but the time column is reproducible.
        text.lines()
            .map(|l| {
                let mut f: Vec<&str> = l.split(',').collect();
                f.remove(7);
                f.join(",")
            })
            .collect::<Vec<_>>()
    };
    assert_eq!(rec("r1.csv"), rec("r2.csv"));
}

#[test]
fn check_reports_pass() {
    let dir = tempfile::tempdir().unwrap();
    let o = spacing(&["check", "--suite", "spacing1", "--trials", "50", "--suite", "sb"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("PASS spacing1: 50/50"));
    assert!(out.contains("PASS sb"));
    let r = spacing(&["check", "--suite", "reductions", "--max-v", "2", "--trials", "5"], dir.path());
    assert_eq!(r.status.code(), Some(0), "{}", stdout(&r));
}

#[test]
fn reduce_writes_instance_and_mapping() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("ex.cnf"), RUNNING_EXAMPLE).unwrap();
    let o = spacing(&["reduce", "ex.cnf", "--kind", "spacing", "--out", "ex.json"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let inst: ReducedInstance = serde_json::from_str(&fs::read_to_string(dir.path().join("ex.json")).unwrap()).unwrap();
    assert_eq!(inst.n, 19);
    let mapping: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("ex.mapping.json")).unwrap()).unwrap();
    assert_eq!(mapping.as_array().unwrap().len(), 6);

    let s = spacing(&["solve", "ex.json", "--format", "json"], dir.path());
    assert_eq!(s.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&s)).unwrap();
    let model: Vec<i32> = serde_json::from_value(v["models"][0].clone()).unwrap();
    assert!(inst.cnf.is_model(&model), "{model:?}");
}

#[test]
fn reduce_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("one.cnf"), "p cnf 2 1\n1 -2 0\n").unwrap();
    let o = spacing(&["reduce", "one.cnf", "--kind", "spacingh"], dir.path());
    assert_eq!(o.status.code(), Some(65));
    assert!(String::from_utf8_lossy(&o.stderr).contains("single clause"));

    fs::write(dir.path().join("bad.cnf"), "p cnf 2 1\n1 x 0\n").unwrap();
    assert_eq!(spacing(&["reduce", "bad.cnf", "--kind", "spacing"], dir.path()).status.code(), Some(65));
    assert_eq!(spacing(&["reduce", "missing.cnf", "--kind", "spacing"], dir.path()).status.code(), Some(65));
}
