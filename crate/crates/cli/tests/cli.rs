//! End-to-end tests of the `burnc` binary: example scripts, exit codes,
//! output determinism, and the JSON schema surface.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn burnc() -> Command {
    Command::new(env!("CARGO_BIN_EXE_burnc"))
}

fn examples_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples")
}

fn run_ok(args: &[&str]) -> Output {
    let out = burnc().args(args).output().expect("binary runs");
    assert!(
        out.status.success(),
        "burnc {:?} failed:\nstdout: {}\nstderr: {}",
        args,
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

#[test]
fn every_example_script_checks_and_runs() {
    let mut found = 0;
    for entry in std::fs::read_dir(examples_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("burn") {
            continue;
        }
        found += 1;
        let p = path.to_str().unwrap();
        run_ok(&["check", p]);
        let start = std::time::Instant::now();
        run_ok(&["run", p]);
        assert!(
            start.elapsed().as_secs() < 60,
            "{} exceeded its time budget",
            p
        );
    }
    assert!(found >= 4, "expected the shipped example scripts");
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let script = examples_dir().join("z5s3.burn");
    let p = script.to_str().unwrap();
    let a = run_ok(&["run", p, "--format", "json"]);
    let b = run_ok(&["run", p, "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let a = run_ok(&["run", p]);
    let b = run_ok(&["run", p]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn z5s3_verdicts_and_structure() {
    let script = examples_dir().join("z5s3.burn");
    let out = run_ok(&["run", script.to_str().unwrap(), "--format", "json"]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["schema_version"], "1");
    let results = json["results"].as_array().unwrap();
    let find = |needle: &str| -> &serde_json::Value {
        results
            .iter()
            .find(|r| r["command"].as_str().unwrap().starts_with(needle))
            .unwrap_or_else(|| panic!("no command starting with `{}`", needle))
    };
    // the closure hypothesis holds for the (C5, S3) prefilter
    assert_eq!(find("check_prefilter")["verdict"], true);
    // the reduced presentation is free of rank two
    let s = find("structure BC(G, 2, HH)");
    assert_eq!(s["structure"]["free_rank"], 2);
    assert_eq!(s["structure"]["torsion"].as_array().unwrap().len(), 0);
    // the projected class matches the two-character class and both collapse
    assert_eq!(find("is_zero projected")["verdict"], true);
    assert_eq!(find("equal projected chi1")["verdict"], true);
    assert_eq!(find("equal chi1 chi2")["verdict"], true);
    // the projectivized class has ten distinct symbols with coefficient 1
    let bundle = find("projectivize xi as bundle");
    let terms = bundle["class"].as_array().unwrap();
    assert_eq!(terms.len(), 10);
    assert!(terms.iter().all(|t| t["coeff"] == 1));
    // in the full group the class is nonzero and the two pencils differ
    assert_eq!(find("is_zero bundle in BC(G, 2)")["verdict"], false);
    assert_eq!(find("equal bundle bundle2")["verdict"], false);
    // every ok result carries no timing by default
    assert!(results.iter().all(|r| r.get("timing_ms").is_none()));
}

#[test]
fn s4_difference_script_verdicts() {
    let script = examples_dir().join("s4_difference.burn");
    let out = run_ok(&["run", script.to_str().unwrap(), "--format", "json"]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let results = json["results"].as_array().unwrap();
    let find = |needle: &str| -> &serde_json::Value {
        results
            .iter()
            .find(|r| r["command"].as_str().unwrap().starts_with(needle))
            .unwrap()
    };
    assert_eq!(find("equal diff oddline")["verdict"], true);
    assert_eq!(find("is_zero diff")["verdict"], true);
}

#[test]
fn d4_restriction_lists_both_characters() {
    let script = examples_dir().join("d4_restriction.burn");
    let out = run_ok(&["run", script.to_str().unwrap(), "--format", "json"]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let results = json["results"].as_array().unwrap();
    let restrict = results
        .iter()
        .find(|r| r["command"].as_str().unwrap().starts_with("restrict"))
        .unwrap();
    let terms = restrict["class"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    let symbols: Vec<&str> = terms.iter().map(|t| t["symbol"].as_str().unwrap()).collect();
    assert!(symbols.iter().any(|s| s.contains("beta=[1]")));
    assert!(symbols.iter().any(|s| s.contains("beta=[3]")));
    assert!(terms.iter().all(|t| t["coeff"] == 1));
}

#[test]
fn exit_codes() {
    // parse error: 2
    let dir = tempdir();
    let bad = dir.join("bad.burn");
    std::fs::write(&bad, "symbol s = (H=<(1 2)>, Y=<(3 4)>, beta=[").unwrap();
    let out = burnc().args(["run", bad.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("1:41"), "error location in `{}`", err);

    // unresolved declaration name: 2
    let unresolved = dir.join("unresolved.burn");
    std::fs::write(&unresolved, "symbol s = (H=<(1 2)>, Y=<>, beta=[1]) in NOPE dim 1\n").unwrap();
    let out = burnc()
        .args(["check", unresolved.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // command error: 1, and independent commands still run
    let cmderr = dir.join("cmderr.burn");
    std::fs::write(
        &cmderr,
        "group C2 = perm(2) <(1 2)>\nis_zero nosuch in BC(C2, 1)\nstructure BC(C2, 1)\n",
    )
    .unwrap();
    let out = burnc()
        .args(["run", cmderr.to_str().unwrap(), "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let results = json["results"].as_array().unwrap();
    assert_eq!(results[0]["status"], "error");
    assert_eq!(results[1]["status"], "ok");
    assert_eq!(results[1]["structure"]["free_rank"], 3);

    // resource bound: command error without aborting the run
    let bound = dir.join("bound.burn");
    std::fs::write(
        &bound,
        "group S4 = perm(4) <(1 2), (1 2 3 4)>\nstructure BC(S4, 2)\nstructure BC(S4, 1)\n",
    )
    .unwrap();
    let out = burnc()
        .args([
            "run",
            bound.to_str().unwrap(),
            "--max-generators",
            "5",
            "--format",
            "json",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let results = json["results"].as_array().unwrap();
    assert_eq!(results[0]["status"], "error");
    assert!(results[0]["message"]
        .as_str()
        .unwrap()
        .contains("resource bound"));

    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn named_subgroup_restriction_and_fallback_prefilter() {
    let dir = tempdir();
    let script = dir.join("named.burn");
    std::fs::write(
        &script,
        "group C4 = perm(4) <(1 2 3 4)>\n\
         subgroup C2 = <(1 3)(2 4)> in C4\n\
         symbol s = (H=<(1 2 3 4)>, Y=<>, beta=[1]) in C4 dim 1\n\
         restrict s from C4 to C2 as r\n\
         # a prefilter violating the closure hypothesis falls back to the\n\
         # full-quotient construction\n\
         prefilter P = {(H=<(1 3)(2 4)>, Y=<(1 2 3 4)>)} in C4\n\
         check_prefilter P\n\
         structure BC(C4, 1, P)\n\
         is_zero s in BC(C4, 1, P)\n",
    )
    .unwrap();
    let out = run_ok(&["run", script.to_str().unwrap(), "--format", "json"]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let results = json["results"].as_array().unwrap();
    let find = |needle: &str| -> &serde_json::Value {
        results
            .iter()
            .find(|r| r["command"].as_str().unwrap().starts_with(needle))
            .unwrap()
    };
    // the faithful character survives restriction (it evaluates to the
    // involution's sign), giving a single symbol over the new group
    let restricted = find("restrict")["class"].as_array().unwrap();
    assert_eq!(restricted.len(), 1);
    assert!(restricted[0]["symbol"].as_str().unwrap().contains("beta=[1]"));
    assert_eq!(find("check_prefilter")["verdict"], false);
    // full quotient: (C4, triv, (1)) lies outside the prefilter, so it is
    // killed in the quotient
    assert_eq!(find("is_zero s")["verdict"], true);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn projectivize_rejects_plain_indexed_data() {
    let dir = tempdir();
    let script = dir.join("proj.burn");
    std::fs::write(
        &script,
        "group C2 = perm(2) <(1 2)>\n\
         indexed d = [(H=<(1 2)>, Hp=<(1 2)>, Y=<>, beta=[], gamma={0: 1})] in C2 dim 1\n\
         projectivize d\n",
    )
    .unwrap();
    let out = burnc()
        .args(["run", script.to_str().unwrap(), "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["results"][0]["status"], "error");
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn dimension_mismatch_is_a_command_error() {
    let dir = tempdir();
    let script = dir.join("dim.burn");
    std::fs::write(
        &script,
        "group C2 = perm(2) <(1 2)>\n\
         symbol s = (H=<(1 2)>, Y=<>, beta=[1]) in C2 dim 2\n\
         is_zero s in BC(C2, 1)\n",
    )
    .unwrap();
    let out = burnc()
        .args(["run", script.to_str().unwrap(), "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["results"][0]["status"], "error");
    assert!(json["results"][0]["message"]
        .as_str()
        .unwrap()
        .contains("dimension"));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn empty_script_yields_empty_report() {
    let dir = tempdir();
    let empty = dir.join("empty.burn");
    std::fs::write(&empty, "# nothing here\n").unwrap();
    let out = run_ok(&["run", empty.to_str().unwrap(), "--format", "json"]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["results"].as_array().unwrap().len(), 0);
    let out = run_ok(&["run", empty.to_str().unwrap()]);
    assert!(out.stdout.is_empty());
}

#[test]
fn timing_flag_adds_timings() {
    let script = examples_dir().join("basics.burn");
    let out = run_ok(&["run", script.to_str().unwrap(), "--format", "json", "--timing"]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let results = json["results"].as_array().unwrap();
    assert!(results.iter().all(|r| r.get("timing_ms").is_some()));
}

#[test]
fn threads_flag_gives_identical_reports() {
    let script = examples_dir().join("s4_difference.burn");
    let p = script.to_str().unwrap();
    let one = run_ok(&["run", p, "--format", "json"]);
    let four = run_ok(&["run", p, "--format", "json", "--threads", "4"]);
    assert_eq!(one.stdout, four.stdout);
}

fn tempdir() -> PathBuf {
    use std::sync::atomic::{AtomicU32, Ordering};
    static COUNTER: AtomicU32 = AtomicU32::new(0);
    let dir = std::env::temp_dir().join(format!(
        "burnc-test-{}-{}",
        std::process::id(),
        COUNTER.fetch_add(1, Ordering::Relaxed)
    ));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
