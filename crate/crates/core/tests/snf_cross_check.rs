//! Cross-checks the invariant factors of real relation matrices against the
//! independent python reference, and freezes the computed structures.

use burnc_core::group::{FiniteGroup, DEFAULT_MAX_ORDER};
use burnc_core::perm::Perm;
use burnc_core::{Limits, Presentation};
use num_bigint::BigInt;
use std::io::Write;
use std::process::{Command, Stdio};
use std::sync::Arc;

fn python_invariants(p: &Presentation) -> Vec<BigInt> {
    let rel = p.relations();
    let mut entries = String::new();
    entries.push('[');
    let mut first = true;
    for i in 0..rel.rows() {
        for (j, v) in rel.row(i) {
            if !first {
                entries.push(',');
            }
            first = false;
            entries.push_str(&format!("[{},{},{}]", i, j, v));
        }
    }
    entries.push(']');
    let payload = format!(
        "{{\"rows\": {}, \"cols\": {}, \"entries\": {}}}",
        rel.rows(),
        rel.cols(),
        entries
    );
    let script = concat!(env!("CARGO_MANIFEST_DIR"), "/../../scripts/snf_check.py");
    let mut child = Command::new("python3")
        .arg(script)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("python3 available");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(payload.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let inner = text.trim().trim_start_matches('[').trim_end_matches(']');
    if inner.is_empty() {
        return Vec::new();
    }
    inner
        .split(',')
        .map(|s| s.trim().parse::<BigInt>().unwrap())
        .collect()
}

fn check(group: Arc<FiniteGroup>, n: u32) -> String {
    let p = Presentation::build(&group, n, None, &Limits::default()).unwrap();
    let ours = &p.quotient().smith().invariants;
    let reference = python_invariants(&p);
    assert_eq!(ours, &reference, "invariant factors differ from the reference");
    p.structure_string()
}

#[test]
fn s4_dimension_two_structure() {
    let s4 = FiniteGroup::from_permutations(
        "S4",
        4,
        &[
            Perm::from_cycles(4, &[vec![1, 2]]).unwrap(),
            Perm::from_cycles(4, &[vec![1, 2, 3, 4]]).unwrap(),
        ],
        DEFAULT_MAX_ORDER,
    )
    .unwrap();
    let start = std::time::Instant::now();
    let display = check(s4, 2);
    assert!(start.elapsed().as_secs() < 10, "structure computed quickly");
    // frozen after cross-checking against the python reference
    assert_eq!(display, "Z^11 (+) Z/2 (+) Z/2 (+) Z/2");
}

#[test]
fn s3_dimension_two_structure() {
    let s3 = FiniteGroup::from_permutations(
        "S3",
        3,
        &[
            Perm::from_cycles(3, &[vec![1, 2]]).unwrap(),
            Perm::from_cycles(3, &[vec![1, 2, 3]]).unwrap(),
        ],
        DEFAULT_MAX_ORDER,
    )
    .unwrap();
    let display = check(s3, 2);
    assert_eq!(display, "Z^4 (+) Z/2");
}

#[test]
fn d4_dimension_two_structure() {
    let d4 = FiniteGroup::from_permutations(
        "D4",
        4,
        &[
            Perm::from_cycles(4, &[vec![1, 2, 3, 4]]).unwrap(),
            Perm::from_cycles(4, &[vec![2, 4]]).unwrap(),
        ],
        DEFAULT_MAX_ORDER,
    )
    .unwrap();
    let display = check(d4, 2);
    assert_eq!(display, "Z^8 (+) Z/2 (+) Z/2 (+) Z/2");
}
