//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use burnc_core::abelian::{AbelianStructure, Character};
use burnc_core::group::{FiniteGroup, Subgroup, DEFAULT_MAX_ORDER};
use burnc_core::lattice::IntMatrix;
use burnc_core::perm::Perm;
use burnc_core::symbols::{IndexedSymbol, Symbol};
use burnc_core::{
    fibration_class, product, restrict, BurnsideClass, Limits, Prefilter, Presentation,
    RestrictedGroup,
};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use std::time::Instant;

struct CriterionGuard {
    label: &'static str,
    start: Instant,
    passed: bool,
}

impl CriterionGuard {
    fn new(label: &'static str) -> Self {
        CriterionGuard {
            label,
            start: Instant::now(),
            passed: false,
        }
    }
    fn pass(mut self) {
        self.passed = true;
        println!(
            "criterion {}: PASS ({} ms)",
            self.label,
            self.start.elapsed().as_millis()
        );
        std::mem::forget(self);
    }
}

impl Drop for CriterionGuard {
    fn drop(&mut self) {
        if !self.passed {
            println!(
                "criterion {}: FAIL ({} ms)",
                self.label,
                self.start.elapsed().as_millis()
            );
        }
    }
}

fn s4() -> Arc<FiniteGroup> {
    FiniteGroup::from_permutations(
        "S4",
        4,
        &[
            Perm::from_cycles(4, &[vec![1, 2]]).unwrap(),
            Perm::from_cycles(4, &[vec![1, 2, 3, 4]]).unwrap(),
        ],
        DEFAULT_MAX_ORDER,
    )
    .unwrap()
}

fn s3() -> Arc<FiniteGroup> {
    FiniteGroup::from_permutations(
        "S3",
        3,
        &[
            Perm::from_cycles(3, &[vec![1, 2]]).unwrap(),
            Perm::from_cycles(3, &[vec![1, 2, 3]]).unwrap(),
        ],
        DEFAULT_MAX_ORDER,
    )
    .unwrap()
}

fn c2() -> Arc<FiniteGroup> {
    FiniteGroup::from_permutations(
        "C2",
        2,
        &[Perm::from_cycles(2, &[vec![1, 2]]).unwrap()],
        DEFAULT_MAX_ORDER,
    )
    .unwrap()
}

fn d4() -> Arc<FiniteGroup> {
    FiniteGroup::from_permutations(
        "D4",
        4,
        &[
            Perm::from_cycles(4, &[vec![1, 2, 3, 4]]).unwrap(),
            Perm::from_cycles(4, &[vec![2, 4]]).unwrap(),
        ],
        DEFAULT_MAX_ORDER,
    )
    .unwrap()
}

/// C5 x S3 on 8 points: the 5-cycle on 1..5, S3 on 6..8.
fn c5s3() -> Arc<FiniteGroup> {
    let c5 = FiniteGroup::from_permutations(
        "C5",
        5,
        &[Perm::from_cycles(5, &[vec![1, 2, 3, 4, 5]]).unwrap()],
        DEFAULT_MAX_ORDER,
    )
    .unwrap();
    FiniteGroup::direct_product("C5xS3", &c5, &s3(), DEFAULT_MAX_ORDER)
        .unwrap()
        .group
}

fn elem(g: &Arc<FiniteGroup>, cycles: &[Vec<u32>]) -> u32 {
    g.elem_from_perm(&Perm::from_cycles(g.degree(), cycles).unwrap())
        .unwrap()
}

fn chr_vals(sub: &Subgroup, vals: &[(u32, u64)]) -> Character {
    let st = AbelianStructure::for_subgroup(sub).unwrap();
    Character::from_element_values(&st, vals).unwrap()
}

struct Z5s3 {
    g: Arc<FiniteGroup>,
    c: u32,
    t: u32,
    u: u32,
    c5: Subgroup,
    c10: Subgroup,
    c15: Subgroup,
    full: Subgroup,
}

fn z5s3_setup() -> Z5s3 {
    let g = c5s3();
    let c = elem(&g, &[vec![1, 2, 3, 4, 5]]);
    let t = elem(&g, &[vec![6, 7]]);
    let u = elem(&g, &[vec![6, 7, 8]]);
    let c5 = Subgroup::generated(&g, &[c]);
    let c10 = Subgroup::generated(&g, &[c, t]);
    let c15 = Subgroup::generated(&g, &[c, u]);
    let full = Subgroup::full(&g);
    Z5s3 {
        g,
        c,
        t,
        u,
        c5,
        c10,
        c15,
        full,
    }
}

/// The projective indexed input for the pencil of line bundles on P1:
/// trivial L0, and L1 = O(1) twisted by the C5-character chi.
fn z5s3_xi(z: &Z5s3, chi: u64) -> Vec<(i64, IndexedSymbol)> {
    let st5 = AbelianStructure::for_subgroup(&z.c5).unwrap();
    let st10 = AbelianStructure::for_subgroup(&z.c10).unwrap();
    let st15 = AbelianStructure::for_subgroup(&z.c15).unwrap();
    let zero5 = Character::zero(Arc::clone(&st5));
    let zero10 = Character::zero(Arc::clone(&st10));
    let zero15 = Character::zero(Arc::clone(&st15));
    let chi5 = chr_vals(&z.c5, &[(z.c, chi)]);
    // generic stratum: stabilizer C5, the full S3 on the function field
    let x1 = IndexedSymbol::new(
        z.c5.clone(),
        z.c5.clone(),
        z.full.clone(),
        vec![],
        BTreeMap::from([(0, zero5), (1, chi5)]),
        2,
        true,
    )
    .unwrap();
    // the two fixed points of a transposition: H' = C5 x <t>
    let beta10 = chr_vals(&z.c10, &[(z.c, 0), (z.t, 5)]);
    let x2 = IndexedSymbol::new(
        z.c5.clone(),
        z.c10.clone(),
        z.c10.clone(),
        vec![beta10.clone()],
        BTreeMap::from([(0, zero10.clone()), (1, chr_vals(&z.c10, &[(z.c, 2 * chi), (z.t, 0)]))]),
        2,
        true,
    )
    .unwrap();
    let x3 = IndexedSymbol::new(
        z.c5.clone(),
        z.c10.clone(),
        z.c10.clone(),
        vec![beta10],
        BTreeMap::from([(0, zero10), (1, chr_vals(&z.c10, &[(z.c, 2 * chi), (z.t, 5)]))]),
        2,
        true,
    )
    .unwrap();
    // the orbit of the two fixed points of the 3-cycles: H' = C5 x A3,
    // a split pair of points encoded with trivial Y
    let beta15 = chr_vals(&z.c15, &[(z.c, 0), (z.u, 5)]);
    let x4 = IndexedSymbol::new(
        z.c5.clone(),
        z.c15.clone(),
        z.c15.clone(),
        vec![beta15],
        BTreeMap::from([(0, zero15), (1, chr_vals(&z.c15, &[(z.c, 3 * chi), (z.u, 10)]))]),
        2,
        true,
    )
    .unwrap();
    vec![(1, x1), (1, x2), (1, x3), (1, x4)]
}

/// The ten symbols of the projectivization class for chi = 1, frozen from
/// the worked example (one A3-character coordinate corrected; see the
/// transcription notes).
fn z5s3_expected(z: &Z5s3) -> BurnsideClass {
    let ct = Subgroup::generated(&z.g, &[z.t]);
    let entries = vec![
        // base locus bookkeeping
        (1, Symbol::new(Subgroup::trivial(&z.g), z.full.clone(), vec![], 2).unwrap()),
        (
            1,
            Symbol::new(ct.clone(), z.c10.clone(), vec![chr_vals(&ct, &[(z.t, 1)])], 2).unwrap(),
        ),
        // the two C5 terms
        (
            1,
            Symbol::new(z.c5.clone(), z.full.clone(), vec![chr_vals(&z.c5, &[(z.c, 1)])], 2)
                .unwrap(),
        ),
        (
            1,
            Symbol::new(z.c5.clone(), z.full.clone(), vec![chr_vals(&z.c5, &[(z.c, 4)])], 2)
                .unwrap(),
        ),
        // C10 points
        (
            1,
            Symbol::new(
                z.c10.clone(),
                z.c10.clone(),
                vec![
                    chr_vals(&z.c10, &[(z.c, 0), (z.t, 5)]),
                    chr_vals(&z.c10, &[(z.c, 2), (z.t, 0)]),
                ],
                2,
            )
            .unwrap(),
        ),
        (
            1,
            Symbol::new(
                z.c10.clone(),
                z.c10.clone(),
                vec![
                    chr_vals(&z.c10, &[(z.c, 0), (z.t, 5)]),
                    chr_vals(&z.c10, &[(z.c, 2), (z.t, 5)]),
                ],
                2,
            )
            .unwrap(),
        ),
        (
            1,
            Symbol::new(
                z.c10.clone(),
                z.c10.clone(),
                vec![
                    chr_vals(&z.c10, &[(z.c, 0), (z.t, 5)]),
                    chr_vals(&z.c10, &[(z.c, 8), (z.t, 0)]),
                ],
                2,
            )
            .unwrap(),
        ),
        (
            1,
            Symbol::new(
                z.c10.clone(),
                z.c10.clone(),
                vec![
                    chr_vals(&z.c10, &[(z.c, 0), (z.t, 5)]),
                    chr_vals(&z.c10, &[(z.c, 8), (z.t, 5)]),
                ],
                2,
            )
            .unwrap(),
        ),
        // C15 points
        (
            1,
            Symbol::new(
                z.c15.clone(),
                z.c15.clone(),
                vec![
                    chr_vals(&z.c15, &[(z.c, 0), (z.u, 5)]),
                    chr_vals(&z.c15, &[(z.c, 3), (z.u, 10)]),
                ],
                2,
            )
            .unwrap(),
        ),
        (
            1,
            Symbol::new(
                z.c15.clone(),
                z.c15.clone(),
                vec![
                    chr_vals(&z.c15, &[(z.c, 0), (z.u, 5)]),
                    chr_vals(&z.c15, &[(z.c, 12), (z.u, 5)]),
                ],
                2,
            )
            .unwrap(),
        ),
    ];
    BurnsideClass::from_terms(&z.g, 2, &entries).unwrap()
}

fn z5s3_prefilter(z: &Z5s3) -> Prefilter {
    Prefilter::new(&z.g, &[(z.c5.clone(), z.full.clone())]).unwrap()
}

#[test]
fn criterion_1_z5s3_projectivization() {
    let guard = CriterionGuard::new("1 (Z5S3 projectivization)");
    let start = Instant::now();
    let z = z5s3_setup();
    let xi = z5s3_xi(&z, 1);
    let class = fibration_class(&z.g, 2, &xi).unwrap();
    let expected = z5s3_expected(&z);
    assert_eq!(class.terms().len(), 10, "ten distinct canonical symbols");
    assert!(class.terms().iter().all(|(_, c)| c == 1));
    assert_eq!(class, expected);
    assert!(start.elapsed().as_secs() < 5, "runtime bound");
    guard.pass();
}

#[test]
fn criterion_2_prefilter_projection() {
    let guard = CriterionGuard::new("2 (prefilter projection)");
    let start = Instant::now();
    let z = z5s3_setup();
    let class = fibration_class(&z.g, 2, &z5s3_xi(&z, 1)).unwrap();
    let projected = class.project(&z5s3_prefilter(&z)).unwrap();
    let expected = BurnsideClass::from_terms(
        &z.g,
        2,
        &[
            (
                1,
                Symbol::new(z.c5.clone(), z.full.clone(), vec![chr_vals(&z.c5, &[(z.c, 1)])], 2)
                    .unwrap(),
            ),
            (
                1,
                Symbol::new(z.c5.clone(), z.full.clone(), vec![chr_vals(&z.c5, &[(z.c, 4)])], 2)
                    .unwrap(),
            ),
        ],
    )
    .unwrap();
    assert_eq!(projected, expected);
    assert!(start.elapsed().as_secs() < 1, "runtime bound");
    guard.pass();
}

/// Verifies a zero/nonzero verdict through its certificate using nothing but
/// row arithmetic.
fn verify_verdict(p: &Presentation, class: &BurnsideClass, expect_zero: bool) {
    let v = p.class_vector(class).unwrap();
    if expect_zero {
        let coeffs = p
            .zero_certificate(class)
            .unwrap()
            .expect("zero class has a membership certificate");
        let rel = p.relations();
        let mut acc = vec![BigInt::zero(); rel.cols()];
        for (i, c) in coeffs.iter().enumerate() {
            for (j, x) in rel.row(i) {
                acc[*j] += c * x;
            }
        }
        assert_eq!(acc, v, "certificate recombines to the class vector");
    } else {
        let (col, modulus) = p
            .nonzero_certificate(class)
            .unwrap()
            .expect("nonzero class has a separating functional");
        let rel = p.relations();
        for i in 0..rel.rows() {
            let dot: BigInt = rel.row(i).iter().map(|(j, x)| x * &col[*j]).sum();
            if modulus.is_zero() {
                assert!(dot.is_zero());
            } else {
                assert!((&dot % &modulus).is_zero());
            }
        }
        let dot: BigInt = v.iter().zip(&col).map(|(a, b)| a * b).sum();
        if modulus.is_zero() {
            assert!(!dot.is_zero());
        } else {
            assert!(!(&dot % &modulus).is_zero());
        }
    }
}

#[test]
fn criterion_3_z5s3_verdicts_against_oracle() {
    let guard = CriterionGuard::new("3 (Z5S3 verdicts vs oracle)");
    let start = Instant::now();
    let z = z5s3_setup();
    let pf = z5s3_prefilter(&z);
    let p = Presentation::build(&z.g, 2, Some(pf.clone()), &Limits::default()).unwrap();

    let mk = |a: u64| {
        Symbol::new(z.c5.clone(), z.full.clone(), vec![chr_vals(&z.c5, &[(z.c, a)])], 2).unwrap()
    };
    let chi1 = BurnsideClass::from_terms(&z.g, 2, &[(1, mk(1)), (1, mk(4))]).unwrap();
    let chi2 = BurnsideClass::from_terms(&z.g, 2, &[(1, mk(2)), (1, mk(3))]).unwrap();

    let chi1_zero = p.class_is_zero(&chi1).unwrap();
    let equal = p.classes_equal(&chi1, &chi2).unwrap();
    verify_verdict(&p, &chi1, chi1_zero);

    // independent reference script: dense relation enumeration + textbook SNF
    let script = concat!(env!("CARGO_MANIFEST_DIR"), "/../../scripts/bc_oracle.py");
    let out = std::process::Command::new("python3")
        .arg(script)
        .output()
        .expect("python3 runs the reference script");
    assert!(out.status.success(), "oracle script failed");
    let text = String::from_utf8(out.stdout).unwrap();
    let report: serde_json_value::Value = serde_json_value::parse(&text);
    let oracle_rank = report.get_num("free_rank");
    let oracle_chi1_zero = report.get_bool("chi1_is_zero");
    let oracle_equal = report.get_bool("chi1_eq_chi2");

    assert_eq!(p.quotient().free_rank as i64, oracle_rank);
    assert!(p.quotient().torsion.is_empty());
    assert_eq!(chi1_zero, oracle_chi1_zero);
    assert_eq!(equal, oracle_equal);

    // The field-aware nonvanishing and distinctness statements do not
    // descend to the prefilter quotient; both classes collapse there.
    println!(
        "note: in BC_2^H(C5xS3) the chi=1 class is {} and the chi=1/chi=2 classes are {}; \
         the field-level claims do not descend to the combinatorial quotient",
        if chi1_zero { "zero" } else { "nonzero" },
        if equal { "equal" } else { "distinct" }
    );
    // same verdicts in the full (unfiltered) group, for the written note
    let full = Presentation::build(&z.g, 2, None, &Limits::default()).unwrap();
    let class = fibration_class(&z.g, 2, &z5s3_xi(&z, 1)).unwrap();
    let class2 = fibration_class(&z.g, 2, &z5s3_xi(&z, 2)).unwrap();
    println!(
        "note: in full BC_2(C5xS3) ({}): chi=1 bundle class zero: {}, chi=1 vs chi=2 equal: {}",
        full.structure_string(),
        full.class_is_zero(&class).unwrap(),
        full.classes_equal(&class, &class2).unwrap()
    );
    assert!(start.elapsed().as_secs() < 10, "runtime bound");
    guard.pass();
}

// minimal JSON reader for the oracle report (flat objects of bools/ints)
mod serde_json_value {
    pub struct Value(pub String);
    pub fn parse(s: &str) -> Value {
        Value(s.to_string())
    }
    impl Value {
        pub fn get_bool(&self, key: &str) -> bool {
            let pat = format!("\"{}\":", key);
            let idx = self.0.find(&pat).expect("key present") + pat.len();
            let tail = self.0[idx..].trim_start();
            tail.starts_with("true")
        }
        pub fn get_num(&self, key: &str) -> i64 {
            let pat = format!("\"{}\":", key);
            let idx = self.0.find(&pat).expect("key present") + pat.len();
            let tail: String = self.0[idx..]
                .trim_start()
                .chars()
                .take_while(|c| c.is_ascii_digit() || *c == '-')
                .collect();
            tail.parse().expect("integer value")
        }
    }
}

#[test]
fn criterion_4_restriction_example() {
    let guard = CriterionGuard::new("4 (D4 to C4 restriction)");
    let start = Instant::now();
    let d4 = d4();
    let r = elem(&d4, &[vec![1, 2, 3, 4]]);
    let c4sub = Subgroup::generated(&d4, &[r]);
    let sym = Symbol::new(
        c4sub.clone(),
        c4sub.clone(),
        vec![chr_vals(&c4sub, &[(r, 1)])],
        1,
    )
    .unwrap();
    let target = RestrictedGroup::of(&c4sub, "C4").unwrap();
    let out = restrict(&BurnsideClass::from_symbol(&sym), &target, &c4sub).unwrap();
    let full = Subgroup::full(&target.group);
    let r_new = target.to_parent.iter().position(|&e| e == r).unwrap() as u32;
    let expected = BurnsideClass::from_terms(
        &target.group,
        1,
        &[
            (
                1,
                Symbol::new(full.clone(), full.clone(), vec![chr_vals(&full, &[(r_new, 1)])], 1)
                    .unwrap(),
            ),
            (
                1,
                Symbol::new(full.clone(), full.clone(), vec![chr_vals(&full, &[(r_new, 3)])], 1)
                    .unwrap(),
            ),
        ],
    )
    .unwrap();
    assert_eq!(out, expected);
    assert!(start.elapsed().as_secs() < 1, "runtime bound");
    guard.pass();
}

#[test]
fn criterion_5_homomorphy_suites() {
    let guard = CriterionGuard::new("5 (homomorphy suites)");
    let start = Instant::now();

    // (a) every relation of BC_2(S4) restricts into the lattice of BC_2(S3)
    let s4 = s4();
    let t4 = elem(&s4, &[vec![1, 2]]);
    let u4 = elem(&s4, &[vec![1, 2, 3]]);
    let s3sub = Subgroup::generated(&s4, &[t4, u4]);
    let target = RestrictedGroup::of(&s3sub, "S3").unwrap();
    let p4 = Presentation::build(&s4, 2, None, &Limits::default()).unwrap();
    let p3 = Presentation::build(&target.group, 2, None, &Limits::default()).unwrap();
    assert!(!p4.relation_rows().is_empty());
    for row in p4.relation_rows() {
        let class = BurnsideClass::from_terms(
            &s4,
            2,
            &row.iter().map(|(s, c)| (c, s.clone())).collect::<Vec<_>>(),
        )
        .unwrap();
        let image = restrict(&class, &target, &s3sub).unwrap();
        assert!(
            p3.class_is_zero(&image).unwrap(),
            "restriction of a relation must be a relation"
        );
    }

    // (b) literal criterion: relations of BC_1(C2) (there are none; every
    // beta is too short for a pair) times generators of BC_1(C2)
    let c2 = c2();
    let p1 = Presentation::build(&c2, 1, None, &Limits::default()).unwrap();
    assert!(p1.relation_rows().is_empty());
    println!("note: BC_1(C2) has no blow-up relations; suite (b) is vacuous as stated");
    // strengthened variant with actual relations: BC_2(C2) relations times
    // BC_1(C2) generators vanish in BC_3(C2 x C2)
    let parts = FiniteGroup::direct_product("C2xC2", &c2, &c2, DEFAULT_MAX_ORDER).unwrap();
    let p2 = Presentation::build(&c2, 2, None, &Limits::default()).unwrap();
    let pp = Presentation::build(&parts.group, 3, None, &Limits::default()).unwrap();
    assert!(!p2.relation_rows().is_empty());
    for row in p2.relation_rows() {
        let class = BurnsideClass::from_terms(
            &c2,
            2,
            &row.iter().map(|(s, c)| (c, s.clone())).collect::<Vec<_>>(),
        )
        .unwrap();
        for gen in p1.generators() {
            let image = product(&class, &BurnsideClass::from_symbol(gen), &parts).unwrap();
            assert!(pp.class_is_zero(&image).unwrap());
        }
    }
    assert!(start.elapsed().as_secs() < 60, "runtime bound");
    guard.pass();
}

/// The two surface classes transcribed from the subgroup data: the shared
/// wheel configuration plus, on the plane side, the orbit of six lines with
/// odd stabilizer.
fn s8_transcription(g: &Arc<FiniteGroup>) -> (BurnsideClass, BurnsideClass, Symbol) {
    let even = elem(g, &[vec![1, 2], vec![3, 4]]);
    let even2 = elem(g, &[vec![1, 3], vec![2, 4]]);
    let odd = elem(g, &[vec![1, 2]]);
    let even_c2 = Subgroup::generated(g, &[even]);
    let even_k4 = Subgroup::generated(g, &[even, even2]);
    let d4_lift = even_c2.centralizer();
    let odd_c2 = Subgroup::generated(g, &[odd]);
    let odd_k4 = odd_c2.centralizer();

    let one_on = |h: &Subgroup, x: u32| chr_vals(h, &[(x, 1)]);

    // wheel of twelve rational curves, common to both models
    let d_lines = Symbol::new(even_c2.clone(), d4_lift.clone(), vec![one_on(&even_c2, even)], 2).unwrap();
    let r_lines = Symbol::new(even_c2.clone(), even_k4.clone(), vec![one_on(&even_c2, even)], 2).unwrap();
    let k4_points = Symbol::new(
        even_k4.clone(),
        even_k4.clone(),
        vec![
            chr_vals(&even_k4, &[(even, 0), (even2, 1)]),
            chr_vals(&even_k4, &[(even, 1), (even2, 0)]),
        ],
        2,
    )
    .unwrap();
    let generic = Symbol::new(Subgroup::trivial(g), Subgroup::full(g), vec![], 2).unwrap();
    let wheel = vec![
        (1, generic),
        (2, d_lines),
        (1, r_lines),
        (2, k4_points),
    ];
    // the plane model additionally carries a G-orbit of six lines with
    // generic stabilizer an odd involution and a nontrivial Z/2-action
    let odd_lines = Symbol::new(odd_c2.clone(), odd_k4.clone(), vec![one_on(&odd_c2, odd)], 2).unwrap();
    let mut plane = wheel.clone();
    plane.push((1, odd_lines.clone()));
    let plane = BurnsideClass::from_terms(g, 2, &plane).unwrap();
    let sextic = BurnsideClass::from_terms(g, 2, &wheel).unwrap();
    (plane, sextic, odd_lines)
}

#[test]
fn criterion_6_s4_difference() {
    let guard = CriterionGuard::new("6 (S4 surface difference)");
    let s4 = s4();
    let (plane, sextic, odd_lines) = s8_transcription(&s4);
    let diff = plane.sub(&sextic).unwrap();
    assert_eq!(diff, BurnsideClass::from_symbol(&odd_lines));

    let p = Presentation::build(&s4, 2, None, &Limits::default()).unwrap();
    let verdict = p.class_is_zero(&diff).unwrap();
    verify_verdict(&p, &diff, verdict);
    println!(
        "note: the difference symbol (odd Z/2, full Z/2 lift, (1)) is {} in BC_2(S4); \
         the field-level nontriviality is not certified at the combinatorial level",
        if verdict { "zero" } else { "nonzero" }
    );
    guard.pass();
}

#[test]
fn criterion_7_linear_algebra_oracles() {
    let guard = CriterionGuard::new("7 (linear algebra oracles)");
    let start = Instant::now();
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);

    // textbook SNF without pivoting, as an in-test reference (arbitrary
    // precision: the naive strategy grows entries explosively)
    fn naive_snf(a0: Vec<Vec<i128>>) -> Vec<i128> {
        use num_integer::Integer;
        let mut a: Vec<Vec<BigInt>> = a0
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let rows = a.len();
        let cols = if rows == 0 { 0 } else { a[0].len() };
        let n = rows.min(cols);
        let mut out = Vec::new();
        let mut t = 0;
        while t < n {
            let mut found = None;
            'search: for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero() {
                        found = Some((i, j));
                        break 'search;
                    }
                }
            }
            let Some((pi, pj)) = found else { break };
            a.swap(t, pi);
            for row in &mut a {
                row.swap(t, pj);
            }
            loop {
                let mut again = false;
                for i in t + 1..rows {
                    while !a[i][t].is_zero() {
                        let q = a[i][t].div_floor(&a[t][t]);
                        for j in 0..cols {
                            let s = &q * &a[t][j];
                            a[i][j] -= s;
                        }
                        if !a[i][t].is_zero() {
                            a.swap(i, t);
                        }
                    }
                }
                for j in t + 1..cols {
                    while !a[t][j].is_zero() {
                        let q = a[t][j].div_floor(&a[t][t]);
                        for i in 0..rows {
                            let s = &q * &a[i][t];
                            a[i][j] -= s;
                        }
                        if !a[t][j].is_zero() {
                            for row in a.iter_mut() {
                                row.swap(j, t);
                            }
                            again = true;
                        }
                    }
                }
                if (t + 1..rows).any(|i| !a[i][t].is_zero()) {
                    again = true;
                }
                if !again {
                    let mut fixed = true;
                    'div: for i in t + 1..rows {
                        for j in t + 1..cols {
                            if !(&a[i][j] % &a[t][t]).is_zero() {
                                for jj in 0..cols {
                                    let s = a[i][jj].clone();
                                    a[t][jj] += s;
                                }
                                fixed = false;
                                break 'div;
                            }
                        }
                    }
                    if fixed {
                        break;
                    }
                }
            }
            let d: BigInt = a[t][t].clone();
            out.push(i128::try_from(if d < BigInt::zero() { -d } else { d }).expect("invariant fits"));
            t += 1;
        }
        out
    }

    fn det_ff(mut m: Vec<Vec<i128>>) -> i128 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        let mut sign = 1i128;
        let mut prev = 1i128;
        for t in 0..n - 1 {
            if m[t][t] == 0 {
                let Some(s) = (t + 1..n).find(|&i| m[i][t] != 0) else {
                    return 0;
                };
                m.swap(t, s);
                sign = -sign;
            }
            for i in t + 1..n {
                for j in t + 1..n {
                    m[i][j] = (m[i][j] * m[t][t] - m[i][t] * m[t][j]) / prev;
                }
            }
            prev = m[t][t];
        }
        sign * m[n - 1][n - 1]
    }

    // 1000 random matrices up to 8x8: invariants match the reference; the
    // U*A*V = D and unimodularity assertions inside snf() never fire.
    for _ in 0..1000 {
        let rows = rng.gen_range(1..=8);
        let cols = rng.gen_range(1..=8);
        let dense: Vec<Vec<i128>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(-10..=10)).collect())
            .collect();
        let a = IntMatrix::from_dense(
            &dense
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect::<Vec<_>>(),
        );
        let s = burnc_core::lattice::snf(&a);
        let got: Vec<i128> = s
            .invariants
            .iter()
            .map(|b| i128::try_from(b).unwrap())
            .collect();
        assert_eq!(got, naive_snf(dense), "SNF reference disagreement");
    }

    // membership on 6x6 full-rank instances against Cramer's rule
    let mut tested = 0;
    while tested < 1000 {
        let n = 6;
        let dense: Vec<Vec<i128>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(-10..=10)).collect())
            .collect();
        let det = det_ff(dense.clone());
        if det == 0 {
            continue;
        }
        tested += 1;
        let a = IntMatrix::from_dense(
            &dense
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect::<Vec<_>>(),
        );
        let q = burnc_core::lattice::quotient_structure(n, &a).unwrap();
        let target: Vec<i128> = (0..n).map(|_| rng.gen_range(-30..=30)).collect();
        // solve x * A = v exactly: x_i = det(A^T with column i replaced) / det
        let mut at = vec![vec![0i128; n]; n];
        for i in 0..n {
            for j in 0..n {
                at[j][i] = dense[i][j];
            }
        }
        let mut integral = true;
        for i in 0..n {
            let mut ai = at.clone();
            for r in 0..n {
                ai[r][i] = target[r];
            }
            if det_ff(ai) % det != 0 {
                integral = false;
                break;
            }
        }
        let v: Vec<BigInt> = target.iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(q.membership(&v).unwrap(), integral, "Cramer disagreement");
    }
    assert!(start.elapsed().as_secs() < 30, "runtime bound");
    guard.pass();
}

#[test]
fn criterion_8_structural_invariants() {
    let guard = CriterionGuard::new("8 (structural invariants)");
    use rand::{Rng, SeedableRng};

    // canonicalization: idempotent and constant on orbits, exhaustively over
    // every valid symbol of S4 in dimension 2
    let s4 = s4();
    let mut symbol_count = 0usize;
    for h in burnc_core::group::all_abelian_subgroups(&s4) {
        let z = h.centralizer();
        let st = AbelianStructure::for_subgroup(&h).unwrap();
        let chars: Vec<Character> = burnc_core::symbols::all_characters(&st)
            .into_iter()
            .filter(|c| !c.is_zero())
            .collect();
        for s in burnc_core::group::intermediate_subgroups(&h, &z).unwrap() {
            let mut betas: Vec<Vec<Character>> = vec![vec![]];
            for a in 0..chars.len() {
                betas.push(vec![chars[a].clone()]);
                for b in a..chars.len() {
                    betas.push(vec![chars[a].clone(), chars[b].clone()]);
                }
            }
            for beta in betas {
                let Ok(sym) = Symbol::new(h.clone(), s.clone(), beta, 2) else {
                    continue;
                };
                symbol_count += 1;
                let canonical = sym.canonicalize();
                assert_eq!(canonical.canonicalize(), canonical, "idempotence");
                for g in 0..s4.order() {
                    assert_eq!(sym.conjugate(g).canonicalize(), canonical, "orbit constancy");
                }
            }
        }
    }
    assert!(symbol_count > 100, "exhaustive sweep covered the symbols");

    // omega composes along chains of index subsets
    let g = c5s3();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4096);
    let mut done = 0;
    while done < 500 {
        let isym = random_indexed(&g, &mut rng, false);
        let index: Vec<usize> = isym.index_set().into_iter().collect();
        let j: BTreeSet<usize> = index.iter().copied().filter(|_| rng.gen_bool(0.6)).collect();
        let jp: BTreeSet<usize> = j.iter().copied().filter(|_| rng.gen_bool(0.6)).collect();
        let direct = isym.omega(&jp).unwrap();
        let via = match isym.omega(&j).unwrap() {
            None => None,
            Some(mid) => mid.omega(&jp).unwrap(),
        };
        assert_eq!(direct, via, "omega composition");
        done += 1;
    }

    // relation (P): shifting all gamma values by a constant character leaves
    // the canonical form unchanged
    let mut done = 0;
    while done < 500 {
        let isym = random_indexed(&g, &mut rng, true);
        let st = AbelianStructure::for_subgroup(isym.hp()).unwrap();
        let chars = burnc_core::symbols::all_characters(&st);
        let shift = &chars[rng.gen_range(0..chars.len())];
        let shifted: BTreeMap<usize, Character> = isym
            .gamma()
            .iter()
            .map(|(&i, c)| (i, c.add(shift).unwrap()))
            .collect();
        let again = IndexedSymbol::new(
            isym.h().clone(),
            isym.hp().clone(),
            isym.sp().clone(),
            isym.beta().to_vec(),
            shifted,
            isym.n(),
            true,
        )
        .unwrap();
        assert_eq!(isym.canonicalize(), again.canonicalize(), "(P)-shift invariance");
        done += 1;
    }
    guard.pass();
}

/// Sampler over valid indexed symbols (mirrors the in-crate test helper).
fn random_indexed(
    group: &Arc<FiniteGroup>,
    rng: &mut rand_chacha::ChaCha8Rng,
    projective: bool,
) -> IndexedSymbol {
    use rand::Rng;
    let abelians = burnc_core::group::all_abelian_subgroups(group);
    loop {
        let hp = abelians[rng.gen_range(0..abelians.len())].clone();
        let Ok(subs) = burnc_core::group::intermediate_subgroups(&Subgroup::trivial(group), &hp)
        else {
            continue;
        };
        let h = subs[rng.gen_range(0..subs.len())].clone();
        let z = hp.centralizer();
        let mids = burnc_core::group::intermediate_subgroups(&hp, &z).unwrap();
        let sp = mids[rng.gen_range(0..mids.len())].clone();
        let stp = AbelianStructure::for_subgroup(&hp).unwrap();
        let all = burnc_core::symbols::all_characters(&stp);
        let ann: Vec<Character> = all
            .iter()
            .filter(|ch| !ch.is_zero() && ch.restrict(&h).unwrap().is_zero())
            .cloned()
            .collect();
        let blen = rng.gen_range(0..=2usize.min(ann.len()));
        let beta: Vec<Character> = (0..blen)
            .map(|_| ann[rng.gen_range(0..ann.len())].clone())
            .collect();
        let stp_order: u64 = hp.order() as u64;
        if burnc_core::symbols::span_order(&stp, &beta) * h.order() as u64 != stp_order {
            continue;
        }
        let isize = rng.gen_range(1..=3usize);
        let indices: BTreeSet<usize> = (0..isize).map(|_| rng.gen_range(0..6)).collect();
        let gamma: BTreeMap<usize, Character> = indices
            .iter()
            .map(|&i| (i, all[rng.gen_range(0..all.len())].clone()))
            .collect();
        let n = (beta.len() + gamma.len() + rng.gen_range(0..2)) as u32;
        if let Ok(out) = IndexedSymbol::new(h, hp, sp, beta, gamma, n, projective) {
            return out;
        }
    }
}
