use classgraph::constructions::catalog::ex8_2_spec;
use classgraph::constructions::corpus::corpus;
use classgraph::constructions::families::semidirect;
use classgraph::constructions::{build, BuiltGroup, GroupSpec};
use classgraph::theorems::{audit_all, audit_pair, ids, AuditReport, Verdict};
use classgraph::{g_classes, FiniteGroup, ShapeTag, Subgroup};

fn built(spec: &str) -> BuiltGroup {
    build(&GroupSpec::parse(spec).unwrap()).unwrap()
}

fn of_order(g: &FiniteGroup, order: usize) -> Subgroup {
    let found: Vec<&Subgroup> = g.normal_subgroups().iter().filter(|n| n.order() == order).collect();
    assert_eq!(found.len(), 1, "expected a unique normal subgroup of order {order}");
    found[0].clone()
}

fn audit(spec: &str, order: usize) -> AuditReport {
    let b = built(spec);
    let n = of_order(&b.group, order);
    audit_pair(&b.group, &n, spec, "N").unwrap()
}

fn audit_named(spec: &str) -> AuditReport {
    let b = built(spec);
    let n = b.normal("N").unwrap().clone();
    audit_pair(&b.group, &n, spec, "N").unwrap()
}

fn expect(report: &AuditReport, id: &str, verdict: Verdict, case: Option<&str>) {
    let c = report.check(id).unwrap_or_else(|| panic!("{id} missing"));
    assert_eq!(c.verdict, verdict, "{id}: {c:?}");
    if let Some(case) = case {
        assert_eq!(c.case.as_deref(), Some(case), "{id}: {c:?}");
    }
}

#[test]
fn gl23_on_sl23_is_a_triangle_of_central_product_type() {
    let r = audit("gl23", 24);
    assert_eq!(r.class_sizes, vec![1, 1, 6, 8, 8]);
    assert_eq!(r.shape.tag, ShapeTag::Triangle);
    expect(&r, ids::SINGLE_TRIANGLE, Verdict::Pass, Some("4"));
}

#[test]
fn s5_on_a5_is_the_simple_triangle_case() {
    let r = audit("symmetric:5", 60);
    assert_eq!(r.class_sizes, vec![1, 15, 20, 24]);
    expect(&r, ids::SINGLE_TRIANGLE, Verdict::Pass, Some("6"));
    expect(&r, ids::TRIANGLE_FREE, Verdict::NotApplicable, None);
}

#[test]
fn a5_alone_has_triangles() {
    let r = audit("alternating:5", 60);
    assert_eq!(r.class_sizes, vec![1, 12, 12, 15, 20]);
    expect(&r, ids::TRIANGLE_FREE, Verdict::NotApplicable, None);
    expect(&r, ids::SINGLE_TRIANGLE, Verdict::NotApplicable, None);
    expect(&r, ids::ORDINARY_SINGLE_TRIANGLE, Verdict::NotApplicable, None);
}

#[test]
fn frobenius_with_quaternion_complement_is_a_line() {
    let r = audit_named("example:ex12");
    assert_eq!(r.class_sizes, vec![1, 24, 25, 150]);
    assert_eq!(r.shape.tag, ShapeTag::ThreeLine);
    expect(&r, ids::THREE_LINE, Verdict::Pass, Some("3"));
    let notes = r.check(ids::FROBENIUS_VERIFIED).unwrap().notes.join(" ");
    assert!(notes.contains("Quaternion8"), "{notes}");
    expect(&r, ids::FROBENIUS_VERIFIED, Verdict::Pass, None);
}

#[test]
fn elementary_factor_line() {
    let r = audit_named("example:ex11");
    assert_eq!(r.class_sizes, vec![1, 2, 7, 14]);
    assert_eq!(r.center_meet_order, 1);
    expect(&r, ids::THREE_LINE, Verdict::Pass, Some("2"));
    expect(&r, ids::TRIANGLE_FREE, Verdict::Pass, Some("3"));
}

#[test]
fn quaternion_in_sl23_is_one_vertex() {
    let r = audit("sl23", 8);
    assert_eq!(r.class_sizes, vec![1, 1, 6]);
    expect(&r, ids::ONE_VERTEX, Verdict::Pass, None);
}

#[test]
fn two_joined_cases() {
    let r = audit_named("example:ex4");
    assert_eq!(r.class_sizes, vec![1, 1, 8, 8]);
    expect(&r, ids::TWO_JOINED, Verdict::Pass, Some("2"));

    let r = audit_named("example:ex6");
    assert_eq!(r.class_sizes, vec![1, 24, 50]);
    expect(&r, ids::TWO_JOINED, Verdict::Pass, Some("3"));
}

#[test]
fn two_isolated_classes() {
    let r = audit("symmetric:4", 12);
    assert_eq!(r.class_sizes, vec![1, 3, 8]);
    assert_eq!(r.shape.tag, ShapeTag::TwoIsolated);
    expect(&r, ids::TWO_ISOLATED_CENTER, Verdict::Pass, None);
    expect(&r, ids::TWO_ISOLATED, Verdict::Pass, Some("frobenius"));
    expect(&r, ids::DISCONNECTED_STRUCTURE, Verdict::Pass, None);
}

#[test]
fn ordinary_graph_checks() {
    let q8 = built("quaternion:8");
    let r = audit_pair(&q8.group, &q8.group.whole(), "Q8", "G").unwrap();
    expect(&r, ids::ORDINARY_SINGLE_TRIANGLE, Verdict::Pass, Some("Q8"));

    let s3 = built("symmetric:3");
    let r = audit_pair(&s3.group, &s3.group.whole(), "S3", "G").unwrap();
    expect(&r, ids::ORDINARY_TRIANGLE_FREE, Verdict::Pass, None);
    assert!(r.distinct_class_sizes);

    let z12 = built("cyclic:12");
    let r = audit_pair(&z12.group, &z12.group.whole(), "Z12", "G").unwrap();
    assert_eq!(r.shape.tag, ShapeTag::Empty);
    assert!(r.checks.iter().all(|c| c.verdict == Verdict::NotApplicable));
}

#[test]
fn audit_all_covers_the_normal_lattice() {
    let s4 = built("symmetric:4");
    let orders: Vec<usize> = audit_all(&s4.group, "S4").unwrap().iter().map(|r| r.n_order).collect();
    assert_eq!(orders, vec![4, 12, 24]);

    let a5 = built("alternating:5");
    let reports = audit_all(&a5.group, "A5").unwrap();
    assert_eq!(reports.len(), 1);
    assert!(reports[0].check(ids::ORDINARY_TRIANGLE_FREE).is_some());

    let g = built("sl23*cyclic:2");
    let reports = audit_all(&g.group, "SL(2,3) x Z2").unwrap();
    assert!(reports
        .iter()
        .any(|r| r.n_order == 16 && r.shape.tag == ShapeTag::TwoEdge));
}

#[test]
fn every_check_appears_once_per_pair() {
    let g = built("gl23");
    for r in audit_all(&g.group, "GL(2,3)").unwrap() {
        let names: Vec<&str> = r.checks.iter().map(|c| c.theorem.as_str()).collect();
        let mut expected: Vec<&str> = ids::PAIR_CHECKS.to_vec();
        if r.n_order == r.group_order {
            expected.extend(ids::ORDINARY_CHECKS);
        }
        assert_eq!(names, expected);
    }
}

#[test]
fn triangle_free_ordinary_graph_list() {
    for entry in corpus(700) {
        let g = &entry.group;
        let classes = g_classes(g, &g.whole()).unwrap();
        let r = audit_pair(g, &g.whole(), &entry.provenance, "G").unwrap();
        if r.shape.vertices > 0 && r.shape.triangles == 0 {
            assert!([6, 10, 12, 21].contains(&g.order()), "{}", entry.provenance);
            assert!(!g.is_abelian());
            assert!(classes.len() > 1);
        }
    }
}

#[test]
fn report_json_round_trips() {
    let r = audit("gl23", 24);
    assert!(!r.has_failure());
    let json = serde_json::to_string(&r).unwrap();
    let back: AuditReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, r);
    assert_eq!(serde_json::to_string(&back).unwrap(), json);
}

/// The second catalogue case as literally stated, with an acting group of
/// order 6 only, gives a graph with two equal-sized classes.
#[test]
fn literal_metacyclic_case_is_not_a_line() {
    let z21 = built("cyclic:7*cyclic:3");
    let z6 = built("cyclic:6");
    // Z6 acts on Z7 by the cube map (an automorphism of order 6) and inverts Z3
    let g = z21.group;
    let inv = |x: usize| g.inv(x);
    let a = g.generator_indices()[0];
    let b = g.generator_indices()[1];
    let images = vec![g.pow(a, 3), inv(b)];
    let (big, n) = semidirect(&g, &z6.group, &[images]).unwrap();
    assert_eq!(big.order(), 126);
    let mut sizes: Vec<u64> = g_classes(&big, &n).unwrap().iter().map(|c| c.size as u64).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![1, 2, 6, 6, 6]);

    let corrected = build(&ex8_2_spec()).unwrap();
    let n = corrected.normal("N").unwrap();
    let mut sizes: Vec<u64> = g_classes(&corrected.group, n).unwrap().iter().map(|c| c.size as u64).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![1, 2, 6, 12]);
}

#[test]
fn semidirect_kernel_is_normal_with_the_right_quotient() {
    let b = build(&ex8_2_spec()).unwrap();
    let n = b.normal("N").unwrap();
    assert!(b.group.is_normal(n));
    assert_eq!(n.order(), 21);
    let q = b.group.quotient(n).unwrap();
    assert_eq!(q.group.order(), 12);
    assert!(q.group.is_abelian());
}

#[test]
fn unreachable_metacyclic_case_fails_to_build() {
    let err = build(&GroupSpec::Example { id: "ex8.5".into() });
    assert!(err.is_err());
}
