//! Acceptance suite: one test per acceptance criterion.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use classgraph::constructions::corpus::{corpus, CorpusEntry};
use classgraph::constructions::{build, GroupSpec};
use classgraph::structure::{frobenius_decompose, ComplementType};
use classgraph::{g_classes, FiniteGroup, Permutation};
use classgraph_cli::{run, AuditJson, ReproJson, EXIT_OK};

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["classgraph"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn corpus_groups() -> Vec<CorpusEntry> {
    corpus(700)
}

#[test]
fn example_reproduction() {
    let start = Instant::now();
    let (code, out, _) = cli(&["repro-paper", "--format", "json"]);
    let doc: ReproJson = serde_json::from_str(&out).unwrap();
    let mismatched: Vec<String> = doc
        .rows
        .iter()
        .filter(|r| r.status != "MATCH")
        .map(|r| format!("{}: {} {}", r.id, r.status, r.error.clone().unwrap_or_default()))
        .collect();
    let elapsed = start.elapsed();
    println!("example reproduction: {} rows, {:?}", doc.rows.len(), elapsed);
    assert!(elapsed < Duration::from_secs(60));
    assert!(mismatched.is_empty(), "{mismatched:#?}");
    assert!(doc.all_match);
    assert_eq!(code, EXIT_OK);
}

fn audit_json(jobs: &str) -> (i32, String) {
    let dir = fixtures_dir();
    let (code, out, err) = cli(&[
        "audit",
        "--max-order",
        "700",
        "--jobs",
        jobs,
        "--format",
        "json",
        "--fixtures-dir",
        dir.to_str().unwrap(),
    ]);
    assert!(err.is_empty(), "{err}");
    (code, out)
}

#[test]
fn corpus_audit_has_no_failures() {
    let start = Instant::now();
    let (code, out) = audit_json("4");
    let doc: AuditJson = serde_json::from_str(&out).unwrap();
    println!(
        "corpus audit: {} groups, {} pairs, {:?}",
        doc.groups,
        doc.pairs,
        start.elapsed()
    );
    assert!(start.elapsed() < Duration::from_secs(600));
    assert!(doc.failures.is_empty(), "{:#?}", doc.failures);
    assert!(doc.summary.values().all(|t| t.fail == 0));
    assert_eq!(code, EXIT_OK);
}

/// Vertices are noncentral classes, so equal sizes are distinct adjacent
/// vertices.
fn has_triangle(sizes: &[u64]) -> bool {
    let n = sizes.len();
    let adj = |a: usize, b: usize| classgraph::arith::gcd(sizes[a], sizes[b]) > 1;
    (0..n).any(|i| (i + 1..n).any(|j| (j + 1..n).any(|k| adj(i, j) && adj(j, k) && adj(i, k))))
}

#[test]
fn triangle_free_ordinary_graphs_are_the_four_small_groups() {
    let mut seen = BTreeSet::new();
    for entry in corpus_groups() {
        let g = &entry.group;
        let sizes: Vec<u64> = g_classes(g, &g.whole())
            .unwrap()
            .iter()
            .map(|c| c.size as u64)
            .filter(|&s| s > 1)
            .collect();
        if sizes.is_empty() || has_triangle(&sizes) {
            continue;
        }
        assert!([6, 10, 12, 21].contains(&g.order()), "{} of order {}", entry.provenance, g.order());
        assert!(!g.is_abelian(), "{}", entry.provenance);
        seen.insert(g.order());
    }
    println!("triangle-free ordinary graphs at orders {seen:?}");
    assert_eq!(seen, BTreeSet::from([6, 10, 12, 21]));
}

/// Conjugacy classes of `G` by brute force over permutations.
fn oracle_partition(g: &FiniteGroup) -> Vec<BTreeSet<Vec<u32>>> {
    let all = g.elements();
    let inverses: Vec<Permutation> = all.iter().map(|x| x.inverse()).collect();
    let mut left: BTreeSet<Vec<u32>> = all.iter().map(|x| x.images().to_vec()).collect();
    let mut classes = Vec::new();
    while let Some(first) = left.iter().next().cloned() {
        let x = Permutation::from_images(first).unwrap();
        let orbit: BTreeSet<Vec<u32>> = all
            .iter()
            .zip(&inverses)
            .map(|(g, gi)| gi.then(&x).then(g).images().to_vec())
            .collect();
        for y in &orbit {
            left.remove(y);
        }
        classes.push(orbit);
    }
    classes
}

fn oracle_groups() -> Vec<CorpusEntry> {
    let mut groups = corpus_groups();
    for name in classgraph::constructions::catalog::FIXTURE_NAMES {
        let built = build(&GroupSpec::Embedded { name: name.into() }).unwrap();
        groups.push(CorpusEntry {
            provenance: format!("fixture:{name}"),
            group: built.group,
        });
    }
    groups.retain(|e| e.group.order() <= 2000);
    groups
}

#[test]
fn class_computation_matches_brute_force() {
    let mut pairs = 0;
    for entry in oracle_groups() {
        let g = &entry.group;
        let oracle = oracle_partition(g);
        for n in g.normal_subgroups() {
            let members: BTreeSet<Vec<u32>> = n
                .elements()
                .iter()
                .map(|&i| g.element(i).images().to_vec())
                .collect();
            let expected: BTreeSet<BTreeSet<Vec<u32>>> = oracle
                .iter()
                .filter(|c| c.iter().next().is_some_and(|x| members.contains(x)))
                .cloned()
                .collect();
            let got: BTreeSet<BTreeSet<Vec<u32>>> = g_classes(g, n)
                .unwrap()
                .iter()
                .map(|c| c.members.ones().map(|i| g.element(i).images().to_vec()).collect())
                .collect();
            assert_eq!(got, expected, "{} with N of order {}", entry.provenance, n.order());
            pairs += 1;
        }
    }
    println!("class oracle: {pairs} pairs agree");
}

#[test]
fn orbit_stabilizer_and_class_equation() {
    let mut classes_checked = 0;
    for entry in oracle_groups() {
        let g = &entry.group;
        let all = g.elements();
        for n in g.normal_subgroups() {
            let classes = g_classes(g, n).unwrap();
            let total: usize = classes.iter().map(|c| c.size).sum();
            assert_eq!(total, n.order(), "{}", entry.provenance);
            for c in &classes {
                let x = g.element(c.representative);
                let centralizer = all.iter().filter(|y| x.then(y) == y.then(x)).count();
                assert_eq!(c.size * centralizer, g.order(), "{}", entry.provenance);
                classes_checked += 1;
            }
        }
    }
    println!("orbit-stabilizer: {classes_checked} classes");
}

/// Nilpotent iff every Sylow subgroup is normal, i.e. unique: the number of
/// `p`-elements equals the `p`-part of the order.
fn nilpotent_by_counting(elements: &[Permutation]) -> bool {
    let order = elements.len() as u64;
    classgraph::arith::prime_divisors(order).into_iter().all(|p| {
        let p_elements = elements
            .iter()
            .filter(|x| x.order() == 1 || classgraph::arith::prime_power_base(x.order()) == Some(p))
            .count() as u64;
        p_elements == classgraph::arith::p_part(order, p)
    })
}

#[test]
fn frobenius_decompositions_verify() {
    let mut verified = 0;
    for entry in oracle_groups() {
        let g = &entry.group;
        for n in g.normal_subgroups() {
            let ng = g.subgroup_as_group(n).unwrap();
            let Some(d) = frobenius_decompose(&ng) else {
                continue;
            };
            let kernel: Vec<Permutation> = d.kernel.elements().iter().map(|&i| ng.element(i).clone()).collect();
            let complement: Vec<Permutation> =
                d.complement.elements().iter().map(|&i| ng.element(i).clone()).collect();
            assert_eq!(kernel.len() * complement.len(), ng.order(), "{}", entry.provenance);
            // complement acts fixed-point-freely on the kernel
            for h in complement.iter().filter(|h| !h.is_identity()) {
                for k in kernel.iter().filter(|k| !k.is_identity()) {
                    assert_ne!(&k.conjugate_by(h), k, "{}: fixed point", entry.provenance);
                }
            }
            // kernel is normal in N
            let kernel_set: BTreeSet<&[u32]> = kernel.iter().map(|k| k.images()).collect();
            for x in ng.elements() {
                for k in &kernel {
                    assert!(kernel_set.contains(k.conjugate_by(x).images()));
                }
            }
            assert!(nilpotent_by_counting(&kernel), "{}: kernel not nilpotent", entry.provenance);
            verified += 1;
        }
    }
    println!("frobenius: {verified} decompositions verified");
    assert!(verified > 0);

    let ex12 = build(&GroupSpec::Example { id: "ex12".into() }).unwrap();
    let n = ex12.normal("N").unwrap();
    let ng = ex12.group.subgroup_as_group(n).unwrap();
    let d = frobenius_decompose(&ng).unwrap();
    assert_eq!(d.complement_type, ComplementType::Quaternion8);
    let q: Vec<&Permutation> = d.complement.elements().iter().map(|&i| ng.element(i)).collect();
    let involutions = q.iter().filter(|x| x.order() == 2).count();
    let noncommuting = q.iter().any(|a| q.iter().any(|b| a.then(b) != b.then(a)));
    assert_eq!((q.len(), involutions, noncommuting), (8, 1, true));
}

#[test]
fn parallel_audit_is_deterministic() {
    let (c1, one) = audit_json("1");
    let (c8, eight) = audit_json("8");
    assert_eq!(c1, c8);
    assert!(one == eight, "reports differ between --jobs 1 and --jobs 8");
    assert_eq!(classgraph_cli::reserialize(&one).unwrap(), one);
}
