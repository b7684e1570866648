use std::collections::BTreeMap;
use std::sync::OnceLock;

use proptest::prelude::*;

use classgraph::arith::gcd;
use classgraph::constructions::{build, GroupSpec};
use classgraph::theorems::{audit_all, AuditReport, Verdict};
use classgraph::{build_gamma, g_classes, FiniteGroup, Permutation};

const SPECS: &[&str] = &[
    "symmetric:3",
    "symmetric:4",
    "alternating:4",
    "alternating:5",
    "dihedral:8",
    "quaternion:8",
    "dihedral:10",
    "dicyclic:12",
    "frobenius:7:3",
    "sl23",
    "gl23",
    "extraspecial:3",
    "symmetric:3*cyclic:3",
    "quaternion:8*cyclic:2",
    "alternating:4*cyclic:2",
    "agl:3:1",
    "example:ex6",
];

fn groups() -> &'static Vec<FiniteGroup> {
    static GROUPS: OnceLock<Vec<FiniteGroup>> = OnceLock::new();
    GROUPS.get_or_init(|| {
        SPECS
            .iter()
            .map(|s| build(&GroupSpec::parse(s).unwrap()).unwrap().group)
            .collect()
    })
}

fn relabeling(degree: usize, keys: &[u32]) -> Permutation {
    let mut points: Vec<u32> = (0..degree as u32).collect();
    points.sort_by_key(|&i| (keys[i as usize], i));
    Permutation::from_images(points).unwrap()
}

/// Sorted `(order of N, class sizes)` over the normal lattice.
fn lattice_signature(g: &FiniteGroup) -> Vec<(usize, Vec<usize>)> {
    let mut out: Vec<(usize, Vec<usize>)> = g
        .normal_subgroups()
        .iter()
        .map(|n| {
            let mut sizes: Vec<usize> = g_classes(g, n).unwrap().iter().map(|c| c.size).collect();
            sizes.sort_unstable();
            (n.order(), sizes)
        })
        .collect();
    out.sort();
    out
}

type VerdictSignature = Vec<(usize, Vec<u64>, Vec<(String, Verdict, Option<String>)>)>;

fn verdict_signature(reports: &[AuditReport]) -> VerdictSignature {
    let mut out: VerdictSignature = reports
        .iter()
        .map(|r| {
            let checks = r
                .checks
                .iter()
                .map(|c| (c.theorem.clone(), c.verdict, c.case.clone()))
                .collect();
            (r.n_order, r.class_sizes.clone(), checks)
        })
        .collect();
    out.sort();
    out
}

fn group_strategy() -> impl Strategy<Value = usize> {
    0..SPECS.len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn class_sizes_survive_relabeling(i in group_strategy(), keys in prop::collection::vec(any::<u32>(), 64)) {
        let g = &groups()[i];
        let h = g.relabeled(&relabeling(g.degree(), &keys)).unwrap();
        prop_assert_eq!(h.order(), g.order());
        prop_assert_eq!(lattice_signature(&h), lattice_signature(g));
    }

    #[test]
    fn audit_verdicts_survive_relabeling(i in group_strategy(), keys in prop::collection::vec(any::<u32>(), 64)) {
        let g = &groups()[i];
        let h = g.relabeled(&relabeling(g.degree(), &keys)).unwrap();
        let a = verdict_signature(&audit_all(g, "g").unwrap());
        let b = verdict_signature(&audit_all(&h, "h").unwrap());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn orbit_stabilizer(i in group_strategy()) {
        let g = &groups()[i];
        for n in g.normal_subgroups() {
            for c in g_classes(g, n).unwrap() {
                let stabilizer = g.centralizer_of(c.representative).order();
                prop_assert_eq!(c.size * stabilizer, g.order());
            }
        }
    }

    #[test]
    fn classes_partition_n(i in group_strategy()) {
        let g = &groups()[i];
        for n in g.normal_subgroups() {
            let classes = g_classes(g, n).unwrap();
            let mut seen = vec![0u32; g.order()];
            for c in &classes {
                prop_assert_eq!(c.members.count_ones(..), c.size);
                for x in c.members.ones() {
                    prop_assert!(n.contains(x));
                    seen[x] += 1;
                }
            }
            for x in 0..g.order() {
                prop_assert_eq!(seen[x], u32::from(n.contains(x)));
            }
        }
    }

    #[test]
    fn lagrange(i in group_strategy(), picks in prop::collection::vec(any::<prop::sample::Index>(), 1..4)) {
        let g = &groups()[i];
        let elems: Vec<usize> = picks.iter().map(|p| p.index(g.order())).collect();
        let h = g.subgroup_generated(&elems);
        prop_assert_eq!(g.order() % h.order(), 0);
        for &x in &elems {
            prop_assert!(h.contains(x));
            prop_assert_eq!(g.order() as u64 % g.order_of(x), 0);
        }
    }

    #[test]
    fn graph_edges_are_shared_prime_divisors(i in group_strategy()) {
        let g = &groups()[i];
        for n in g.normal_subgroups() {
            let graph = build_gamma(g, n).unwrap();
            let noncentral = graph.class_sizes.iter().filter(|&&s| s > 1).count();
            prop_assert_eq!(graph.vertex_count(), noncentral);
            for (a, va) in graph.vertices.iter().enumerate() {
                for (b, vb) in graph.vertices.iter().enumerate() {
                    if a != b {
                        prop_assert_eq!(graph.adjacency[a][b], gcd(va.size, vb.size) > 1);
                    }
                }
            }
        }
    }
}

#[test]
fn construction_is_deterministic() {
    for spec in SPECS {
        let spec = GroupSpec::parse(spec).unwrap();
        let a = build(&spec).unwrap().group;
        let b = build(&spec).unwrap().group;
        assert_eq!(a.elements(), b.elements());
        let sa: BTreeMap<usize, Vec<usize>> = a
            .normal_subgroups()
            .iter()
            .map(|n| (n.order(), n.elements()))
            .collect();
        let sb: BTreeMap<usize, Vec<usize>> = b
            .normal_subgroups()
            .iter()
            .map(|n| (n.order(), n.elements()))
            .collect();
        assert_eq!(sa, sb);
        let ra = serde_json::to_string(&audit_all(&a, "x").unwrap()).unwrap();
        let rb = serde_json::to_string(&audit_all(&b, "x").unwrap()).unwrap();
        assert_eq!(ra, rb);
    }
}

#[test]
fn no_corpus_pair_fails() {
    let mut failures = Vec::new();
    for entry in classgraph::constructions::corpus(200) {
        for r in audit_all(&entry.group, &entry.provenance).unwrap() {
            for c in &r.checks {
                if c.verdict == Verdict::Fail {
                    failures.push(format!("{} / {}: {}", r.group_name, r.n_description, c.theorem));
                }
            }
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}
