//! Brute-force oracles computed straight from permutations, without the
//! element table, normal-subgroup lattice or class machinery of the crate.

use std::collections::{BTreeSet, HashSet};

use classgraph::constructions::corpus;
use classgraph::{g_classes, FiniteGroup, Permutation};

fn closure(gens: &[Permutation], degree: usize) -> Vec<Permutation> {
    let mut seen: HashSet<Permutation> = HashSet::new();
    let id = Permutation::identity(degree);
    seen.insert(id.clone());
    let mut stack = vec![id];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    let mut out: Vec<Permutation> = seen.into_iter().collect();
    out.sort_by(|a, b| a.images().cmp(b.images()));
    out
}

/// Sorted sizes of the orbits of `elements` under conjugation by `all`.
fn oracle_class_sizes(all: &[Permutation], n: &[Permutation]) -> Vec<usize> {
    let mut left: BTreeSet<Vec<u32>> = n.iter().map(|x| x.images().to_vec()).collect();
    let mut sizes = Vec::new();
    while let Some(first) = left.iter().next().cloned() {
        let x = Permutation::from_images(first).unwrap();
        let orbit: BTreeSet<Vec<u32>> = all
            .iter()
            .map(|g| g.inverse().then(&x).then(g).images().to_vec())
            .collect();
        for y in &orbit {
            assert!(left.remove(y), "conjugate left N");
        }
        sizes.push(orbit.len());
    }
    sizes.sort_unstable();
    sizes
}

/// Every normal subgroup is a join of normal closures of single elements.
fn oracle_normal_orders(all: &[Permutation], degree: usize) -> Vec<usize> {
    let normal_closure = |gens: Vec<Permutation>| -> BTreeSet<Vec<u32>> {
        let conjugates: Vec<Permutation> = gens
            .iter()
            .flat_map(|x| all.iter().map(move |g| g.inverse().then(x).then(g)))
            .collect();
        closure(&conjugates, degree)
            .into_iter()
            .map(|p| p.images().to_vec())
            .collect()
    };
    let mut found: BTreeSet<BTreeSet<Vec<u32>>> = BTreeSet::new();
    let singles: Vec<BTreeSet<Vec<u32>>> = all.iter().map(|x| normal_closure(vec![x.clone()])).collect();
    found.extend(singles.iter().cloned());
    loop {
        let current: Vec<BTreeSet<Vec<u32>>> = found.iter().cloned().collect();
        let mut grew = false;
        for a in &current {
            for b in &singles {
                let gens: Vec<Permutation> = a
                    .iter()
                    .chain(b.iter())
                    .map(|v| Permutation::from_images(v.clone()).unwrap())
                    .collect();
                let join = closure(&gens, degree)
                    .into_iter()
                    .map(|p| p.images().to_vec())
                    .collect();
                grew |= found.insert(join);
            }
        }
        if !grew {
            break;
        }
    }
    let mut orders: Vec<usize> = found.iter().map(|s| s.len()).collect();
    orders.sort_unstable();
    orders
}

fn small_groups(max: usize) -> Vec<(String, FiniteGroup)> {
    corpus::corpus(max)
        .into_iter()
        .map(|e| (e.provenance, e.group))
        .collect()
}

#[test]
fn g_classes_match_all_pairs_conjugation() {
    for (name, g) in small_groups(72) {
        let all = g.elements().to_vec();
        for n in g.normal_subgroups() {
            let members: Vec<Permutation> = n.elements().iter().map(|&i| g.element(i).clone()).collect();
            let expected = oracle_class_sizes(&all, &members);
            let mut got: Vec<usize> = g_classes(&g, n).unwrap().iter().map(|c| c.size).collect();
            got.sort_unstable();
            assert_eq!(got, expected, "{name}, N of order {}", n.order());
        }
    }
}

#[test]
fn enumeration_matches_closure() {
    for (name, g) in small_groups(120) {
        let elems = closure(g.generators(), g.degree());
        assert_eq!(elems.len(), g.order(), "{name}");
        for e in &elems {
            assert!(g.index_of(e).is_some(), "{name}");
        }
    }
}

#[test]
fn normal_lattice_matches_join_closure() {
    for (name, g) in small_groups(48) {
        let expected = oracle_normal_orders(g.elements(), g.degree());
        let mut got: Vec<usize> = g.normal_subgroups().iter().map(|n| n.order()).collect();
        got.sort_unstable();
        assert_eq!(got, expected, "{name}");
    }
}

#[test]
fn center_and_derived_subgroup_match_definitions() {
    for (name, g) in small_groups(60) {
        let all = g.elements();
        let center = all
            .iter()
            .filter(|x| all.iter().all(|y| x.then(y) == y.then(x)))
            .count();
        assert_eq!(g.center().order(), center, "{name}");
        let commutators: Vec<Permutation> = all
            .iter()
            .flat_map(|x| {
                all.iter()
                    .map(move |y| x.inverse().then(&y.inverse()).then(x).then(y))
            })
            .collect();
        assert_eq!(
            g.derived_subgroup().order(),
            closure(&commutators, g.degree()).len(),
            "{name}"
        );
    }
}
