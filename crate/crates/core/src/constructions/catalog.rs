//! Worked examples with their expected class-size multisets, and the
//! fixtures shipped with the library.

use std::fmt;

use crate::error::{GroupError, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::perm::Permutation;

use super::families::{self, word};
use super::field::{all_matrices, determinant, mat_mul, Matrix};
use super::{build, BuiltGroup, GroupSpec};

/// How an entry picks its normal subgroup from the group's normal lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalSelector {
    Whole,
    /// A subgroup the builder names.
    Named(String),
    /// First normal subgroup of this order.
    Order(usize),
    /// First normal subgroup of this order meeting the centre trivially.
    OrderCenterFree(usize),
    Fitting,
}

impl NormalSelector {
    pub fn resolve(&self, built: &BuiltGroup) -> Option<Subgroup> {
        let g = &built.group;
        match self {
            NormalSelector::Whole => Some(g.whole()),
            NormalSelector::Named(name) => built.normal(name).cloned(),
            NormalSelector::Order(k) => g.normal_subgroups().iter().find(|n| n.order() == *k).cloned(),
            NormalSelector::OrderCenterFree(k) => {
                let z = g.center();
                g.normal_subgroups()
                    .iter()
                    .find(|n| {
                        n.order() == *k
                            && g.intersection(n, &z).map(|i| i.is_trivial()).unwrap_or(false)
                    })
                    .cloned()
            }
            NormalSelector::Fitting => Some(g.fitting_subgroup()),
        }
    }
}

impl std::str::FromStr for NormalSelector {
    type Err = GroupError;

    /// Parses `whole`, `fitting`, `name:N`, `order:k` and `order:k,center-free`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || GroupError::InvalidSpec(format!("unknown normal-subgroup selector '{s}'"));
        match s {
            "whole" => return Ok(NormalSelector::Whole),
            "fitting" => return Ok(NormalSelector::Fitting),
            _ => {}
        }
        if let Some(name) = s.strip_prefix("name:") {
            return Ok(NormalSelector::Named(name.to_string()));
        }
        let rest = s.strip_prefix("order:").ok_or_else(bad)?;
        let (k, center_free) = match rest.strip_suffix(",center-free") {
            Some(k) => (k, true),
            None => (rest, false),
        };
        let k: usize = k.parse().map_err(|_| bad())?;
        Ok(if center_free {
            NormalSelector::OrderCenterFree(k)
        } else {
            NormalSelector::Order(k)
        })
    }
}

impl fmt::Display for NormalSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalSelector::Whole => write!(f, "whole"),
            NormalSelector::Named(n) => write!(f, "name:{n}"),
            NormalSelector::Order(k) => write!(f, "order:{k}"),
            NormalSelector::OrderCenterFree(k) => write!(f, "order:{k},center-free"),
            NormalSelector::Fitting => write!(f, "fitting"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub description: &'static str,
    pub spec: GroupSpec,
    pub normal: NormalSelector,
    /// Sorted class-size multiset of `N` under `G`.
    pub expected: Vec<u64>,
}

const SG_324_8: &str = include_str!("../../../../fixtures/sg_324_8.json");
const SG_600_150: &str = include_str!("../../../../fixtures/sg_600_150.json");
const SG_672_1258: &str = include_str!("../../../../fixtures/sg_672_1258.json");

pub fn embedded_fixture(name: &str) -> Option<&'static str> {
    match name {
        "sg_324_8" => Some(SG_324_8),
        "sg_600_150" => Some(SG_600_150),
        "sg_672_1258" => Some(SG_672_1258),
        _ => None,
    }
}

pub const FIXTURE_NAMES: [&str; 3] = ["sg_324_8", "sg_600_150", "sg_672_1258"];

fn sizes(v: &[(u64, usize)]) -> Vec<u64> {
    let mut out: Vec<u64> = v.iter().flat_map(|&(s, k)| std::iter::repeat(s).take(k)).collect();
    out.sort_unstable();
    out
}

fn product(a: GroupSpec, b: GroupSpec) -> GroupSpec {
    GroupSpec::DirectProduct {
        left: Box::new(a),
        right: Box::new(b),
    }
}

/// Semidirect spec from action images given as generator words of `normal`.
fn semidirect_spec(
    normal: GroupSpec,
    acting: GroupSpec,
    images: &[Vec<Vec<(usize, u64)>>],
) -> GroupSpec {
    let n = build(&normal).expect("catalog normal factor builds").group;
    let action = images
        .iter()
        .map(|per_gen| {
            per_gen
                .iter()
                .map(|w| n.element(word(&n, w)).images().to_vec())
                .collect()
        })
        .collect();
    GroupSpec::Semidirect {
        normal: Box::new(normal),
        acting: Box::new(acting),
        action,
    }
}

/// `(Z7 × Z3) ⋊ (Z6 × Z2)`: `Z6` acts faithfully on `Z7` and trivially on
/// `Z3`, `Z2` inverts `Z3` and centralizes `Z7`.
pub fn ex8_2_spec() -> GroupSpec {
    semidirect_spec(
        product(GroupSpec::Cyclic { n: 7 }, GroupSpec::Cyclic { n: 3 }),
        product(GroupSpec::Cyclic { n: 6 }, GroupSpec::Cyclic { n: 2 }),
        &[
            vec![vec![(0, 3)], vec![(1, 1)]],
            vec![vec![(0, 1)], vec![(1, 2)]],
        ],
    )
}

/// `(Z2³ × Z3) ⋊ (Z7 × Z2)`: `Z7` acts irreducibly on `Z2³`, `Z2` inverts `Z3`.
pub fn ex11_spec() -> GroupSpec {
    semidirect_spec(
        product(
            GroupSpec::ElementaryAbelian { p: 2, k: 3 },
            GroupSpec::Cyclic { n: 3 },
        ),
        product(GroupSpec::Cyclic { n: 7 }, GroupSpec::Cyclic { n: 2 }),
        &[
            vec![vec![(1, 1)], vec![(2, 1)], vec![(0, 1), (1, 1)], vec![(3, 1)]],
            vec![vec![(0, 1)], vec![(1, 1)], vec![(2, 1)], vec![(3, 2)]],
        ],
    )
}

pub fn example_catalog() -> Vec<CatalogEntry> {
    use GroupSpec::*;
    let named = || NormalSelector::Named("N".into());
    vec![
        CatalogEntry {
            id: "ex1",
            description: "SL(2,3) on Q8",
            spec: Sl23,
            normal: NormalSelector::Fitting,
            expected: sizes(&[(1, 2), (6, 1)]),
        },
        CatalogEntry {
            id: "ex2",
            description: "S4 on A4",
            spec: Symmetric { n: 4 },
            normal: NormalSelector::Order(12),
            expected: sizes(&[(1, 1), (3, 1), (8, 1)]),
        },
        CatalogEntry {
            id: "ex3",
            description: "SL(2,3) x Z2 on Q8 x Z2",
            spec: product(Sl23, Cyclic { n: 2 }),
            normal: NormalSelector::Fitting,
            expected: sizes(&[(1, 4), (6, 2)]),
        },
        CatalogEntry {
            id: "ex4",
            description: "AGL(2,3) x Z2 on translations x Z2",
            spec: product(Agl { p: 3, n: 2 }, Cyclic { n: 2 }),
            normal: NormalSelector::Fitting,
            expected: sizes(&[(1, 2), (8, 2)]),
        },
        CatalogEntry {
            id: "ex5",
            description: "(P x Z2) ⋊ Stab(b), P extraspecial of order 27",
            spec: Example { id: "ex5".into() },
            normal: named(),
            expected: sizes(&[(1, 6), (24, 2)]),
        },
        CatalogEntry {
            id: "ex6",
            description: "Γ(25) on K·S, |S| = 3",
            spec: Semilinear { p: 5, n: 2, s: 3 },
            normal: named(),
            expected: sizes(&[(1, 1), (24, 1), (50, 1)]),
        },
        CatalogEntry {
            id: "ex7a",
            description: "A4 on itself",
            spec: Alternating { n: 4 },
            normal: NormalSelector::Whole,
            expected: sizes(&[(1, 1), (3, 1), (4, 2)]),
        },
        CatalogEntry {
            id: "ex7b",
            description: "order 324 fixture on Z3 x Z3",
            spec: Embedded { name: "sg_324_8".into() },
            normal: NormalSelector::OrderCenterFree(9),
            expected: sizes(&[(1, 1), (2, 1), (3, 2)]),
        },
        CatalogEntry {
            id: "ex8.1a",
            description: "D8 on itself",
            spec: Dihedral { order: 8 },
            normal: NormalSelector::Whole,
            expected: sizes(&[(1, 2), (2, 3)]),
        },
        CatalogEntry {
            id: "ex8.1b",
            description: "Q8 on itself",
            spec: Quaternion { order: 8 },
            normal: NormalSelector::Whole,
            expected: sizes(&[(1, 2), (2, 3)]),
        },
        CatalogEntry {
            id: "ex8.2",
            description: "(Z7 x Z3) ⋊ (Z6 x Z2) on Z7 x Z3",
            spec: ex8_2_spec(),
            normal: named(),
            expected: sizes(&[(1, 1), (2, 1), (6, 1), (12, 1)]),
        },
        CatalogEntry {
            id: "ex8.3",
            description: "SL(2,3) x Z3 on Q8 x Z3",
            spec: product(Sl23, Cyclic { n: 3 }),
            normal: NormalSelector::Fitting,
            expected: sizes(&[(1, 6), (6, 3)]),
        },
        CatalogEntry {
            id: "ex8.4",
            description: "GL(2,3) on SL(2,3)",
            spec: Gl23,
            normal: NormalSelector::Order(24),
            expected: sizes(&[(1, 2), (6, 1), (8, 2)]),
        },
        CatalogEntry {
            id: "ex8.5",
            description: "Γ(9) on K·S, |S| = 5",
            spec: Semilinear { p: 3, n: 2, s: 5 },
            normal: named(),
            expected: sizes(&[(1, 1), (8, 1), (18, 2)]),
        },
        CatalogEntry {
            id: "ex8.6",
            description: "S5 on A5",
            spec: Symmetric { n: 5 },
            normal: NormalSelector::Order(60),
            expected: sizes(&[(1, 1), (15, 1), (20, 1), (24, 1)]),
        },
        CatalogEntry {
            id: "ex10",
            description: "order 672 fixture on Z2^5",
            spec: Embedded { name: "sg_672_1258".into() },
            normal: NormalSelector::Fitting,
            expected: sizes(&[(1, 1), (3, 1), (7, 1), (21, 1)]),
        },
        CatalogEntry {
            id: "ex11",
            description: "(Z2^3 x Z3) ⋊ (Z7 x Z2) on Z2^3 x Z3",
            spec: ex11_spec(),
            normal: named(),
            expected: sizes(&[(1, 1), (2, 1), (7, 1), (14, 1)]),
        },
        CatalogEntry {
            id: "ex12",
            description: "order 600 fixture on (Z5 x Z5) ⋊ Q8",
            spec: Embedded { name: "sg_600_150".into() },
            normal: NormalSelector::Order(200),
            expected: sizes(&[(1, 1), (24, 1), (25, 1), (150, 1)]),
        },
    ]
}

/// Builds a catalog entry, naming its selected normal subgroup `N`.
pub fn build_example(id: &str) -> Result<BuiltGroup> {
    let mut built = if id == "ex5" {
        example5(3)?
    } else {
        let entry = example_catalog()
            .into_iter()
            .find(|e| e.id == id)
            .ok_or_else(|| GroupError::InvalidSpec(format!("no catalog entry '{id}'")))?;
        let mut built = build(&entry.spec)?;
        if built.normal("N").is_none() {
            let n = entry.normal.resolve(&built).ok_or_else(|| {
                GroupError::InvalidSpec(format!("{id}: selector {} matched nothing", entry.normal))
            })?;
            built.normals.insert(0, ("N".into(), n));
        }
        built
    };
    built.name = format!("example:{id}");
    Ok(built)
}

/// `G = (P × ⟨z⟩) ⋊ H` with `P` extraspecial of order `p³` and exponent `p`
/// and `H` the automorphisms of `P` fixing the central generator `b`,
/// extended trivially to `z`. `H` is found by brute force over generator
/// images. `N = P × ⟨z⟩`.
pub fn example5(p: u64) -> Result<BuiltGroup> {
    let pg = families::extraspecial_p3(p)?;
    let n = families::direct_product(&pg, &families::cyclic(2)?)?;
    let gens = n.generator_indices();
    let (a, c, z) = (gens[0], gens[1], gens[2]);
    let b = n.commutator(a, c);
    let last = n.degree() - 1;
    let in_p: Vec<usize> = (0..n.order())
        .filter(|&x| n.element(x).apply(last) == last)
        .collect();
    let size = n.order();
    let mut chosen: Vec<Permutation> = Vec::new();
    let mut action: Vec<Vec<usize>> = Vec::new();
    let mut current = FiniteGroup::generate(size, vec![])?;
    for &x in &in_p {
        for &y in &in_p {
            if n.commutator(x, y) != b {
                continue;
            }
            let Some(map) = n.homomorphism(&n, &[x, y, z]) else {
                continue;
            };
            let mut hit = vec![false; size];
            map.iter().for_each(|&v| hit[v] = true);
            if hit.iter().any(|h| !h) {
                continue;
            }
            let perm = Permutation::from_images(map.iter().map(|&v| v as u32).collect())?;
            if current.index_of(&perm).is_none() {
                chosen.push(perm);
                action.push(vec![x, y, z]);
                current = FiniteGroup::generate(size, chosen.clone())?;
            }
        }
    }
    let (g, normal) = families::semidirect(&n, &current, &action)?;
    Ok(BuiltGroup {
        name: format!("example5:{p}"),
        group: g,
        normals: vec![("N".into(), normal)],
    })
}

/// Order-3 matrix of determinant 1 normalizing `⟨i, j⟩ ≅ Q8` in SL(2,5),
/// first in enumeration order.
fn q8_normalizer_order3(q8: &[Matrix]) -> Matrix {
    let p = 5;
    let id: Matrix = vec![vec![1, 0], vec![0, 1]];
    all_matrices(p, 2)
        .find(|w| {
            if determinant(w, p) != 1 || w == &id {
                return false;
            }
            let w2 = mat_mul(w, w, p);
            let w3 = mat_mul(&w2, w, p);
            if w3 != id {
                return false;
            }
            // w⁻¹ = w² for order 3
            q8.iter().all(|x| q8.contains(&mat_mul(&mat_mul(&w2, x, p), w, p)))
        })
        .expect("SL(2,5) contains SL(2,3)")
}

fn q8_elements(i: &Matrix, j: &Matrix, p: u32) -> Vec<Matrix> {
    let mut set: Vec<Matrix> = vec![vec![vec![1, 0], vec![0, 1]]];
    let mut k = 0;
    while k < set.len() {
        for g in [i, j] {
            let m = mat_mul(&set[k], g, p);
            if !set.contains(&m) {
                set.push(m);
            }
        }
        k += 1;
    }
    set
}

/// Constructs the groups shipped as fixtures.
///
/// * `sg_324_8`: `(Z3² ⋊ S3) × Z6`, `S3` generated by a transvection and
///   `diag(1, -1)`.
/// * `sg_600_150`: `Z5² ⋊ SL(2,3)` with `SL(2,3) ≤ SL(2,5)` built around
///   `Q8 = ⟨[[0,4],[1,0]], diag(2,3)⟩`.
/// * `sg_672_1258`: `AGL(1,8) × A4`.
pub fn construct_fixture(name: &str) -> Result<FiniteGroup> {
    match name {
        "sg_324_8" => {
            let s3 = families::affine(3, 2, &[vec![vec![1, 1], vec![0, 1]], vec![vec![1, 0], vec![0, 2]]])?;
            families::direct_product(&s3, &families::cyclic(6)?)
        }
        "sg_600_150" => {
            let i: Matrix = vec![vec![0, 4], vec![1, 0]];
            let j: Matrix = vec![vec![2, 0], vec![0, 3]];
            let q8 = q8_elements(&i, &j, 5);
            let w = q8_normalizer_order3(&q8);
            families::affine(5, 2, &[i, j, w])
        }
        "sg_672_1258" => {
            let companion: Matrix = vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 0]];
            let agl18 = families::affine(2, 3, &[companion])?;
            families::direct_product(&agl18, &families::alternating(4)?)
        }
        other => Err(GroupError::InvalidSpec(format!("no fixture construction '{other}'"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selectors_round_trip() {
        for s in ["whole", "fitting", "name:N", "order:24", "order:9,center-free"] {
            let sel: NormalSelector = s.parse().unwrap();
            assert_eq!(sel.to_string(), s);
        }
        assert!("order:x".parse::<NormalSelector>().is_err());
        assert!("biggest".parse::<NormalSelector>().is_err());
    }

    #[test]
    fn catalog_ids_are_unique() {
        let cat = example_catalog();
        let mut ids: Vec<&str> = cat.iter().map(|e| e.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), cat.len());
        assert!(!ids.contains(&"ex9"));
    }

    #[test]
    fn q8_in_sl25() {
        let i: Matrix = vec![vec![0, 4], vec![1, 0]];
        let j: Matrix = vec![vec![2, 0], vec![0, 3]];
        assert_eq!(q8_elements(&i, &j, 5).len(), 8);
    }
}
