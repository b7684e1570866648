//! The audit corpus: catalog groups plus parametric family sweeps,
//! de-duplicated by fingerprint.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::Result;
use crate::group::FiniteGroup;

use super::catalog::{construct_fixture, example_catalog};
use super::families::*;
use super::field::{gl_generators, sl_generators, Matrix};
use super::{build, GroupSpec};

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub provenance: String,
    pub group: FiniteGroup,
}

/// Order, element-order spectrum and conjugacy class sizes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fingerprint {
    pub order: usize,
    pub spectrum: Vec<(u64, usize)>,
    pub class_sizes: Vec<usize>,
}

impl Fingerprint {
    /// Stable 64-bit FNV-1a digest of the canonical JSON form.
    pub fn digest(&self) -> u64 {
        let json = serde_json::to_string(self).expect("fingerprint serializes");
        json.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
            (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
        })
    }
}

pub fn fingerprint(g: &FiniteGroup) -> Fingerprint {
    let mut class_sizes: Vec<usize> = g.conjugacy_classes().iter().map(|c| c.len()).collect();
    class_sizes.sort_unstable();
    Fingerprint {
        order: g.order(),
        spectrum: g.order_spectrum().into_iter().collect(),
        class_sizes,
    }
}

type Builder = Box<dyn Fn() -> Result<FiniteGroup>>;

struct Candidate {
    provenance: String,
    order: usize,
    build: Builder,
}

fn candidate(provenance: impl Into<String>, order: usize, build: impl Fn() -> Result<FiniteGroup> + 'static) -> Candidate {
    Candidate {
        provenance: provenance.into(),
        order,
        build: Box::new(build),
    }
}

fn spec_candidate(spec: GroupSpec, order: usize) -> Candidate {
    let provenance = format!("family:{spec}");
    candidate(provenance, order, move || Ok(build(&spec)?.group))
}

fn primes_upto(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| is_prime(p)).collect()
}

// (name, order, spec) of the factors used in direct-product sweeps
fn product_bases() -> Vec<(&'static str, usize, GroupSpec)> {
    use GroupSpec::*;
    vec![
        ("Z2", 2, Cyclic { n: 2 }),
        ("Z3", 3, Cyclic { n: 3 }),
        ("Z4", 4, Cyclic { n: 4 }),
        ("Z5", 5, Cyclic { n: 5 }),
        ("V4", 4, ElementaryAbelian { p: 2, k: 2 }),
        ("S3", 6, Symmetric { n: 3 }),
        ("D8", 8, Dihedral { order: 8 }),
        ("Q8", 8, Quaternion { order: 8 }),
        ("D10", 10, Dihedral { order: 10 }),
        ("A4", 12, Alternating { n: 4 }),
        ("D12", 12, Dihedral { order: 12 }),
        ("Dic12", 12, Dicyclic { order: 12 }),
        ("F21", 21, FrobeniusPq { p: 7, q: 3 }),
        ("SL(2,3)", 24, Sl23),
        ("S4", 24, Symmetric { n: 4 }),
        ("A5", 60, Alternating { n: 5 }),
    ]
}

fn candidates(max_order: usize) -> Vec<Candidate> {
    use GroupSpec::*;
    let mut out = Vec::new();

    // catalog groups first, so they keep their provenance after de-duplication
    for entry in example_catalog() {
        if entry.id == "ex5" {
            // order 11664
            continue;
        }
        let spec = entry.spec.clone();
        let id = entry.id;
        out.push(Candidate {
            provenance: format!("catalog:{id}"),
            order: 0,
            build: Box::new(move || Ok(build(&spec)?.group)),
        });
    }

    for n in 1..=16 {
        out.push(spec_candidate(Cyclic { n }, n));
    }
    for (p, k) in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2)] {
        out.push(spec_candidate(ElementaryAbelian { p, k }, (p as usize).pow(k as u32)));
    }
    for order in (6..=60).step_by(2) {
        out.push(spec_candidate(Dihedral { order }, order));
    }
    for order in (8..=48).step_by(4) {
        out.push(spec_candidate(Dicyclic { order }, order));
    }
    for order in [16, 32, 64] {
        out.push(spec_candidate(Quaternion { order }, order));
    }
    for n in 3..=5 {
        out.push(spec_candidate(Symmetric { n }, (1..=n).product()));
    }
    for n in 4..=5 {
        out.push(spec_candidate(Alternating { n }, (1..=n).product::<usize>() / 2));
    }
    for p in [3, 5] {
        out.push(spec_candidate(ExtraspecialP3 { p }, (p as usize).pow(3)));
    }

    // Z_p ⋊ Z_m for every divisor m > 1 of p - 1
    for p in primes_upto(97) {
        for m in 2..p {
            if (p - 1) % m != 0 {
                continue;
            }
            let order = (p * m) as usize;
            let provenance = format!("family:affine_mult:{p}:{m}");
            out.push(candidate(provenance, order, move || {
                Ok(semilinear_sub(p as u32, 1, m as u32, false, 1)?.0)
            }));
        }
    }
    // AGL(1,q) and AΓL(1,q) for proper prime powers q
    for (p, n) in [(2u32, 2u32), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3)] {
        let q = p.pow(n) as usize;
        out.push(candidate(format!("family:agl1:{q}"), q * (q - 1), move || {
            Ok(semilinear_sub(p, n, p.pow(n) - 1, false, 1)?.0)
        }));
        out.push(candidate(
            format!("family:agaml1:{q}"),
            q * (q - 1) * n as usize,
            move || Ok(semilinear_sub(p, n, p.pow(n) - 1, true, 1)?.0),
        ));
    }
    // K ⋊ (Z12 ⋊ ⟨σ⟩) on GF(25) with N = K·S, |S| = 3
    out.push(spec_candidate(SemilinearSub { p: 5, n: 2, m: 12, s: 3 }, 600));

    out.push(spec_candidate(Sl23, 24));
    out.push(spec_candidate(Gl23, 48));
    out.push(spec_candidate(
        Linear {
            p: 5,
            n: 2,
            matrices: sl_generators(5, 2),
        },
        120,
    ));
    out.push(spec_candidate(
        Linear {
            p: 2,
            n: 3,
            matrices: gl_generators(2, 3),
        },
        168,
    ));
    out.push(spec_candidate(Agl { p: 3, n: 2 }, 432));
    out.push(spec_candidate(
        Affine {
            p: 3,
            n: 2,
            matrices: sl_generators(3, 2),
        },
        216,
    ));
    let q8_f3: Vec<Matrix> = vec![vec![vec![0, 2], vec![1, 0]], vec![vec![1, 1], vec![1, 2]]];
    out.push(spec_candidate(
        Affine {
            p: 3,
            n: 2,
            matrices: q8_f3,
        },
        72,
    ));
    let q8_f5: Vec<Matrix> = vec![vec![vec![0, 4], vec![1, 0]], vec![vec![2, 0], vec![0, 3]]];
    out.push(spec_candidate(
        Affine {
            p: 5,
            n: 2,
            matrices: q8_f5,
        },
        200,
    ));
    for name in super::catalog::FIXTURE_NAMES {
        out.push(candidate(format!("construction:{name}"), 0, move || construct_fixture(name)));
    }

    let bases = product_bases();
    for i in 0..bases.len() {
        for j in i..bases.len() {
            let (na, oa, sa) = bases[i].clone();
            let (nb, ob, sb) = bases[j].clone();
            let spec = DirectProduct {
                left: Box::new(sa),
                right: Box::new(sb),
            };
            out.push(candidate(format!("product:{na} x {nb}"), oa * ob, move || {
                Ok(build(&spec)?.group)
            }));
        }
    }
    for (name, order, spec) in [
        ("S3 x S3 x Z2", 72, "symmetric:3*symmetric:3*cyclic:2"),
        ("Q8 x Z2 x Z2", 32, "quaternion:8*cyclic:2*cyclic:2"),
        ("A4 x Z2 x Z2", 48, "alternating:4*cyclic:2*cyclic:2"),
        ("D8 x Z3 x Z3", 72, "dihedral:8*cyclic:3*cyclic:3"),
    ] {
        let spec = GroupSpec::parse(spec).expect("static spec parses");
        out.push(candidate(format!("product:{name}"), order, move || Ok(build(&spec)?.group)));
    }

    out.retain(|c| c.order <= max_order);
    out
}

/// Deterministic corpus of groups of order at most `max_order`.
///
/// Builders that fail (for instance a catalog entry whose parameters admit no
/// group) are skipped; the catalog test reports them separately.
pub fn corpus(max_order: usize) -> Vec<CorpusEntry> {
    let mut seen: HashSet<Fingerprint> = HashSet::new();
    let mut out = Vec::new();
    for c in candidates(max_order) {
        let Ok(group) = (c.build)() else {
            continue;
        };
        if group.order() > max_order {
            continue;
        }
        if seen.insert(fingerprint(&group)) {
            out.push(CorpusEntry {
                provenance: c.provenance,
                group,
            });
        }
    }
    out
}

/// Family formula orders of the sweep, for checking against built orders.
pub fn sweep_orders(max_order: usize) -> Vec<(String, usize, Result<usize>)> {
    candidates(max_order)
        .into_iter()
        .filter(|c| c.order > 0)
        .map(|c| {
            let built = (c.build)().map(|g| g.order());
            (c.provenance, c.order, built)
        })
        .collect()
}
