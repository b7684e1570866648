//! Structural predicates on a group `N` viewed as a group in its own right.
//!
//! Frobenius detection, quasi-Frobenius lifting, the prime-power-order
//! (Higman) and prime-order (Deaconescu) case analyses, and fingerprint
//! identification of Q8, D8, A5 and S5.

use serde::{Deserialize, Serialize};

use crate::arith::{self, gcd, is_prime, p_part, prime_power_base};
use crate::error::{GroupError, Result};
use crate::group::{FiniteGroup, Subgroup};

// ---- element-order predicates -----------------------------------------

/// `Some(p)` when the order is a power of the prime `p` (the trivial group is not).
pub fn is_p_group(g: &FiniteGroup) -> Option<u64> {
    prime_power_base(g.order() as u64)
}

/// `Some((p, rank))` for an abelian group of exponent `p`.
pub fn is_elementary_abelian(g: &FiniteGroup) -> Option<(u64, u32)> {
    let p = is_p_group(g)?;
    if g.exponent() != p || !g.is_abelian() {
        return None;
    }
    Some((p, arith::factorize(g.order() as u64)[0].1))
}

/// Every element has prime-power order.
pub fn is_cp_group(g: &FiniteGroup) -> bool {
    g.order_spectrum()
        .keys()
        .all(|&o| o == 1 || prime_power_base(o).is_some())
}

/// Every nonidentity element has prime order.
pub fn all_elements_prime_order(g: &FiniteGroup) -> bool {
    g.order_spectrum().keys().all(|&o| o == 1 || is_prime(o))
}

pub fn is_cyclic(g: &FiniteGroup) -> bool {
    g.order_spectrum().contains_key(&(g.order() as u64))
}

/// 2-group with a unique involution that is not cyclic.
pub fn is_generalized_quaternion(g: &FiniteGroup) -> bool {
    is_p_group(g) == Some(2)
        && g.order_spectrum().get(&2).copied() == Some(1)
        && !is_cyclic(g)
}

/// Every Sylow subgroup is normal.
pub fn is_nilpotent(g: &FiniteGroup) -> bool {
    g.prime_divisors()
        .into_iter()
        .all(|p| g.o_p(p).order() as u64 == p_part(g.order() as u64, p))
}

// ---- subgroup-level helpers -------------------------------------------

pub fn subgroup_is_abelian(g: &FiniteGroup, h: &Subgroup) -> bool {
    let gens = h.generators();
    gens.iter()
        .all(|&a| gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
}

pub fn subgroup_exponent(g: &FiniteGroup, h: &Subgroup) -> u64 {
    h.members()
        .ones()
        .fold(1, |acc, x| arith::lcm(acc, g.order_of(x)))
}

pub fn subgroup_is_cyclic(g: &FiniteGroup, h: &Subgroup) -> bool {
    h.members().ones().any(|x| g.order_of(x) as usize == h.order())
}

pub fn subgroup_elementary_abelian(g: &FiniteGroup, h: &Subgroup) -> Option<(u64, u32)> {
    let p = prime_power_base(h.order() as u64)?;
    if subgroup_exponent(g, h) != p || !subgroup_is_abelian(g, h) {
        return None;
    }
    Some((p, arith::factorize(h.order() as u64)[0].1))
}

fn involution_count(g: &FiniteGroup, h: &Subgroup) -> usize {
    h.members().ones().filter(|&x| g.order_of(x) == 2).count()
}

/// Closure of `gens`, abandoned once it exceeds `limit` elements.
fn bounded_closure(g: &FiniteGroup, gens: &[usize], limit: usize) -> Option<Vec<usize>> {
    let mut seen = fixedbitset::FixedBitSet::with_capacity(g.order());
    seen.insert(0);
    let mut list = vec![0usize];
    let mut k = 0;
    while k < list.len() {
        let x = list[k];
        for &s in gens {
            let y = g.mul(x, s);
            if !seen.put(y) {
                list.push(y);
                if list.len() > limit {
                    return None;
                }
            }
        }
        k += 1;
    }
    Some(list)
}

// ---- Frobenius ---------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplementType {
    /// Cyclic of prime order.
    CyclicQ,
    /// Cyclic of prime-squared order.
    CyclicQ2,
    Quaternion8,
    Other,
}

#[derive(Clone, Debug)]
pub struct FrobeniusDecomposition {
    pub kernel: Subgroup,
    pub complement: Subgroup,
    pub complement_type: ComplementType,
}

fn complement_type(g: &FiniteGroup, h: &Subgroup) -> ComplementType {
    let order = h.order() as u64;
    if subgroup_is_cyclic(g, h) {
        if is_prime(order) {
            return ComplementType::CyclicQ;
        }
        if let Some(q) = prime_power_base(order) {
            if q * q == order {
                return ComplementType::CyclicQ2;
            }
        }
        return ComplementType::Other;
    }
    if order == 8 && involution_count(g, h) == 1 {
        // nonabelian of order 8 with one involution
        return ComplementType::Quaternion8;
    }
    ComplementType::Other
}

/// `K` is a Frobenius kernel of `N` iff `1 < K < N` is normal and every
/// nonidentity `k ∈ K` has `C_N(k) ≤ K`.
fn is_frobenius_kernel(n: &FiniteGroup, k: &Subgroup) -> bool {
    let index = (n.order() / k.order()) as u64;
    let korder = k.order() as u64;
    if k.order() <= 1 || k.order() >= n.order() {
        return false;
    }
    if gcd(korder, index) != 1 || (korder - 1) % index != 0 {
        return false;
    }
    k.members().ones().filter(|&x| x != 0).all(|x| {
        (0..n.order()).all(|y| n.mul(x, y) != n.mul(y, x) || k.contains(y))
    })
}

/// Searches for a complement to `k` among subgroups generated by at most two elements.
fn find_complement(n: &FiniteGroup, k: &Subgroup) -> Option<Subgroup> {
    let target = n.order() / k.order();
    let candidates: Vec<usize> = (0..n.order())
        .filter(|&x| !k.contains(x) && target as u64 % n.order_of(x) == 0)
        .collect();
    if let Some(&x) = candidates.iter().find(|&&x| n.order_of(x) as usize == target) {
        return Some(n.subgroup_generated(&[x]));
    }
    for (i, &x) in candidates.iter().enumerate() {
        for &y in &candidates[i + 1..] {
            if let Some(list) = bounded_closure(n, &[x, y], target) {
                if list.len() == target && list.iter().all(|&e| e == 0 || !k.contains(e)) {
                    return Some(n.subgroup_generated(&[x, y]));
                }
            }
        }
    }
    None
}

/// Independent re-check of a decomposition: orders, trivial intersection,
/// and fixed-point-freeness element by element.
pub fn verify_frobenius(n: &FiniteGroup, d: &FrobeniusDecomposition) -> bool {
    let (k, h) = (&d.kernel, &d.complement);
    if k.order() * h.order() != n.order() || !n.is_normal(k) {
        return false;
    }
    if k.members().ones().any(|x| x != 0 && h.contains(x)) {
        return false;
    }
    h.members().ones().filter(|&x| x != 0).all(|x| {
        k.members()
            .ones()
            .filter(|&y| y != 0)
            .all(|y| n.mul(x, y) != n.mul(y, x))
    })
}

/// Kernel and complement when `N` is a Frobenius group.
pub fn frobenius_decompose(n: &FiniteGroup) -> Option<FrobeniusDecomposition> {
    let kernel = n
        .normal_subgroups()
        .iter()
        .find(|k| is_frobenius_kernel(n, k))?
        .clone();
    let complement = find_complement(n, &kernel)?;
    let d = FrobeniusDecomposition {
        complement_type: complement_type(n, &complement),
        kernel,
        complement,
    };
    verify_frobenius(n, &d).then_some(d)
}

#[derive(Clone, Debug)]
pub struct QuasiFrobeniusDecomposition {
    pub kernel_preimage: Subgroup,
    pub complement_preimage: Subgroup,
    pub kernel_abelian: bool,
    pub complement_abelian: bool,
    /// The Frobenius decomposition of `N/Z(N)`.
    pub quotient: FrobeniusDecomposition,
    pub center_order: usize,
}

/// Lifts a Frobenius decomposition of `N/Z(N)` back to `N`.
pub fn quasi_frobenius_decompose(n: &FiniteGroup) -> Option<QuasiFrobeniusDecomposition> {
    let z = n.center();
    let q = n.quotient(&z).ok()?;
    let d = frobenius_decompose(&q.group)?;
    let kernel_preimage = q.preimage(n, &d.kernel);
    let complement_preimage = q.preimage(n, &d.complement);
    Some(QuasiFrobeniusDecomposition {
        kernel_abelian: subgroup_is_abelian(n, &kernel_preimage),
        complement_abelian: subgroup_is_abelian(n, &complement_preimage),
        kernel_preimage,
        complement_preimage,
        quotient: d,
        center_order: z.order(),
    })
}

// ---- Higman: solvable groups with all elements of prime-power order ----

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HigmanCaseKind {
    EqualP,
    CyclicPrimePower,
    GeneralizedQuaternion,
    PqCyclicSylows,
}

#[derive(Clone, Debug)]
pub struct HigmanCase {
    pub p: u64,
    pub o_p: Subgroup,
    pub case: HigmanCaseKind,
}

/// Places `N/O_p(N)` in the trichotomy for solvable CP-groups.
///
/// `p` is the prime with the largest nontrivial `O_p`, smaller prime on ties.
pub fn higman_classify(n: &FiniteGroup) -> Result<HigmanCase> {
    if !is_cp_group(n) || !n.is_solvable() {
        return Err(GroupError::NotApplicable(
            "requires a solvable group with all elements of prime-power order".into(),
        ));
    }
    let (p, o_p) = n
        .prime_divisors()
        .into_iter()
        .map(|p| (p, n.o_p(p)))
        .filter(|(_, s)| !s.is_trivial())
        .max_by_key(|(p, s)| (s.order(), std::cmp::Reverse(*p)))
        .ok_or_else(|| GroupError::NotApplicable("no nontrivial normal p-subgroup".into()))?;
    let case = if o_p.order() == n.order() {
        HigmanCaseKind::EqualP
    } else {
        let q = n.quotient(&o_p)?.group;
        let qorder = q.order() as u64;
        let primes = q.prime_divisors();
        if is_cyclic(&q) && primes.len() == 1 && primes[0] != p {
            HigmanCaseKind::CyclicPrimePower
        } else if p % 2 == 1 && is_generalized_quaternion(&q) {
            HigmanCaseKind::GeneralizedQuaternion
        } else if primes.len() == 2 && primes.contains(&p) {
            let r = *primes.iter().find(|&&r| r != p).expect("two primes");
            let pa = p_part(qorder, p);
            let sylows_cyclic = primes.iter().all(|&s| {
                let syl = q.sylow(s);
                subgroup_is_cyclic(&q, &syl)
            });
            // q ≡ 1 (mod p^a), reading k as a positive integer
            if sylows_cyclic && r % pa == 1 {
                HigmanCaseKind::PqCyclicSylows
            } else {
                return Err(GroupError::NoCaseMatched(format!(
                    "N/O_{p}(N) of order {qorder} has non-cyclic Sylows or wrong congruence"
                )));
            }
        } else {
            return Err(GroupError::NoCaseMatched(format!(
                "N/O_{p}(N) of order {qorder} fits no case"
            )));
        }
    };
    Ok(HigmanCase { p, o_p, case })
}

// ---- Deaconescu: all nontrivial elements of prime order -----------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "case")]
pub enum DeaconescuCase {
    /// A `p`-group of exponent `p`.
    PGroupExponentP { p: u64 },
    /// `|G| = p^a q`, `3 ≤ p < q`, `a ≥ 3`, `|F| = p^(a-1)`, `|G:G'| = p`.
    Case2a { p: u64, q: u64, a: u32 },
    /// `|G| = p^a q`, `3 ≤ q < p`, `a ≥ 1`, `|F| = |G'| = p^a`.
    Case2b { p: u64, q: u64, a: u32 },
    /// `|G| = 2^a p`, `p ≥ 3`, `a ≥ 2`, `|F| = |G'| = 2^a`.
    Case2c { p: u64, a: u32 },
    /// `|G| = 2 p^a`, `p ≥ 3`, `a ≥ 1`, `|F| = |G'| = p^a`, `F` elementary abelian.
    Case2d { p: u64, a: u32 },
    A5,
}

impl DeaconescuCase {
    pub fn label(&self) -> &'static str {
        match self {
            DeaconescuCase::PGroupExponentP { .. } => "1",
            DeaconescuCase::Case2a { .. } => "2a",
            DeaconescuCase::Case2b { .. } => "2b",
            DeaconescuCase::Case2c { .. } => "2c",
            DeaconescuCase::Case2d { .. } => "2d",
            DeaconescuCase::A5 => "3",
        }
    }
}

pub fn deaconescu_classify(n: &FiniteGroup) -> Result<DeaconescuCase> {
    if n.order() == 1 || !all_elements_prime_order(n) {
        return Err(GroupError::NotApplicable(
            "requires a nontrivial group with all nontrivial elements of prime order".into(),
        ));
    }
    if let Some(p) = is_p_group(n) {
        return if n.exponent() == p {
            Ok(DeaconescuCase::PGroupExponentP { p })
        } else {
            Err(GroupError::NoCaseMatched("p-group of exponent above p".into()))
        };
    }
    if identify_small(n).tag == SmallTag::A5 {
        return Ok(DeaconescuCase::A5);
    }
    let order = n.order() as u64;
    let factors = arith::factorize(order);
    if factors.len() != 2 {
        return Err(GroupError::NoCaseMatched(format!("|N| = {order}")));
    }
    let fitting = n.fitting_subgroup().order() as u64;
    let derived = n.derived_subgroup();
    let derived_order = derived.order() as u64;
    let abelianization = order / derived_order;
    let pow = |p: u64, a: u32| p.pow(a);
    // try each prime as the one carrying the exponent a
    for &(p, a) in &factors {
        let (q, b) = *factors.iter().find(|(r, _)| *r != p).expect("two primes");
        if b == 1 && p >= 3 && q > p && a >= 3 && fitting == pow(p, a - 1) && abelianization == p {
            return Ok(DeaconescuCase::Case2a { p, q, a });
        }
        if b == 1 && q >= 3 && p > q && a >= 1 && fitting == pow(p, a) && derived_order == pow(p, a) {
            return Ok(DeaconescuCase::Case2b { p, q, a });
        }
        if p == 2 && b == 1 && q >= 3 && a >= 2 && fitting == pow(2, a) && derived_order == pow(2, a) {
            return Ok(DeaconescuCase::Case2c { p: q, a });
        }
        if q == 2 && b == 1 && p >= 3 && a >= 1 && fitting == pow(p, a) && derived_order == pow(p, a) {
            let f = n.fitting_subgroup();
            if subgroup_elementary_abelian(n, &f).is_some() {
                return Ok(DeaconescuCase::Case2d { p, a });
            }
        }
    }
    Err(GroupError::NoCaseMatched(format!(
        "|N| = {order}, |F| = {fitting}, |N'| = {derived_order}"
    )))
}

// ---- small identifications --------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SmallTag {
    Q8,
    D8,
    A5,
    S5,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmallIdentity {
    pub tag: SmallTag,
    pub evidence: String,
}

/// Fingerprint identification of exactly the groups the theorems name.
///
/// * Order 8 nonabelian: only D8 and Q8 exist; Q8 has one involution, D8 five.
/// * Order 60 with no proper nontrivial normal subgroup: A5 is the only simple group of order 60.
/// * Order 120 with trivial center and derived subgroup A5: of the groups of
///   order 120 containing A5 (S5, A5 × Z2, SL(2,5)) only S5 is centerless
///   with a derived subgroup of order 60.
pub fn identify_small(g: &FiniteGroup) -> SmallIdentity {
    let order = g.order();
    let none = |evidence: String| SmallIdentity {
        tag: SmallTag::None,
        evidence,
    };
    match order {
        8 => {
            if g.is_abelian() {
                return none("order 8, abelian".into());
            }
            let involutions = g.order_spectrum().get(&2).copied().unwrap_or(0);
            let tag = match involutions {
                1 => SmallTag::Q8,
                5 => SmallTag::D8,
                _ => SmallTag::None,
            };
            SmallIdentity {
                tag,
                evidence: format!("order 8, nonabelian, {involutions} involutions"),
            }
        }
        60 => {
            let normals = g.normal_subgroups().len();
            if normals == 2 {
                SmallIdentity {
                    tag: SmallTag::A5,
                    evidence: "order 60, simple".into(),
                }
            } else {
                none(format!("order 60, {normals} normal subgroups"))
            }
        }
        120 => {
            let z = g.center().order();
            let d = g.derived_subgroup();
            if z == 1 && d.order() == 60 {
                if let Ok(dg) = g.subgroup_as_group(&d) {
                    if identify_small(&dg).tag == SmallTag::A5 {
                        return SmallIdentity {
                            tag: SmallTag::S5,
                            evidence: "order 120, centerless, derived subgroup A5".into(),
                        };
                    }
                }
            }
            none(format!("order 120, |Z| = {z}, |G'| = {}", d.order()))
        }
        _ => none(format!("order {order}")),
    }
}

// ---- quotient exponent claims -------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentClaims {
    pub quotient_order: usize,
    pub quotient_exponent: u64,
    /// The quotient has prime exponent.
    pub exponent_is_prime: bool,
    pub elementary_abelian: Option<(u64, u32)>,
    /// The quotient is an elementary abelian 2-group (or trivial).
    pub two_elementary_abelian: bool,
}

/// Exponent facts about `N/Z` for a normal subgroup `Z` of `N`.
pub fn exponent_claims(n: &FiniteGroup, z: &Subgroup) -> Result<ExponentClaims> {
    let q = n.quotient(z)?.group;
    let exponent = q.exponent();
    let elementary = is_elementary_abelian(&q);
    Ok(ExponentClaims {
        quotient_order: q.order(),
        quotient_exponent: exponent,
        exponent_is_prime: is_prime(exponent),
        two_elementary_abelian: q.order() == 1 || elementary.map(|(p, _)| p) == Some(2),
        elementary_abelian: elementary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn cyc(degree: usize, cycles: &[&[u32]]) -> Permutation {
        Permutation::from_cycles(degree, cycles).unwrap()
    }

    fn group(degree: usize, gens: &[&[&[u32]]]) -> FiniteGroup {
        FiniteGroup::generate(degree, gens.iter().map(|c| cyc(degree, c)).collect()).unwrap()
    }

    #[test]
    fn s3_predicates() {
        let s3 = group(3, &[&[&[0, 1]], &[&[0, 1, 2]]]);
        assert_eq!(is_p_group(&s3), None);
        assert_eq!(is_elementary_abelian(&s3), None);
        assert!(is_cp_group(&s3));
        let d = frobenius_decompose(&s3).unwrap();
        assert_eq!(d.kernel.order(), 3);
        assert_eq!(d.complement_type, ComplementType::CyclicQ);
        assert_eq!(
            deaconescu_classify(&s3).unwrap(),
            DeaconescuCase::Case2d { p: 3, a: 1 }
        );
    }

    #[test]
    fn z6_is_not_cp() {
        let z6 = group(6, &[&[&[0, 1, 2, 3, 4, 5]]]);
        assert!(!is_cp_group(&z6));
        assert!(!all_elements_prime_order(&z6));
        assert!(frobenius_decompose(&z6).is_none());
    }

    #[test]
    fn klein_four_is_elementary() {
        let v4 = group(4, &[&[&[0, 1], &[2, 3]], &[&[0, 2], &[1, 3]]]);
        assert_eq!(is_elementary_abelian(&v4), Some((2, 2)));
        assert_eq!(
            deaconescu_classify(&v4).unwrap(),
            DeaconescuCase::PGroupExponentP { p: 2 }
        );
        let claims = exponent_claims(&v4, &v4.trivial()).unwrap();
        assert_eq!(claims.quotient_exponent, 2);
        assert!(claims.two_elementary_abelian);
    }

    #[test]
    fn d8_fingerprint() {
        let d8 = group(4, &[&[&[0, 1, 2, 3]], &[&[0, 2]]]);
        assert_eq!(identify_small(&d8).tag, SmallTag::D8);
        let z8 = group(8, &[&[&[0, 1, 2, 3, 4, 5, 6, 7]]]);
        assert_eq!(identify_small(&z8).tag, SmallTag::None);
        assert!(!is_generalized_quaternion(&d8));
        assert_eq!(higman_classify(&d8).unwrap().case, HigmanCaseKind::EqualP);
    }
}
