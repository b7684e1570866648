//! Concrete permutation representations of the group families in use.

use crate::arith::is_prime;
use crate::error::{GroupError, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::perm::Permutation;

use super::field::{add_vectors, apply_matrix, determinant, Field, Matrix};

fn invalid(msg: impl Into<String>) -> GroupError {
    GroupError::InvalidSpec(msg.into())
}

fn perm_from_fn(degree: usize, f: impl Fn(usize) -> usize) -> Result<Permutation> {
    Permutation::from_images((0..degree).map(|i| f(i) as u32).collect())
}

fn require_prime(p: u64, what: &str) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(invalid(format!("{what} must be prime, got {p}")))
    }
}

/// Right-regular representation of an abstract group given by its
/// multiplication on `0..order` (identity 0) and generator labels.
pub fn regular(order: usize, mul: impl Fn(usize, usize) -> usize, gens: &[usize]) -> Result<FiniteGroup> {
    let perms = gens
        .iter()
        .map(|&g| perm_from_fn(order, |x| mul(x, g)))
        .collect::<Result<Vec<_>>>()?;
    FiniteGroup::generate(order, perms)
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(invalid("cyclic group of order 0"));
    }
    FiniteGroup::generate(n, vec![perm_from_fn(n, |i| (i + 1) % n)?])
}

/// Dihedral group of the given order `2m` acting on `m` points (Klein four
/// on 4 points when `m = 2`).
pub fn dihedral(order: usize) -> Result<FiniteGroup> {
    if order < 4 || order % 2 != 0 {
        return Err(invalid(format!("dihedral order must be even and >= 4, got {order}")));
    }
    let m = order / 2;
    if m == 2 {
        return FiniteGroup::generate(
            4,
            vec![
                Permutation::from_cycles(4, &[&[0, 1], &[2, 3]])?,
                Permutation::from_cycles(4, &[&[0, 2], &[1, 3]])?,
            ],
        );
    }
    FiniteGroup::generate(
        m,
        vec![perm_from_fn(m, |i| (i + 1) % m)?, perm_from_fn(m, |i| (m - i) % m)?],
    )
}

/// `⟨x, y | x^(2t), y² = x^t, x^y = x⁻¹⟩` of order `4t`, regular action.
pub fn dicyclic(order: usize) -> Result<FiniteGroup> {
    if order < 8 || order % 4 != 0 {
        return Err(invalid(format!("dicyclic order must be a multiple of 4 and >= 8, got {order}")));
    }
    let m = order / 2;
    let t = m / 2;
    // element (i, j) = x^i y^j stored as i + m*j
    let mul = |a: usize, b: usize| {
        let (i, j) = (a % m, a / m);
        let (k, l) = (b % m, b / m);
        match (j, l) {
            (0, _) => (i + k) % m + m * l,
            (1, 0) => (i + m - k) % m + m,
            _ => (i + m - k + t) % m,
        }
    };
    regular(order, mul, &[1, m])
}

/// Generalized quaternion group of order `2^k`, `k >= 3`.
pub fn quaternion(order: usize) -> Result<FiniteGroup> {
    if order < 8 || !order.is_power_of_two() {
        return Err(invalid(format!("quaternion order must be 2^k with k >= 3, got {order}")));
    }
    dicyclic(order)
}

pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(invalid("symmetric group on 0 points"));
    }
    if n == 1 {
        return FiniteGroup::generate(1, vec![]);
    }
    FiniteGroup::generate(
        n,
        vec![
            Permutation::from_cycles(n, &[&[0, 1]])?,
            perm_from_fn(n, |i| (i + 1) % n)?,
        ],
    )
}

pub fn alternating(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(invalid("alternating group on 0 points"));
    }
    if n < 3 {
        return FiniteGroup::generate(n, vec![]);
    }
    let gens = (2..n as u32)
        .map(|k| Permutation::from_cycles(n, &[&[0, 1, k]]))
        .collect::<Result<Vec<_>>>()?;
    FiniteGroup::generate(n, gens)
}

/// `(Z_p)^k` as `k` disjoint `p`-cycles.
pub fn elementary_abelian(p: u64, k: usize) -> Result<FiniteGroup> {
    require_prime(p, "p")?;
    if k == 0 {
        return Err(invalid("elementary abelian rank must be >= 1"));
    }
    let p = p as usize;
    let degree = p * k;
    let gens = (0..k)
        .map(|b| {
            perm_from_fn(degree, |i| {
                if i / p == b {
                    b * p + (i % p + 1) % p
                } else {
                    i
                }
            })
        })
        .collect::<Result<Vec<_>>>()?;
    FiniteGroup::generate(degree, gens)
}

/// Heisenberg group of order `p³` (exponent `p` for odd `p`) in its regular
/// representation. Generators are `a = (1,0,0)` and `c = (0,0,1)`; the centre
/// is generated by `b = [a, c]`.
pub fn extraspecial_p3(p: u64) -> Result<FiniteGroup> {
    require_prime(p, "p")?;
    let p = p as usize;
    let enc = |a: usize, b: usize, c: usize| a + p * b + p * p * c;
    let mul = |x: usize, y: usize| {
        let (a, b, c) = (x % p, (x / p) % p, x / (p * p));
        let (a2, b2, c2) = (y % p, (y / p) % p, y / (p * p));
        enc((a + a2) % p, (b + b2 + a * c2) % p, (c + c2) % p)
    };
    regular(p * p * p, mul, &[enc(1, 0, 0), enc(0, 0, 1)])
}

/// Linear group generated by `matrices`, acting on the nonzero row vectors.
pub fn linear_on_nonzero(p: u32, n: usize, matrices: &[Matrix]) -> Result<FiniteGroup> {
    require_prime(p as u64, "p")?;
    check_matrices(p, n, matrices)?;
    let size = (p as usize).pow(n as u32);
    let gens = matrices
        .iter()
        .map(|m| perm_from_fn(size - 1, |i| apply_matrix(m, i as u32 + 1, p) as usize - 1))
        .collect::<Result<Vec<_>>>()?;
    FiniteGroup::generate(size - 1, gens)
}

fn check_matrices(p: u32, n: usize, matrices: &[Matrix]) -> Result<()> {
    for m in matrices {
        if m.len() != n || m.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= p)) {
            return Err(invalid(format!("matrix {m:?} is not {n}x{n} over GF({p})")));
        }
        if determinant(m, p) == 0 {
            return Err(invalid(format!("matrix {m:?} is singular")));
        }
    }
    Ok(())
}

/// Affine group `V ⋊ ⟨matrices⟩` on the `p^n` vectors. The translations are
/// the first `n` generators.
pub fn affine(p: u32, n: usize, matrices: &[Matrix]) -> Result<FiniteGroup> {
    require_prime(p as u64, "p")?;
    if n == 0 {
        return Err(invalid("affine dimension must be >= 1"));
    }
    check_matrices(p, n, matrices)?;
    let size = (p as usize).pow(n as u32);
    let mut gens = (0..n)
        .map(|i| {
            let e = (p as usize).pow(i as u32) as u32;
            perm_from_fn(size, |v| add_vectors(v as u32, e, p, n as u32) as usize)
        })
        .collect::<Result<Vec<_>>>()?;
    for m in matrices {
        gens.push(perm_from_fn(size, |v| apply_matrix(m, v as u32, p) as usize)?);
    }
    FiniteGroup::generate(size, gens)
}

/// The translation subgroup of a group built by [`affine`] or [`semilinear`].
pub fn translations(g: &FiniteGroup, n: usize) -> Subgroup {
    let idx: Vec<usize> = g.generator_indices()[..n].to_vec();
    g.subgroup_generated(&idx)
}

/// `K ⋊ (⟨ω^((q-1)/m)⟩ ⋊ ⟨σ⟩)` on the `q = p^n` field elements, where `ω` is
/// primitive and `σ` the Frobenius map (omitted when `frobenius` is false).
/// Returns the group and the normal subgroup `K·S` with `|S| = s`.
pub fn semilinear_sub(
    p: u32,
    n: u32,
    m: u32,
    frobenius: bool,
    s: u32,
) -> Result<(FiniteGroup, Subgroup)> {
    let field = Field::new(p, n)?;
    let q = field.size;
    if m == 0 || (q - 1) % m != 0 {
        return Err(invalid(format!("{m} does not divide {q} - 1")));
    }
    if s == 0 || m % s != 0 {
        return Err(invalid(format!(
            "no subgroup of order {s} in a cyclic group of order {m} (multiplier group of GF({q}))"
        )));
    }
    let q = q as usize;
    let mut gens = (0..n)
        .map(|i| {
            let e = p.pow(i);
            perm_from_fn(q, |x| field.add(x as u32, e) as usize)
        })
        .collect::<Result<Vec<_>>>()?;
    let mult = field.pow(field.primitive, (q as u32 - 1) / m);
    gens.push(perm_from_fn(q, |x| field.mul(x as u32, mult) as usize)?);
    if frobenius {
        gens.push(perm_from_fn(q, |x| field.frobenius(x as u32) as usize)?);
    }
    let g = FiniteGroup::generate(q, gens)?;
    let s_mult = field.pow(field.primitive, (q as u32 - 1) / s);
    let mut ks = g.generator_indices()[..n as usize].to_vec();
    let s_perm = perm_from_fn(q, |x| field.mul(x as u32, s_mult) as usize)?;
    ks.push(g.index_of(&s_perm).expect("S lies in the multiplier group"));
    let normal = g.subgroup_generated(&ks);
    Ok((g, normal))
}

/// `Γ(p^n)`: the full semilinear affine group, with `N = K·S`, `|S| = s`.
pub fn semilinear(p: u32, n: u32, s: u32) -> Result<(FiniteGroup, Subgroup)> {
    let q = p.checked_pow(n).ok_or_else(|| invalid("field too large"))?;
    semilinear_sub(p, n, q - 1, true, s)
}

/// `Z_p ⋊ Z_q` acting on `p` points, for primes with `q | p - 1`.
pub fn frobenius_pq(p: u64, q: u64) -> Result<FiniteGroup> {
    require_prime(p, "p")?;
    require_prime(q, "q")?;
    if (p - 1) % q != 0 {
        return Err(invalid(format!("{q} does not divide {p} - 1")));
    }
    let (g, _) = semilinear_sub(p as u32, 1, q as u32, false, 1)?;
    Ok(g)
}

/// Direct product on the disjoint union of the point sets.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    let degree = a.degree() + b.degree();
    let gens: Vec<Permutation> = a
        .generators()
        .iter()
        .map(|g| g.embedded(0, degree))
        .chain(b.generators().iter().map(|g| g.embedded(a.degree(), degree)))
        .collect();
    FiniteGroup::generate(degree, gens)
}

/// `N ⋊ H` where `action[i][j]` is the image (an index into `n`) of the
/// `j`-th generator of `n` under the `i`-th generator of `h`.
///
/// `N` acts on its own elements by right translation and `H` by the given
/// automorphisms. If that is not faithful on `H`, the right-regular action of
/// `H` is appended on further points. Returns the product and the subgroup
/// of translations.
pub fn semidirect(
    n: &FiniteGroup,
    h: &FiniteGroup,
    action: &[Vec<usize>],
) -> Result<(FiniteGroup, Subgroup)> {
    if action.len() != h.generators().len() {
        return Err(invalid(format!(
            "expected action images for {} generators, got {}",
            h.generators().len(),
            action.len()
        )));
    }
    let size = n.order();
    let mut autos = Vec::new();
    for images in action {
        if images.len() != n.generators().len() || images.iter().any(|&x| x >= size) {
            return Err(invalid("action images do not match the normal factor's generators"));
        }
        let map = n
            .homomorphism(n, images)
            .ok_or_else(|| invalid("action images do not define an endomorphism"))?;
        let mut seen = vec![false; size];
        for &y in &map {
            seen[y] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(invalid("action images do not define an automorphism"));
        }
        autos.push(Permutation::from_images(map.iter().map(|&y| y as u32).collect())?);
    }
    let image_order = FiniteGroup::generate(size, autos.clone())?.order();
    let faithful = image_order == h.order();
    let degree = if faithful { size } else { size + h.order() };
    let translation_gens = n
        .generator_indices()
        .iter()
        .map(|&s| perm_from_fn(degree, |x| if x < size { n.mul(x, s) } else { x }))
        .collect::<Result<Vec<_>>>()?;
    let mut gens = translation_gens.clone();
    for (i, auto) in autos.iter().enumerate() {
        let hs = h.generator_indices()[i];
        gens.push(perm_from_fn(degree, |x| {
            if x < size {
                auto.apply(x)
            } else {
                size + h.mul(x - size, hs)
            }
        })?);
    }
    let g = FiniteGroup::generate(degree, gens)?;
    if g.order() != size * h.order() {
        return Err(invalid(format!(
            "action is not a homomorphism: product has order {}, expected {}",
            g.order(),
            size * h.order()
        )));
    }
    let idx: Vec<usize> = (0..translation_gens.len()).map(|i| g.generator_indices()[i]).collect();
    let normal = g.subgroup_generated(&idx);
    debug_assert!(g.is_normal(&normal));
    Ok((g, normal))
}

/// Index of a product of generator powers in `g`, e.g. `[(0, 2), (1, 1)]`
/// for `g0² g1`.
pub fn word(g: &FiniteGroup, letters: &[(usize, u64)]) -> usize {
    let gens = g.generator_indices();
    letters
        .iter()
        .fold(0, |acc, &(s, e)| g.mul(acc, g.pow(gens[s], e)))
}

/// Multiplicative order of a matrix.
pub fn matrix_order(m: &Matrix, p: u32) -> u64 {
    let id = super::field::identity_matrix(m.len());
    let mut x = m.clone();
    let mut k = 1;
    while x != id {
        x = super::field::mat_mul(&x, m, p);
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::identify_small;
    use crate::structure::SmallTag;

    #[test]
    fn family_orders() {
        assert_eq!(cyclic(6).unwrap().order(), 6);
        assert_eq!(dihedral(8).unwrap().order(), 8);
        assert_eq!(dihedral(4).unwrap().order(), 4);
        assert_eq!(dicyclic(12).unwrap().order(), 12);
        assert_eq!(quaternion(16).unwrap().order(), 16);
        assert_eq!(symmetric(5).unwrap().order(), 120);
        assert_eq!(alternating(5).unwrap().order(), 60);
        assert_eq!(elementary_abelian(3, 2).unwrap().order(), 9);
        assert_eq!(extraspecial_p3(3).unwrap().order(), 27);
        assert_eq!(extraspecial_p3(3).unwrap().exponent(), 3);
        assert_eq!(frobenius_pq(7, 3).unwrap().order(), 21);
        let (g, n) = semilinear(5, 2, 3).unwrap();
        assert_eq!(g.order(), 25 * 24 * 2);
        assert_eq!(n.order(), 75);
        assert!(semilinear(3, 2, 5).is_err());
    }

    #[test]
    fn quaternion_is_q8() {
        assert_eq!(identify_small(&quaternion(8).unwrap()).tag, SmallTag::Q8);
        assert_eq!(identify_small(&dihedral(8).unwrap()).tag, SmallTag::D8);
    }

    #[test]
    fn semidirect_z7_by_z3() {
        let n = cyclic(7).unwrap();
        let h = cyclic(3).unwrap();
        let image = n.pow(n.generator_indices()[0], 2);
        let (g, k) = semidirect(&n, &h, &[vec![image]]).unwrap();
        assert_eq!(g.order(), 21);
        assert_eq!(g.degree(), 7);
        assert!(g.is_normal(&k));
        assert_eq!(k.order(), 7);
        // x ↦ x^3 has order 6, not a Z3 action
        let bad = n.pow(n.generator_indices()[0], 3);
        assert!(semidirect(&n, &h, &[vec![bad]]).is_err());
    }

    #[test]
    fn unfaithful_semidirect_adds_points() {
        let n = cyclic(3).unwrap();
        let h = cyclic(4).unwrap();
        let inv = n.inv(n.generator_indices()[0]);
        let (g, k) = semidirect(&n, &h, &[vec![inv]]).unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!(g.degree(), 7);
        assert_eq!(k.order(), 3);
    }
}
