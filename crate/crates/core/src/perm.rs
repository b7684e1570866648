//! Permutations of `0..degree`, the element type of every group in the crate.
//!
//! Products act on the right: `a.then(&b)` first applies `a`, then `b`, so the
//! image of `i` is `b[a[i]]`. Conjugation follows the same convention,
//! `x^g = g⁻¹ x g`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GroupError;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image array, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self, GroupError> {
        if images.is_empty() {
            return Err(GroupError::InvalidPermutation("empty image array".into()));
        }
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let slot = seen.get_mut(i as usize).ok_or_else(|| {
                GroupError::InvalidPermutation(format!(
                    "image {i} out of range for degree {}",
                    images.len()
                ))
            })?;
            if *slot {
                return Err(GroupError::InvalidPermutation(format!(
                    "image {i} appears twice"
                )));
            }
            *slot = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles on `degree` points.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self, GroupError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                let q = cycle[(k + 1) % cycle.len()];
                if p as usize >= degree || q as usize >= degree {
                    return Err(GroupError::InvalidPermutation(format!(
                        "cycle point out of range for degree {degree}"
                    )));
                }
                if touched[p as usize] {
                    return Err(GroupError::InvalidPermutation(
                        "cycles are not disjoint".into(),
                    ));
                }
                touched[p as usize] = true;
                images[p as usize] = q;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Permutation { images }
    }

    /// `g⁻¹ self g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.inverse().then(self).then(g)
    }

    /// Order as the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.images.len()];
        let mut order = 1u64;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.images[p] as usize;
                len += 1;
            }
            order = crate::arith::lcm(order, len);
        }
        order
    }

    /// Relabels points: the result maps `relabel[i]` to `relabel[self[i]]`.
    pub fn relabeled(&self, relabel: &Permutation) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[relabel.apply(i)] = relabel.images[j as usize];
        }
        Permutation { images }
    }

    /// Places `self` on points `offset..offset+degree` of a larger set, fixing the rest.
    pub fn embedded(&self, offset: usize, total_degree: usize) -> Permutation {
        let mut images: Vec<u32> = (0..total_degree as u32).collect();
        for (i, &j) in self.images.iter().enumerate() {
            images[offset + i] = offset as u32 + j;
        }
        Permutation { images }
    }
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = GroupError;

    fn try_from(images: Vec<u32>) -> Result<Self, Self::Error> {
        Permutation::from_images(images)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Cycle notation, `()` for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.images.len()];
        let mut wrote = false;
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            write!(f, "(")?;
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
                first = false;
                p = self.images[p] as usize;
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
        assert!(Permutation::from_images(vec![]).is_err());
    }

    #[test]
    fn product_acts_on_the_right() {
        let a = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.then(&b).apply(0), 2);
        assert_eq!(a.then(&b).order(), 3);
        assert!(a.then(&a).is_identity());
    }

    #[test]
    fn cycle_display() {
        let p = Permutation::from_cycles(5, &[&[0, 2, 4], &[1, 3]]).unwrap();
        assert_eq!(p.to_string(), "(0 2 4)(1 3)");
        assert_eq!(p.order(), 6);
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    #[test]
    fn conjugation_relabels_cycles() {
        let x = Permutation::from_cycles(4, &[&[0, 1, 2]]).unwrap();
        let g = Permutation::from_cycles(4, &[&[2, 3]]).unwrap();
        assert_eq!(
            x.conjugate_by(&g),
            Permutation::from_cycles(4, &[&[0, 1, 3]]).unwrap()
        );
    }
}
