//! Small finite fields and matrices over prime fields.
//!
//! Field elements and vectors are encoded as integers whose base-`p` digits
//! are the coefficients (little-endian).

use crate::arith::is_prime;
use crate::error::{GroupError, Result};

/// GF(p^n) with full addition and multiplication tables.
#[derive(Clone, Debug)]
pub struct Field {
    pub p: u32,
    pub n: u32,
    pub size: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    pub primitive: u32,
}

fn digits(mut x: u32, p: u32, n: u32) -> Vec<u32> {
    (0..n)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

// product of two polynomials of degree < n, reduced by the monic modulus
fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let n = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * n];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for deg in (n..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        for k in 0..=n {
            let idx = deg - n + k;
            prod[idx] = (prod[idx] + (p - c) * modulus[k]) % p;
        }
    }
    prod.truncate(n);
    prod
}

fn poly_is_irreducible(modulus: &[u32], p: u32) -> bool {
    let n = modulus.len() - 1;
    if n == 1 {
        return true;
    }
    // x is a generator of F[x]/(f) as a field iff x^(p^n) = x and no smaller
    // subfield contains it; simpler: check there are no zero divisors.
    let size = p.pow(n as u32);
    for a in 1..size {
        let da = digits(a, p, n as u32);
        for b in 1..size {
            let db = digits(b, p, n as u32);
            if poly_mulmod(&da, &db, modulus, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl Field {
    pub fn new(p: u32, n: u32) -> Result<Field> {
        if !is_prime(p as u64) || n == 0 {
            return Err(GroupError::InvalidSpec(format!(
                "GF({p}^{n}) needs a prime p and n >= 1"
            )));
        }
        let size = p
            .checked_pow(n)
            .filter(|&s| s <= 1024)
            .ok_or_else(|| GroupError::InvalidSpec(format!("GF({p}^{n}) is too large")))?;
        let nn = n as usize;
        // first monic irreducible modulus in lexicographic order of low coefficients
        let modulus = (0..size)
            .map(|low| {
                let mut m = digits(low, p, n);
                m.push(1);
                m
            })
            .find(|m| poly_is_irreducible(m, p))
            .expect("irreducible polynomials exist in every degree");
        let mut add = vec![0u32; (size * size) as usize];
        let mut mul = vec![0u32; (size * size) as usize];
        for a in 0..size {
            let da = digits(a, p, n);
            for b in 0..size {
                let db = digits(b, p, n);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * size + b) as usize] = undigits(&sum, p);
                let prod = if nn == 1 {
                    vec![(da[0] * db[0]) % p]
                } else {
                    poly_mulmod(&da, &db, &modulus, p)
                };
                mul[(a * size + b) as usize] = undigits(&prod, p);
            }
        }
        let mut field = Field {
            p,
            n,
            size,
            add,
            mul,
            primitive: 0,
        };
        field.primitive = (1..size)
            .find(|&a| field.mult_order(a) == size - 1)
            .expect("multiplicative group is cyclic");
        Ok(field)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.size + b) as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.size + b) as usize]
    }

    pub fn pow(&self, a: u32, e: u32) -> u32 {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    pub fn mult_order(&self, a: u32) -> u32 {
        if a == 0 {
            return 0;
        }
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// The Frobenius automorphism `x ↦ x^p`.
    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p)
    }
}

/// Square matrix over GF(p), rows of residues.
pub type Matrix = Vec<Vec<u32>>;

/// Row vector times matrix, on encoded vectors.
pub fn apply_matrix(m: &Matrix, v: u32, p: u32) -> u32 {
    let n = m.len();
    let dv = digits(v, p, n as u32);
    let out: Vec<u32> = (0..n)
        .map(|j| (0..n).map(|i| dv[i] * m[i][j]).sum::<u32>() % p)
        .collect();
    undigits(&out, p)
}

pub fn add_vectors(a: u32, b: u32, p: u32, n: u32) -> u32 {
    let da = digits(a, p, n);
    let db = digits(b, p, n);
    let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
    undigits(&s, p)
}

pub fn identity_matrix(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix, p: u32) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum::<u32>() % p)
                .collect()
        })
        .collect()
}

pub fn determinant(m: &Matrix, p: u32) -> u32 {
    let n = m.len();
    let mut a: Vec<Vec<i64>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i64).collect())
        .collect();
    let p = p as i64;
    let inv = |x: i64| -> i64 {
        let mut r = 1;
        for _ in 0..p - 2 {
            r = r * x % p;
        }
        r
    };
    let mut det = 1i64;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| a[r][col] % p != 0) else {
            return 0;
        };
        if pivot != col {
            a.swap(pivot, col);
            det = (p - det) % p;
        }
        det = det * a[col][col] % p;
        let iv = inv(a[col][col]);
        for r in col + 1..n {
            let f = a[r][col] * iv % p;
            for c in col..n {
                a[r][c] = ((a[r][c] - f * a[col][c]) % p + p) % p;
            }
        }
    }
    det as u32
}

/// Generators of GL(n, p): elementary transvections and one diagonal matrix.
pub fn gl_generators(p: u32, n: usize) -> Vec<Matrix> {
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut m = identity_matrix(n);
                m[i][j] = 1;
                gens.push(m);
            }
        }
    }
    if p > 2 {
        let primitive = (2..p)
            .find(|&a| (1..p - 1).all(|e| (0..e).fold(1u64, |acc, _| acc * a as u64 % p as u64) != 1))
            .expect("prime field has a primitive root");
        let mut m = identity_matrix(n);
        m[0][0] = primitive;
        gens.push(m);
    }
    gens
}

/// Generators of SL(n, p): elementary transvections.
pub fn sl_generators(p: u32, n: usize) -> Vec<Matrix> {
    let _ = p;
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut m = identity_matrix(n);
                m[i][j] = 1;
                gens.push(m);
            }
        }
    }
    gens
}

/// All `n×n` matrices over GF(p); only for tiny `p^(n²)`.
pub fn all_matrices(p: u32, n: usize) -> impl Iterator<Item = Matrix> {
    let total = (p as u64).pow((n * n) as u32);
    (0..total).map(move |mut code| {
        (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let d = (code % p as u64) as u32;
                        code /= p as u64;
                        d
                    })
                    .collect()
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf9_and_gf8() {
        let f9 = Field::new(3, 2).unwrap();
        assert_eq!(f9.mult_order(f9.primitive), 8);
        let f8 = Field::new(2, 3).unwrap();
        assert_eq!(f8.mult_order(f8.primitive), 7);
        // Frobenius has order n
        let f25 = Field::new(5, 2).unwrap();
        for a in 0..25 {
            assert_eq!(f25.frobenius(f25.frobenius(a)), a);
        }
        assert!(Field::new(4, 1).is_err());
    }

    #[test]
    fn field_axioms_gf4() {
        let f = Field::new(2, 2).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    assert_eq!(
                        f.mul(a, f.add(b, c)),
                        f.add(f.mul(a, b), f.mul(a, c))
                    );
                }
            }
        }
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&vec![vec![1, 1], vec![0, 1]], 3), 1);
        assert_eq!(determinant(&vec![vec![0, 1], vec![1, 0]], 3), 2);
        assert_eq!(determinant(&vec![vec![1, 2], vec![2, 4]], 5), 0);
    }
}
