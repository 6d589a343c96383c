use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{FiniteGroupSpec, Perm};
use crate::abgrp::IntMatrix;
use crate::{Error, Result};

/// Square matrix over `Z/m`, row-major, entries in `[0, m)`.
pub type ModMatrix = Vec<Vec<u64>>;

/// A group of invertible `n x n` matrices over `Z/m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixGroupSpec {
    pub n: usize,
    pub modulus: u64,
    pub generators: Vec<ModMatrix>,
}

impl MatrixGroupSpec {
    pub fn new(n: usize, modulus: u64, generators: Vec<ModMatrix>) -> Result<Self> {
        let spec = MatrixGroupSpec { n, modulus, generators };
        spec.validate()?;
        Ok(spec)
    }

    /// Generators of `GL_n(Z/m)`: elementary transvections plus
    /// `diag(u, 1, .., 1)` for every unit `u`.
    pub fn general_linear(n: usize, modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::invalid("modulus must be at least 2"));
        }
        let mut gens = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let mut e = identity(n);
                    e[i][j] = 1;
                    gens.push(e);
                }
            }
        }
        if n > 0 {
            for u in 2..modulus {
                if u.gcd(&modulus) == 1 {
                    let mut d = identity(n);
                    d[0][0] = u;
                    gens.push(d);
                }
            }
        }
        Self::new(n, modulus, gens)
    }

    pub fn validate(&self) -> Result<()> {
        if self.modulus < 2 {
            return Err(Error::invalid("modulus must be at least 2"));
        }
        for g in &self.generators {
            if g.len() != self.n || g.iter().any(|r| r.len() != self.n) {
                return Err(Error::invalid(format!("generator {g:?} is not {0}x{0}", self.n)));
            }
            if g.iter().flatten().any(|&x| x >= self.modulus) {
                return Err(Error::invalid(format!(
                    "generator {g:?} has entries outside Z/{}",
                    self.modulus
                )));
            }
            if !is_invertible(g, self.modulus) {
                return Err(Error::invalid(format!(
                    "generator {g:?} is not invertible mod {}",
                    self.modulus
                )));
            }
        }
        Ok(())
    }

    /// Number of vectors in `(Z/m)^n`, or `None` on overflow.
    pub fn vector_count(&self) -> Option<usize> {
        (self.modulus as usize).checked_pow(self.n as u32)
    }

    /// Faithful permutation action on the vectors of `(Z/m)^n`.
    pub fn to_permutation(&self, cap: usize) -> Result<FiniteGroupSpec> {
        let degree = self
            .vector_count()
            .filter(|&d| d <= cap)
            .ok_or(Error::CapExceeded { cap })?;
        let generators = self
            .generators
            .iter()
            .map(|g| matrix_to_perm(g, self.modulus))
            .collect();
        Ok(FiniteGroupSpec {
            degree,
            generators,
            label: Some(format!("GL{}(Z/{})", self.n, self.modulus)),
        })
    }
}

pub fn identity(n: usize) -> ModMatrix {
    (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect()
}

pub fn determinant_mod(g: &ModMatrix, modulus: u64) -> u64 {
    let n = g.len();
    let data: Vec<i64> = g.iter().flatten().map(|&x| x as i64).collect();
    let det = IntMatrix::from_i64(n, n, &data).determinant();
    let m = BigInt::from(modulus);
    let r = det.mod_floor(&m);
    r.try_into().expect("residue fits")
}

pub fn is_invertible(g: &ModMatrix, modulus: u64) -> bool {
    determinant_mod(g, modulus).gcd(&modulus) == 1
}

/// Vector index: coordinate `i` has weight `m^i`.
pub fn vector_index(v: &[u64], modulus: u64) -> usize {
    v.iter()
        .rev()
        .fold(0usize, |acc, &x| acc * modulus as usize + x as usize)
}

pub fn vector_from_index(mut idx: usize, n: usize, modulus: u64) -> Vec<u64> {
    let m = modulus as usize;
    (0..n)
        .map(|_| {
            let x = idx % m;
            idx /= m;
            x as u64
        })
        .collect()
}

/// The permutation `v -> g v` of `(Z/m)^n`.
pub fn matrix_to_perm(g: &ModMatrix, modulus: u64) -> Perm {
    let n = g.len();
    let count = (modulus as usize).pow(n as u32);
    let images = (0..count)
        .map(|idx| {
            let v = vector_from_index(idx, n, modulus);
            let w: Vec<u64> = g
                .iter()
                .map(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum::<u64>() % modulus)
                .collect();
            vector_index(&w, modulus) as u32
        })
        .collect();
    Perm::from_images(images).expect("invertible matrices act bijectively")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingrp::{abelianization, DEFAULT_CAP};

    /// Brute force: count all invertible n x n matrices mod m.
    fn count_invertible(n: usize, m: u64) -> usize {
        let total = (m as usize).pow((n * n) as u32);
        (0..total)
            .filter(|&code| {
                let entries = vector_from_index(code, n * n, m);
                let g: ModMatrix = entries.chunks(n).map(<[u64]>::to_vec).collect();
                is_invertible(&g, m)
            })
            .count()
    }

    #[test]
    fn brute_force_orders() {
        assert_eq!(count_invertible(2, 2), 6);
        assert_eq!(count_invertible(3, 2), 168);
        assert_eq!(count_invertible(1, 3), 2);
        assert_eq!(count_invertible(2, 4), 96);
    }

    #[test]
    fn permutation_form_orders() {
        for (n, m, order, degree) in [(1, 2, 1, 2), (2, 2, 6, 4), (1, 3, 2, 3), (3, 2, 168, 8), (2, 4, 96, 16)] {
            let spec = MatrixGroupSpec::general_linear(n, m).unwrap();
            let perm = spec.to_permutation(DEFAULT_CAP).unwrap();
            assert_eq!(perm.degree, degree);
            assert_eq!(perm.enumerate(DEFAULT_CAP).unwrap().order(), order, "GL{n}(Z/{m})");
        }
    }

    #[test]
    fn gl3_f2_is_perfect() {
        let spec = MatrixGroupSpec::general_linear(3, 2)
            .unwrap()
            .to_permutation(DEFAULT_CAP)
            .unwrap();
        let ab = abelianization(&spec, DEFAULT_CAP).unwrap();
        assert!(ab.group.is_trivial());
        assert_eq!(ab.commutator_order(), 168);
    }

    #[test]
    fn action_is_a_homomorphism() {
        let a: ModMatrix = vec![vec![1, 1], vec![0, 1]];
        let b: ModMatrix = vec![vec![0, 1], vec![1, 0]];
        let ab: ModMatrix = vec![vec![1, 1], vec![1, 0]];
        assert_eq!(
            matrix_to_perm(&a, 2).compose(&matrix_to_perm(&b, 2)),
            matrix_to_perm(&ab, 2)
        );
    }

    #[test]
    fn rejects_singular_and_oversized() {
        assert!(MatrixGroupSpec::new(2, 2, vec![vec![vec![1, 1], vec![1, 1]]]).is_err());
        assert!(MatrixGroupSpec::new(1, 4, vec![vec![vec![2]]]).is_err());
        let spec = MatrixGroupSpec::general_linear(3, 3).unwrap();
        assert!(matches!(spec.to_permutation(26), Err(Error::CapExceeded { .. })));
    }
}
