use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A permutation of `{0, .., degree-1}` stored by its images.
///
/// Composition follows function notation: `p.compose(q)` applies `q` first.
/// Ordering is lexicographic on the image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::invalid(format!("{images:?} is not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Perm(images))
    }

    /// Builds a permutation from disjoint cycles, e.g. `[[0, 1], [2, 3, 4]]`.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                let b = cycle[(i + 1) % cycle.len()];
                if a as usize >= degree || b as usize >= degree {
                    return Err(Error::invalid(format!("cycle {cycle:?} exceeds degree {degree}")));
                }
                if touched[a as usize] {
                    return Err(Error::invalid(format!("cycles {cycles:?} are not disjoint")));
                }
                touched[a as usize] = true;
                images[a as usize] = b;
            }
        }
        Ok(Perm(images))
    }

    pub fn transposition(degree: usize, a: u32, b: u32) -> Self {
        let mut p = Self::identity(degree);
        p.0.swap(a as usize, b as usize);
        p
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn apply(&self, point: u32) -> u32 {
        self.0[point as usize]
    }

    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self * other * self^-1 * other^-1`
    pub fn commutator(&self, other: &Perm) -> Perm {
        self.compose(other).compose(&self.inverse()).compose(&other.inverse())
    }

    /// `self * other * self^-1`
    pub fn conjugate(&self, other: &Perm) -> Perm {
        self.compose(other).compose(&self.inverse())
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.0[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// +1 for even, -1 for odd permutations.
    pub fn sign(&self) -> i32 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let s: Vec<String> = c.iter().map(ToString::to_string).collect();
            write!(f, "({})", s.join(" "))?;
        }
        Ok(())
    }
}
