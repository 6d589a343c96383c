//! Truncated skeletal symmetric monoidal groupoids with free `π₀ = ℕ^k`.
//!
//! Object `x` is a multidegree; `g + x` is laid out as the blocks of `x`
//! followed by the block of `g`, so translations append at the end.

mod builtin;
mod enumerated;

pub use builtin::{fin_bij, free_mod, nat};
pub use enumerated::{check_condition_star, EnumeratedGroupoid, StarCertificate, StarReport};

use serde::{Deserialize, Serialize};

use crate::fingrp::{FiniteGroupSpec, Perm};
use crate::monoid::FiniteCommMonoid;
use crate::{Error, Result};

pub type Multidegree = Vec<u32>;

pub fn total_degree(x: &[u32]) -> usize {
    x.iter().map(|&d| d as usize).sum()
}

/// `x + e_g`
pub fn shift(x: &[u32], g: usize) -> Multidegree {
    let mut y = x.to_vec();
    y[g] += 1;
    y
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectData {
    pub degree: Multidegree,
    pub automorphisms: FiniteGroupSpec,
}

/// `τ_{g,x}` given by the images of the generators of `Aut(x)` in `Aut(g + x)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Translation {
    pub generator: usize,
    pub source: Multidegree,
    pub images: Vec<Perm>,
}

/// `σ_{g,g',x} ∈ Aut(g + g' + x)` exchanging the last two blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Symmetry {
    pub first: usize,
    pub second: usize,
    pub object: Multidegree,
    pub element: Perm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SMGroupoidPres {
    pub generators: Vec<String>,
    pub truncation: usize,
    pub objects: Vec<ObjectData>,
    pub translations: Vec<Translation>,
    pub symmetries: Vec<Symmetry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl SMGroupoidPres {
    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// All multidegrees of total degree at most `n`, by total degree, then lexicographically.
    pub fn multidegrees(k: usize, n: usize) -> Vec<Multidegree> {
        let mut out: Vec<Multidegree> = vec![vec![0; k]];
        let mut frontier = out.clone();
        for _ in 0..n {
            let mut next: Vec<Multidegree> = frontier.iter().flat_map(|x| (0..k).map(move |g| shift(x, g))).collect();
            next.sort();
            next.dedup();
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    pub fn object(&self, x: &[u32]) -> Option<&ObjectData> {
        self.objects.iter().find(|o| o.degree == x)
    }

    pub fn automorphisms(&self, x: &[u32]) -> Option<&FiniteGroupSpec> {
        self.object(x).map(|o| &o.automorphisms)
    }

    pub fn translation(&self, g: usize, x: &[u32]) -> Option<&Translation> {
        self.translations.iter().find(|t| t.generator == g && t.source == x)
    }

    /// The stored witness, or the identity when none is listed.
    pub fn symmetry(&self, g: usize, h: usize, x: &[u32]) -> Option<Perm> {
        let y = shift(&shift(x, g), h);
        let degree = self.automorphisms(&y)?.degree;
        Some(
            self.symmetries
                .iter()
                .find(|s| s.first == g && s.second == h && s.object == x)
                .map(|s| s.element.clone())
                .unwrap_or_else(|| Perm::identity(degree)),
        )
    }

    /// Shape checks that need no enumeration.
    pub fn check_shape(&self) -> Result<()> {
        let k = self.generators.len();
        if k == 0 {
            return Err(Error::invalid("at least one object generator is required"));
        }
        if self.truncation == 0 {
            return Err(Error::invalid("truncation must be at least 1"));
        }
        let n = self.truncation;
        let expected = Self::multidegrees(k, n);
        for x in &expected {
            let o = self
                .object(x)
                .ok_or_else(|| Error::invalid(format!("missing automorphism group for object {x:?}")))?;
            o.automorphisms.validate()?;
        }
        if self.objects.len() != expected.len() {
            return Err(Error::invalid(format!(
                "expected {} objects up to degree {n}, found {}",
                expected.len(),
                self.objects.len()
            )));
        }
        for x in expected.iter().filter(|x| total_degree(x) < n) {
            for g in 0..k {
                let t = self
                    .translation(g, x)
                    .ok_or_else(|| Error::invalid(format!("missing translation for generator {g} at {x:?}")))?;
                let src = self.automorphisms(x).expect("checked");
                let tgt = self.automorphisms(&shift(x, g)).expect("checked");
                if t.images.len() != src.generators.len() {
                    return Err(Error::NotAHomomorphism(format!(
                        "translation {g} at {x:?} lists {} images for {} generators",
                        t.images.len(),
                        src.generators.len()
                    )));
                }
                if t.images.iter().any(|p| p.degree() != tgt.degree) {
                    return Err(Error::NotAHomomorphism(format!(
                        "translation {g} at {x:?} has images of the wrong degree"
                    )));
                }
            }
        }
        for t in &self.translations {
            if t.generator >= k || t.source.len() != k || total_degree(&t.source) >= n {
                return Err(Error::invalid(format!(
                    "translation {} at {:?} is out of range",
                    t.generator, t.source
                )));
            }
        }
        for s in &self.symmetries {
            if s.first >= k || s.second >= k || s.object.len() != k || total_degree(&s.object) + 2 > n {
                return Err(Error::invalid(format!("symmetry at {:?} is out of range", s.object)));
            }
            let y = shift(&shift(&s.object, s.first), s.second);
            if s.element.degree() != self.automorphisms(&y).expect("checked").degree {
                return Err(Error::invalid(format!(
                    "symmetry at {:?} has the wrong degree",
                    s.object
                )));
            }
        }
        Ok(())
    }

    /// The same data cut down to total degree `n`.
    pub fn truncated(&self, n: usize) -> Result<SMGroupoidPres> {
        if n == 0 || n > self.truncation {
            return Err(Error::invalid(format!(
                "cannot truncate degree {} data at {n}",
                self.truncation
            )));
        }
        Ok(SMGroupoidPres {
            generators: self.generators.clone(),
            truncation: n,
            objects: self
                .objects
                .iter()
                .filter(|o| total_degree(&o.degree) <= n)
                .cloned()
                .collect(),
            translations: self
                .translations
                .iter()
                .filter(|t| total_degree(&t.source) < n)
                .cloned()
                .collect(),
            symmetries: self
                .symmetries
                .iter()
                .filter(|s| total_degree(&s.object) + 2 <= n)
                .cloned()
                .collect(),
            label: self.label.clone(),
        })
    }
}

/// A finite commutative monoid viewed as a groupoid with trivial automorphisms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscreteGroupoid {
    pub monoid: FiniteCommMonoid,
}

impl DiscreteGroupoid {
    pub fn object_count(&self) -> usize {
        self.monoid.size()
    }

    pub fn automorphisms(&self, _x: usize) -> FiniteGroupSpec {
        FiniteGroupSpec::trivial(0)
    }
}

pub fn discrete_as_groupoid(m: &FiniteCommMonoid) -> DiscreteGroupoid {
    DiscreteGroupoid { monoid: m.clone() }
}

/// Either kind of symmetric monoidal input accepted downstream.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "input", rename_all = "kebab-case")]
pub enum SmInput {
    Groupoid(SMGroupoidPres),
    Discrete(DiscreteGroupoid),
}

impl SmInput {
    pub fn truncation(&self) -> Option<usize> {
        match self {
            SmInput::Groupoid(p) => Some(p.truncation),
            SmInput::Discrete(_) => None,
        }
    }
}

impl From<SMGroupoidPres> for SmInput {
    fn from(p: SMGroupoidPres) -> Self {
        SmInput::Groupoid(p)
    }
}

impl From<FiniteCommMonoid> for SmInput {
    fn from(m: FiniteCommMonoid) -> Self {
        SmInput::Discrete(discrete_as_groupoid(&m))
    }
}
