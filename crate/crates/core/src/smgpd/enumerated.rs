use std::collections::HashMap;

use serde::Serialize;

use super::{shift, total_degree, Multidegree, SMGroupoidPres};
use crate::fingrp::{Group, Perm};
use crate::{Error, Result};

/// A presentation with every automorphism group enumerated and every
/// translation tabulated on group elements.
#[derive(Clone, Debug)]
pub struct EnumeratedGroupoid {
    pres: SMGroupoidPres,
    objects: Vec<Multidegree>,
    index: HashMap<Multidegree, usize>,
    groups: Vec<Group>,
    /// `tau[g][i][a]`: image of element `a` of `Aut(objects[i])` in `Aut(objects[i] + g)`.
    tau: Vec<Vec<Option<Vec<usize>>>>,
}

impl EnumeratedGroupoid {
    /// Enumerates all groups and checks that every translation is a
    /// homomorphism into the right group and that exchange coherence holds.
    pub fn new(pres: &SMGroupoidPres, cap: usize) -> Result<Self> {
        pres.check_shape()?;
        let k = pres.generator_count();
        let objects = SMGroupoidPres::multidegrees(k, pres.truncation);
        let index: HashMap<Multidegree, usize> = objects.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        let groups: Vec<Group> = objects
            .iter()
            .map(|x| pres.automorphisms(x).expect("shape checked").enumerate(cap))
            .collect::<Result<_>>()?;
        let mut tau = vec![vec![None; objects.len()]; k];
        for (i, x) in objects.iter().enumerate() {
            if total_degree(x) >= pres.truncation {
                continue;
            }
            for (g, row) in tau.iter_mut().enumerate() {
                let t = pres.translation(g, x).expect("shape checked");
                let target = &groups[index[&shift(x, g)]];
                let mut table = groups[i].hom_table(&t.images)?;
                if table.is_empty() {
                    table.push(Perm::identity(target.degree()));
                }
                let mapped = table
                    .iter()
                    .map(|p| {
                        target.index_of(p).ok_or_else(|| {
                            Error::NotAHomomorphism(format!(
                                "translation {g} at {x:?} leaves the automorphism group of {:?}",
                                shift(x, g)
                            ))
                        })
                    })
                    .collect::<Result<Vec<usize>>>()?;
                row[i] = Some(mapped);
            }
        }
        let e = EnumeratedGroupoid {
            pres: pres.clone(),
            objects,
            index,
            groups,
            tau,
        };
        e.check_coherence()?;
        Ok(e)
    }

    fn check_coherence(&self) -> Result<()> {
        let k = self.generator_count();
        for (i, x) in self.objects.iter().enumerate() {
            if total_degree(x) + 2 > self.truncation() {
                continue;
            }
            for g in 0..k {
                for h in 0..k {
                    let z = self.index[&shift(&shift(x, g), h)];
                    let sigma = self.pres.symmetry(g, h, x).expect("object exists");
                    let s = self.groups[z].index_of(&sigma).ok_or_else(|| {
                        Error::invalid(format!("symmetry ({g}, {h}) at {x:?} is not an automorphism"))
                    })?;
                    let s_inv = self.groups[z].inverse(s);
                    for gen in self.groups[i].generators() {
                        let a = self.groups[i].index_of(gen).expect("generator");
                        let (y1, b1) = self.translate(g, i, a).expect("in range");
                        let (_, lhs) = self.translate(h, y1, b1).expect("in range");
                        let (y2, b2) = self.translate(h, i, a).expect("in range");
                        let (_, c) = self.translate(g, y2, b2).expect("in range");
                        let gz = &self.groups[z];
                        let rhs = gz.mul(gz.mul(s, c), s_inv);
                        if lhs != rhs {
                            return Err(Error::invalid(format!(
                                "exchange coherence fails for generators ({g}, {h}) at {x:?} on {gen}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn presentation(&self) -> &SMGroupoidPres {
        &self.pres
    }

    pub fn truncation(&self) -> usize {
        self.pres.truncation
    }

    pub fn generator_count(&self) -> usize {
        self.pres.generator_count()
    }

    pub fn objects(&self) -> &[Multidegree] {
        &self.objects
    }

    pub fn object_index(&self, x: &[u32]) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn group(&self, i: usize) -> &Group {
        &self.groups[i]
    }

    /// Element table of `τ_{g, objects[i]}`, if the target is within the truncation.
    pub fn tau(&self, g: usize, i: usize) -> Option<&[usize]> {
        self.tau[g][i].as_deref()
    }

    /// `(index of g + x, τ_{g,x}(a))`
    pub fn translate(&self, g: usize, i: usize, a: usize) -> Option<(usize, usize)> {
        let t = self.tau(g, i)?;
        Some((self.index[&shift(&self.objects[i], g)], t[a]))
    }

    pub fn is_single_generator(&self) -> bool {
        self.generator_count() == 1
    }

    pub fn require_single_generator(&self, what: &str) -> Result<()> {
        if self.is_single_generator() {
            Ok(())
        } else {
            Err(Error::Unsupported(format!("{what} needs a single object generator")))
        }
    }

    /// `T^k(a)` for `a ∈ Aut(n)`, landing in `Aut(n + k)`. Single generator only.
    pub fn lift(&self, n: usize, k: usize, a: usize) -> usize {
        (n..n + k).fold(a, |a, j| self.tau[0][j].as_ref().expect("within truncation")[a])
    }

    /// Image in `Aut(m)` of a permutation of the `m` blocks of `x^m`, built
    /// from the symmetry witnesses. Single generator only.
    pub fn symmetry_image(&self, m: usize, pi: &Perm) -> Result<usize> {
        self.require_single_generator("the symmetric group action")?;
        if pi.degree() != m || m > self.truncation() {
            return Err(Error::invalid(format!("cannot realize {pi} on {m} blocks")));
        }
        // Reduce pi to the identity by removing descents on the right.
        let mut images = pi.images().to_vec();
        let mut word = Vec::new();
        while let Some(i) = (0..m.saturating_sub(1)).find(|&i| images[i] > images[i + 1]) {
            images.swap(i, i + 1);
            word.push(i);
        }
        let gm = &self.groups[m];
        let mut acc = gm.identity();
        for &i in word.iter().rev() {
            let sigma = self.pres.symmetry(0, 0, &[i as u32]).expect("within truncation");
            let s = self.groups[i + 2].index_of(&sigma).expect("coherence checked");
            acc = gm.mul(acc, self.lift(i + 2, m - i - 2, s));
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarCertificate {
    pub generator: usize,
    pub object: Multidegree,
    pub element: Perm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarReport {
    pub holds: bool,
    pub certificate: Option<StarCertificate>,
}

impl StarReport {
    pub fn into_result(self) -> Result<()> {
        match self.certificate {
            None => Ok(()),
            Some(c) => Err(Error::ConditionStarViolated {
                generator: c.generator,
                object: c.object,
                element: c.element.images().to_vec(),
            }),
        }
    }
}

/// Checks that every translation is injective; on failure reports the first
/// nontrivial kernel element found.
pub fn check_condition_star(s: &EnumeratedGroupoid) -> StarReport {
    for (i, x) in s.objects().iter().enumerate() {
        for g in 0..s.generator_count() {
            let Some(t) = s.tau(g, i) else { continue };
            let target = s.group(s.object_index(&shift(x, g)).expect("in range"));
            let id = s.group(i).identity();
            if let Some(a) = (0..t.len()).find(|&a| a != id && t[a] == target.identity()) {
                return StarReport {
                    holds: false,
                    certificate: Some(StarCertificate {
                        generator: g,
                        object: x.clone(),
                        element: s.group(i).element(a).clone(),
                    }),
                };
            }
        }
    }
    StarReport {
        holds: true,
        certificate: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingrp::{abelianization, determinant_mod, FiniteGroupSpec, MatrixGroupSpec, DEFAULT_CAP};
    use crate::smgpd::{fin_bij, free_mod, nat, ObjectData, Symmetry, Translation};

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn fin_bij_orders() {
        let s = EnumeratedGroupoid::new(&fin_bij(4), DEFAULT_CAP).unwrap();
        for n in 0..=4 {
            assert_eq!(s.group(n).order(), factorial(n));
        }
        assert!(check_condition_star(&s).holds);
    }

    #[test]
    fn free_mod_orders() {
        let s = EnumeratedGroupoid::new(&free_mod(2, 3, DEFAULT_CAP).unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!(s.group(2).order(), 6);
        assert_eq!(s.group(3).order(), 168);
        assert!(check_condition_star(&s).holds);
        let s = EnumeratedGroupoid::new(&free_mod(3, 1, DEFAULT_CAP).unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!(s.group(1).order(), 2);
        assert!(free_mod(3, 3, 26).is_err());
    }

    #[test]
    fn nat_is_trivial() {
        let s = EnumeratedGroupoid::new(&nat(3), DEFAULT_CAP).unwrap();
        assert!((0..=3).all(|n| s.group(n).order() == 1));
    }

    fn trivial_translations() -> SMGroupoidPres {
        let z2 = FiniteGroupSpec::new(2, vec![Perm::transposition(2, 0, 1)]).unwrap();
        SMGroupoidPres {
            generators: vec!["x".into()],
            truncation: 2,
            objects: (0..=2u32)
                .map(|n| ObjectData {
                    degree: vec![n],
                    automorphisms: z2.clone(),
                })
                .collect(),
            translations: (0..2u32)
                .map(|n| Translation {
                    generator: 0,
                    source: vec![n],
                    images: vec![Perm::identity(2)],
                })
                .collect(),
            symmetries: vec![Symmetry {
                first: 0,
                second: 0,
                object: vec![0],
                element: Perm::identity(2),
            }],
            label: None,
        }
    }

    #[test]
    fn star_failure_certificate() {
        let s = EnumeratedGroupoid::new(&trivial_translations(), DEFAULT_CAP).unwrap();
        let r = check_condition_star(&s);
        assert!(!r.holds);
        let c = r.certificate.clone().unwrap();
        assert_eq!(c.element, Perm::transposition(2, 0, 1));
        assert_eq!(c.object, vec![0]);
        assert!(matches!(r.into_result(), Err(Error::ConditionStarViolated { .. })));
    }

    #[test]
    fn rejects_non_homomorphic_translation() {
        // (0 1) has order 2, a 3-cycle does not.
        let mut bad = fin_bij(3);
        bad.translations[2].images[0] = Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        assert!(matches!(
            EnumeratedGroupoid::new(&bad, DEFAULT_CAP),
            Err(Error::NotAHomomorphism(_))
        ));
    }

    #[test]
    fn rejects_incoherent_symmetry() {
        let mut p = fin_bij(4);
        // Conjugation by (0 2)(1 3) moves τ(τ((0 1))) = (0 1) to (2 3).
        p.symmetries[2].element = Perm::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap();
        assert!(EnumeratedGroupoid::new(&p, DEFAULT_CAP).is_err());
    }

    #[test]
    fn fin_bij_symmetry_image_is_identity_map() {
        let s = EnumeratedGroupoid::new(&fin_bij(4), DEFAULT_CAP).unwrap();
        for m in 0..=4 {
            for (a, p) in s.group(m).elements().iter().enumerate() {
                assert_eq!(s.symmetry_image(m, p).unwrap(), a, "{p} in Σ_{m}");
            }
        }
    }

    #[test]
    fn fin_bij_translation_preserves_sign() {
        let s = EnumeratedGroupoid::new(&fin_bij(5), DEFAULT_CAP).unwrap();
        for n in 0..5 {
            let t = s.tau(0, n).unwrap();
            for (a, p) in s.group(n).elements().iter().enumerate() {
                assert_eq!(s.group(n + 1).element(t[a]).sign(), p.sign());
            }
        }
        for n in 2..5 {
            let ab = abelianization(&FiniteGroupSpec::symmetric(n), DEFAULT_CAP).unwrap();
            assert_eq!(ab.group.order().unwrap(), 2u32.into());
        }
    }

    #[test]
    fn free_mod_translation_preserves_determinant() {
        // Recover each matrix from its action on basis vectors.
        let m = 3u64;
        let s = EnumeratedGroupoid::new(&free_mod(m, 2, DEFAULT_CAP).unwrap(), DEFAULT_CAP).unwrap();
        let matrix_of = |n: usize, p: &Perm| {
            let mut a = vec![vec![0u64; n]; n];
            for j in 0..n {
                let col = crate::fingrp::Perm::apply(p, (m as u32).pow(j as u32));
                let mut c = col as u64;
                for row in a.iter_mut() {
                    row[j] = c % m;
                    c /= m;
                }
            }
            a
        };
        for n in 1..2 {
            let t = s.tau(0, n).unwrap();
            for (a, p) in s.group(n).elements().iter().enumerate() {
                let q = s.group(n + 1).element(t[a]);
                assert_eq!(
                    determinant_mod(&matrix_of(n, p), m),
                    determinant_mod(&matrix_of(n + 1, q), m)
                );
            }
        }
        let _ = MatrixGroupSpec::general_linear(2, m).unwrap();
    }

    #[test]
    fn multi_generator_product() {
        // Two generators with trivial groups behave like ℕ².
        let k = 2;
        let objects = SMGroupoidPres::multidegrees(k, 2);
        let p = SMGroupoidPres {
            generators: vec!["a".into(), "b".into()],
            truncation: 2,
            objects: objects
                .iter()
                .map(|x| ObjectData {
                    degree: x.clone(),
                    automorphisms: FiniteGroupSpec::trivial(0),
                })
                .collect(),
            translations: objects
                .iter()
                .filter(|x| total_degree(x) < 2)
                .flat_map(|x| {
                    (0..k).map(move |g| Translation {
                        generator: g,
                        source: x.clone(),
                        images: vec![],
                    })
                })
                .collect(),
            symmetries: vec![],
            label: None,
        };
        let s = EnumeratedGroupoid::new(&p, DEFAULT_CAP).unwrap();
        assert_eq!(s.objects().len(), 6);
        assert!(check_condition_star(&s).holds);
        assert!(s.symmetry_image(2, &Perm::identity(2)).is_err());
    }
}
