use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::Perm;
use crate::abgrp::{cokernel_with_map, AbPresentation, FinAbGroup, IntMatrix, Quotient};
use crate::{Error, Result};

pub const DEFAULT_CAP: usize = 1_000_000;

/// A finite permutation group given by generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroupSpec {
    pub degree: usize,
    pub generators: Vec<Perm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl FiniteGroupSpec {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        let spec = FiniteGroupSpec {
            degree,
            generators,
            label: None,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn trivial(degree: usize) -> Self {
        FiniteGroupSpec {
            degree,
            generators: Vec::new(),
            label: None,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// The symmetric group on `n` points, generated by `(0 1)` and the `n`-cycle.
    pub fn symmetric(n: usize) -> Self {
        let mut generators = Vec::new();
        if n >= 2 {
            generators.push(Perm::transposition(n, 0, 1));
        }
        if n >= 3 {
            let cycle: Vec<u32> = (0..n as u32).collect();
            generators.push(Perm::from_cycles(n, &[cycle]).expect("valid cycle"));
        }
        FiniteGroupSpec {
            degree: n,
            generators,
            label: Some(format!("S{n}")),
        }
    }

    pub fn validate(&self) -> Result<()> {
        for g in &self.generators {
            if g.degree() != self.degree {
                return Err(Error::invalid(format!(
                    "generator {g} has degree {}, expected {}",
                    g.degree(),
                    self.degree
                )));
            }
            Perm::from_images(g.images().to_vec())?;
        }
        Ok(())
    }

    pub fn enumerate(&self, cap: usize) -> Result<Group> {
        Group::enumerate(self, cap)
    }
}

/// An enumerated finite permutation group.
///
/// Elements are sorted lexicographically by image list, so element indices
/// are deterministic. A breadth-first spanning tree of the left Cayley graph
/// is kept for evaluating homomorphisms given on generators.
#[derive(Clone, Debug)]
pub struct Group {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    /// (element, parent, generator) with `element = gen * parent`, in BFS order.
    tree: Vec<(usize, usize, usize)>,
    identity: usize,
}

impl Group {
    pub fn enumerate(spec: &FiniteGroupSpec, cap: usize) -> Result<Group> {
        spec.validate()?;
        if cap == 0 {
            return Err(Error::CapExceeded { cap });
        }
        let id = Perm::identity(spec.degree);
        let mut found: Vec<Perm> = vec![id.clone()];
        let mut seen: HashMap<Perm, usize> = HashMap::from([(id, 0)]);
        let mut tree_raw = vec![(0usize, 0usize, usize::MAX)];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (gi, g) in spec.generators.iter().enumerate() {
                let y = g.compose(&found[x]);
                if !seen.contains_key(&y) {
                    if found.len() == cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    let idx = found.len();
                    seen.insert(y.clone(), idx);
                    found.push(y);
                    tree_raw.push((idx, x, gi));
                    queue.push_back(idx);
                }
            }
        }
        let mut order: Vec<usize> = (0..found.len()).collect();
        order.sort_by(|&a, &b| found[a].cmp(&found[b]));
        let mut remap = vec![0; found.len()];
        for (new, &old) in order.iter().enumerate() {
            remap[old] = new;
        }
        let elements: Vec<Perm> = order.iter().map(|&i| found[i].clone()).collect();
        let index = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let tree = tree_raw.into_iter().map(|(e, p, g)| (remap[e], remap[p], g)).collect();
        Ok(Group {
            degree: spec.degree,
            generators: spec.generators.clone(),
            elements,
            index,
            tree,
            identity: remap[0],
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    /// Index of `elements[a] * elements[b]`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].compose(&self.elements[b])]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse()]
    }

    pub fn is_abelian(&self) -> bool {
        self.noncommuting_generators().is_none()
    }

    pub fn noncommuting_generators(&self) -> Option<(usize, usize)> {
        let g = &self.generators;
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                if g[i].compose(&g[j]) != g[j].compose(&g[i]) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Extends `images` (one per generator) to a map on all elements and
    /// checks it is a homomorphism by verifying every Cayley-graph edge.
    pub fn hom_table(&self, images: &[Perm]) -> Result<Vec<Perm>> {
        if images.len() != self.generators.len() {
            return Err(Error::NotAHomomorphism(format!(
                "{} generator images given for {} generators",
                images.len(),
                self.generators.len()
            )));
        }
        let target_degree = images.first().map(Perm::degree);
        if images.iter().any(|p| Some(p.degree()) != target_degree) {
            return Err(Error::NotAHomomorphism("images have mixed degrees".into()));
        }
        let Some(d) = target_degree else {
            // No generators: the trivial group maps to an identity of unknown degree.
            return Ok(Vec::new());
        };
        let mut table: Vec<Option<Perm>> = vec![None; self.order()];
        table[self.identity] = Some(Perm::identity(d));
        for &(e, p, g) in &self.tree[1..] {
            let img = images[g].compose(table[p].as_ref().expect("parent precedes child"));
            table[e] = Some(img);
        }
        let table: Vec<Perm> = table.into_iter().map(|p| p.expect("tree spans group")).collect();
        for (x, px) in self.elements.iter().enumerate() {
            for (g, gen) in self.generators.iter().enumerate() {
                let y = self.index[&gen.compose(px)];
                if table[y] != images[g].compose(&table[x]) {
                    return Err(Error::NotAHomomorphism(format!(
                        "relation violated at element {px} and generator {gen}"
                    )));
                }
            }
        }
        Ok(table)
    }

    /// Subgroup generated by the given elements.
    pub fn subgroup(&self, gens: &[Perm]) -> Subgroup {
        let mut member = vec![false; self.order()];
        member[self.identity] = true;
        let mut list = vec![self.identity];
        let mut i = 0;
        while i < list.len() {
            let x = self.elements[list[i]].clone();
            for g in gens {
                let y = self.index[&g.compose(&x)];
                if !member[y] {
                    member[y] = true;
                    list.push(y);
                }
            }
            i += 1;
        }
        list.sort_unstable();
        Subgroup {
            member,
            elements: list,
            generators: gens.to_vec(),
        }
    }

    /// Normal closure of the given elements.
    pub fn normal_closure(&self, seeds: &[Perm]) -> Subgroup {
        let mut gens: Vec<Perm> = seeds.iter().filter(|p| !p.is_identity()).cloned().collect();
        loop {
            let h = self.subgroup(&gens);
            let missing: Vec<Perm> = self
                .generators
                .iter()
                .flat_map(|g| gens.iter().map(move |x| g.conjugate(x)))
                .filter(|c| !h.member[self.index[c]])
                .collect();
            if missing.is_empty() {
                return h;
            }
            for m in missing {
                if !gens.contains(&m) {
                    gens.push(m);
                }
            }
        }
    }

    pub fn commutator_subgroup(&self) -> Subgroup {
        let g = &self.generators;
        let comms: Vec<Perm> = (0..g.len())
            .flat_map(|i| (i + 1..g.len()).map(move |j| g[i].commutator(&g[j])))
            .collect();
        self.normal_closure(&comms)
    }

    /// Cosets of a normal subgroup: coset index per element, in order of first
    /// appearance over the sorted element list.
    pub fn cosets(&self, normal: &Subgroup) -> (Vec<usize>, usize) {
        let mut coset = vec![usize::MAX; self.order()];
        let mut count = 0;
        for x in 0..self.order() {
            if coset[x] != usize::MAX {
                continue;
            }
            for &n in &normal.elements {
                coset[self.mul(x, n)] = count;
            }
            count += 1;
        }
        (coset, count)
    }
}

#[derive(Clone, Debug)]
pub struct Subgroup {
    member: Vec<bool>,
    elements: Vec<usize>,
    generators: Vec<Perm>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains_index(&self, i: usize) -> bool {
        self.member[i]
    }

    pub fn element_indices(&self) -> &[usize] {
        &self.elements
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }
}

/// `G / [G, G]` with the data needed to map elements into it.
#[derive(Clone, Debug)]
pub struct Abelianization {
    pub group: FinAbGroup,
    /// Presentation on the generators of `G`.
    pub presentation: AbPresentation,
    coset_of: Vec<usize>,
    coset_vectors: Vec<Vec<BigInt>>,
    quotient: Quotient,
    commutator_order: usize,
}

impl Abelianization {
    pub fn compute(g: &Group) -> Abelianization {
        let commutator = g.commutator_subgroup();
        let (coset_of, n_cosets) = g.cosets(&commutator);
        let s = g.generators().len();

        // Spanning tree of the coset graph; each non-tree edge gives a relation.
        let mut rep: Vec<Option<usize>> = vec![None; n_cosets];
        let mut vectors: Vec<Vec<BigInt>> = vec![Vec::new(); n_cosets];
        let start = coset_of[g.identity()];
        rep[start] = Some(g.identity());
        vectors[start] = vec![BigInt::zero(); s];
        let mut queue = VecDeque::from([start]);
        let mut edges = Vec::new();
        while let Some(c) = queue.pop_front() {
            let r = rep[c].unwrap();
            for (j, gen) in g.generators().iter().enumerate() {
                let y = g.index_of(&gen.compose(g.element(r))).unwrap();
                let cy = coset_of[y];
                if rep[cy].is_none() {
                    rep[cy] = Some(y);
                    let mut v = vectors[c].clone();
                    v[j] += 1;
                    vectors[cy] = v;
                    queue.push_back(cy);
                } else {
                    edges.push((c, j, cy));
                }
            }
        }
        let mut columns: Vec<Vec<BigInt>> = Vec::new();
        for (c, j, cy) in edges {
            let mut v: Vec<BigInt> = vectors[c].iter().zip(&vectors[cy]).map(|(a, b)| a - b).collect();
            v[j] += 1;
            if v.iter().any(|x| !x.is_zero()) && !columns.contains(&v) {
                columns.push(v);
            }
        }
        let relations = IntMatrix::from_columns(s, &columns);
        let quotient = cokernel_with_map(&relations);
        Abelianization {
            group: quotient.group.clone(),
            presentation: AbPresentation::new(s, relations).expect("rows = generator count"),
            coset_of,
            coset_vectors: vectors,
            quotient,
            commutator_order: commutator.order(),
        }
    }

    /// A vector over the generators of `G` representing the image of element `i`.
    pub fn generator_vector(&self, i: usize) -> &[BigInt] {
        &self.coset_vectors[self.coset_of[i]]
    }

    /// Canonical coordinates of the image of element `i`.
    pub fn coords(&self, i: usize) -> Vec<BigInt> {
        self.quotient.coords(self.generator_vector(i))
    }

    /// Canonical coordinates of each generator's image.
    pub fn generator_coords(&self) -> Vec<Vec<BigInt>> {
        let s = self.presentation.generators();
        (0..s)
            .map(|j| {
                let mut e = vec![BigInt::zero(); s];
                e[j] = BigInt::from(1);
                self.quotient.coords(&e)
            })
            .collect()
    }

    pub fn commutator_order(&self) -> usize {
        self.commutator_order
    }
}

pub fn abelianization(spec: &FiniteGroupSpec, cap: usize) -> Result<Abelianization> {
    Ok(Abelianization::compute(&spec.enumerate(cap)?))
}

/// Normal subgroup used to form a quotient in [`element_image_nontrivial`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "elements")]
pub enum QuotientSpec {
    Trivial,
    Commutator,
    NormalClosure(Vec<Perm>),
}

/// Whether `element` survives in `G / H`.
pub fn element_image_nontrivial(g: &Group, element: &Perm, h: &QuotientSpec) -> Result<bool> {
    let i = g.index_of(element).ok_or(Error::NotInGroup)?;
    let sub = match h {
        QuotientSpec::Trivial => return Ok(i != g.identity()),
        QuotientSpec::Commutator => g.commutator_subgroup(),
        QuotientSpec::NormalClosure(seeds) => {
            if let Some(bad) = seeds.iter().find(|s| !g.contains(s)) {
                return Err(Error::invalid(format!("{bad} is not in the group")));
            }
            g.normal_closure(seeds)
        }
    };
    Ok(!sub.contains_index(i))
}
